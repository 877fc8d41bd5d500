#ifndef VECTONT_ERROR_HPP
#define VECTONT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vectont {

// Machine-readable domain error codes. The CLI maps every one of these to
// exit status 1 and the code string below.
enum class ErrorCode {
    DuplicateDimensionName,
    EmptySchema,
    ArityMismatch,
    KindMismatch,
    OutOfBounds,
    SchemaMismatch,
    NonArithmeticDimension,
    NonIntegralScalarOnIntegerDimension,
    UnknownDimension,
    EmptyProjection,
    ValidationFailure,
    ParseError,
    SyntaxError,
    UnknownIdentifier,
    TypeError,
    MissingParameter,
    UnknownParameter,
    NonNumericDimension,
    EmptyExtension,
    EmptyPointList,
    DimensionMismatch,
    NotAMember,
    InvalidOrder,
    EmptyExistenceSet,
    NotInSpan,
    TooFewVectors,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

} // namespace vectont

#endif
