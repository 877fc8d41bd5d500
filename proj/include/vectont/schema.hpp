#ifndef VECTONT_SCHEMA_HPP
#define VECTONT_SCHEMA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vectont/error.hpp"
#include "vectont/tolerance.hpp"

namespace vectont {

enum class QualeKind { Continuous, Integer, Categorical, Boolean };

const char* quale_kind_name(QualeKind kind);
QualeKind quale_kind_from_name(const std::string& name);

// One coordinate value. The active alternative must match the dimension's
// quale kind: Continuous -> double, Integer -> int64, Boolean -> bool,
// Categorical -> the value's string label.
using Value = std::variant<double, std::int64_t, bool, std::string>;

struct Bounds {
    double lower;
    double upper;
};

// A named, typed quality dimension of a domain schema.
struct Dimension {
    std::string name;
    QualeKind kind = QualeKind::Continuous;
    std::string unit;                       // free-text, may be empty
    std::optional<Bounds> bounds;           // numeric kinds only
    std::vector<std::string> values;        // categorical kinds only

    bool is_numeric() const {
        return kind == QualeKind::Continuous || kind == QualeKind::Integer;
    }

    bool operator==(const Dimension& other) const;
};

class DomainSchema;
using SchemaPtr = std::shared_ptr<const DomainSchema>;

// An ordered basis of quality dimensions spanning one domain.
class DomainSchema {
public:
    DomainSchema(std::string name, std::vector<Dimension> dims);

    const std::string& name() const { return name_; }
    const std::vector<Dimension>& dims() const { return dims_; }
    std::size_t size() const { return dims_.size(); }
    const Dimension& dim(std::size_t i) const { return dims_[i]; }

    // Index of a dimension by name, throws UnknownDimension.
    std::size_t index_of(const std::string& dim_name) const;
    bool has_dim(const std::string& dim_name) const;

    // Sub-schema induced by the given dimension names, preserving basis
    // order. Results are cached per schema instance.
    SchemaPtr induced(const std::vector<std::string>& dim_names) const;

    // Structural equality: same name, same dimensions in the same order.
    bool operator==(const DomainSchema& other) const;

private:
    std::string name_;
    std::vector<Dimension> dims_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::string, SchemaPtr> induced_cache_;
};

// One point in a domain's space; coordinates aligned with the schema basis.
class OntVector {
public:
    OntVector(SchemaPtr schema, std::vector<Value> coords);

    const SchemaPtr& schema() const { return schema_; }
    const std::vector<Value>& coords() const { return coords_; }
    const Value& coord(std::size_t i) const { return coords_[i]; }
    std::size_t size() const { return coords_.size(); }

    // Numeric view of coordinate i (Continuous or Integer dims only).
    double numeric(std::size_t i) const;

private:
    SchemaPtr schema_;
    std::vector<Value> coords_;
};

// Schema construction. Throws DuplicateDimensionName / EmptySchema and
// validates each dimension's own invariants.
SchemaPtr define_schema(const std::string& name, std::vector<Dimension> dims);

// Validated vector construction. Throws ArityMismatch / KindMismatch /
// OutOfBounds / ValidationFailure.
OntVector make_vector(const SchemaPtr& schema, std::vector<Value> coords);

// Validation of raw coordinates without construction; on failure returns
// false and stores a reason code string if `reason` is non-null.
bool validate_coords(const DomainSchema& schema, const std::vector<Value>& coords,
                     std::string* reason = nullptr);

// Coordinate-wise arithmetic over all-numeric schemas. Bounds are not
// enforced on results: they constrain asserted existence, not closure.
OntVector add(const OntVector& u, const OntVector& v);
OntVector negate(const OntVector& v);
OntVector scale(double a, const OntVector& v);

// Restriction onto a dimension subset, in parent basis order.
OntVector project(const OntVector& v, const std::vector<std::string>& dim_names);

// Tolerance equality of two values of the same kind; non-numeric kinds
// compare exactly.
bool value_eq(const Value& a, const Value& b, double tol = kDefaultTolerance);
bool vector_eq(const OntVector& u, const OntVector& v, double tol = kDefaultTolerance);

// Deterministic total order on coordinates, used for tie-breaking.
bool vector_less(const OntVector& u, const OntVector& v);

// Requires structurally equal schemas, else SchemaMismatch.
void require_same_schema(const OntVector& u, const OntVector& v);

// Schema file format (JSON document, dims order significant).
std::string schema_to_json(const DomainSchema& schema);
SchemaPtr schema_from_json(const std::string& text);
SchemaPtr load_schema(const std::string& path);
void save_schema(const DomainSchema& schema, const std::string& path);

} // namespace vectont

#endif
