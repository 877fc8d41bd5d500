#ifndef VECTONT_FOE_HPP
#define VECTONT_FOE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vectont/existence.hpp"
#include "vectont/schema.hpp"

namespace vectont {

// Expression tree for function-of-existence bodies. Identifiers are
// resolved at parse time to either a schema dimension or a parameter slot.
struct Expr {
    enum class Kind {
        Number,
        DimRef,
        ParamRef,
        Add,
        Sub,
        Mul,
        Pow, // integer exponent in `exponent`
        Le,
        Ge,
        Eq,
        Not,
        And,
        Or,
    };

    Kind kind;
    double number = 0.0;
    std::string name;          // DimRef / ParamRef
    std::size_t index = 0;     // dimension index or parameter slot
    long long exponent = 0;    // Pow
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;

    bool is_boolean() const {
        return kind == Kind::Le || kind == Kind::Ge || kind == Kind::Eq ||
               kind == Kind::Not || kind == Kind::And || kind == Kind::Or;
    }
};

using ExprPtr = std::shared_ptr<const Expr>;

// A parametric predicate family ("type"): binding its parameters yields a
// concrete concept.
struct FunctionClass {
    std::string name;
    std::vector<std::string> params;
    ExprPtr body;               // boolean-valued root
    SchemaPtr schema;
};

// A bound concept: every parameter slot carries a value.
struct FOEInstance {
    std::shared_ptr<const FunctionClass> class_ref;
    std::vector<double> bindings; // aligned with class params
};

enum class ContinuityLabel { Endurant, Perdurant };

struct ContinuityVerdict {
    ContinuityLabel label;
    // For Perdurant: the largest gap found, as axis interval endpoints.
    // witness_lo/hi are meaningful only when label == Perdurant; a single
    // point extension reports an infinite gap.
    double witness_lo = 0.0;
    double witness_hi = 0.0;
    double witness_gap = 0.0;
    double sampling_interval = 0.0; // inferred median spacing
};

// Parse "class NAME(p1,...): expr" against a schema. Identifier resolution
// and type checking happen here; errors carry a character position.
std::shared_ptr<const FunctionClass> parse_foe(const std::string& text,
                                               const SchemaPtr& schema);

// Canonical text form; unparse(parse(t)) parses to an equal AST.
std::string unparse(const FunctionClass& cls);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

FOEInstance bind(const std::shared_ptr<const FunctionClass>& cls,
                 const std::map<std::string, double>& values);

bool evaluate(const FOEInstance& instance, const OntVector& v,
              double tol = kDefaultTolerance);

// Members of `set` satisfying the instance; always a subset of `set`.
ExistenceSet extension(const FOEInstance& instance, const ExistenceSet& set,
                       double tol = kDefaultTolerance);

// Fits maximal runs along axis_dim on which value_dim is tolerance-constant,
// splitting runs at axis gaps larger than gap_factor x median gap. Each run
// becomes a bound instance of the interval-constant class
//   class interval_const(lo, hi, val): (axis >= lo) AND (axis <= hi) AND (value = val)
std::vector<FOEInstance> fit_constant_interval(const ExistenceSet& set,
                                               const std::string& value_dim,
                                               const std::string& axis_dim,
                                               double gap_factor = 1.5,
                                               double tol = kDefaultTolerance);

// Endurant iff the instance's extension, sorted by axis_dim, has no
// consecutive gap above gap_factor x median gap. Single-point extensions
// are Perdurant with an infinite witness gap.
ContinuityVerdict classify_continuity(const ExistenceSet& set, const FOEInstance& instance,
                                      const std::string& axis_dim,
                                      double gap_factor = 1.5,
                                      double tol = kDefaultTolerance);

// |extension| * n_dims / parameter count; +infinity for parameterless classes.
double compression_ratio(const FOEInstance& instance, const ExistenceSet& set,
                         double tol = kDefaultTolerance);

} // namespace vectont

#endif
