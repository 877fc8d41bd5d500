#include "vectont/schema.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vectont {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicateDimensionName: return "DUPLICATE_DIMENSION_NAME";
        case ErrorCode::EmptySchema: return "EMPTY_SCHEMA";
        case ErrorCode::ArityMismatch: return "ARITY_MISMATCH";
        case ErrorCode::KindMismatch: return "KIND_MISMATCH";
        case ErrorCode::OutOfBounds: return "OUT_OF_BOUNDS";
        case ErrorCode::SchemaMismatch: return "SCHEMA_MISMATCH";
        case ErrorCode::NonArithmeticDimension: return "NON_ARITHMETIC_DIMENSION";
        case ErrorCode::NonIntegralScalarOnIntegerDimension:
            return "NON_INTEGRAL_SCALAR_ON_INTEGER_DIMENSION";
        case ErrorCode::UnknownDimension: return "UNKNOWN_DIMENSION";
        case ErrorCode::EmptyProjection: return "EMPTY_PROJECTION";
        case ErrorCode::ValidationFailure: return "VALIDATION_FAILURE";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
        case ErrorCode::UnknownIdentifier: return "UNKNOWN_IDENTIFIER";
        case ErrorCode::TypeError: return "TYPE_ERROR";
        case ErrorCode::MissingParameter: return "MISSING_PARAMETER";
        case ErrorCode::UnknownParameter: return "UNKNOWN_PARAMETER";
        case ErrorCode::NonNumericDimension: return "NON_NUMERIC_DIMENSION";
        case ErrorCode::EmptyExtension: return "EMPTY_EXTENSION";
        case ErrorCode::EmptyPointList: return "EMPTY_POINT_LIST";
        case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
        case ErrorCode::NotAMember: return "NOT_A_MEMBER";
        case ErrorCode::InvalidOrder: return "INVALID_ORDER";
        case ErrorCode::EmptyExistenceSet: return "EMPTY_EXISTENCE_SET";
        case ErrorCode::NotInSpan: return "NOT_IN_SPAN";
        case ErrorCode::TooFewVectors: return "TOO_FEW_VECTORS";
        case ErrorCode::IoError: return "IO_ERROR";
    }
    return "UNKNOWN_ERROR";
}

const char* quale_kind_name(QualeKind kind) {
    switch (kind) {
        case QualeKind::Continuous: return "continuous";
        case QualeKind::Integer: return "integer";
        case QualeKind::Categorical: return "categorical";
        case QualeKind::Boolean: return "boolean";
    }
    return "continuous";
}

QualeKind quale_kind_from_name(const std::string& name) {
    if (name == "continuous") return QualeKind::Continuous;
    if (name == "integer") return QualeKind::Integer;
    if (name == "categorical") return QualeKind::Categorical;
    if (name == "boolean") return QualeKind::Boolean;
    throw Error(ErrorCode::ParseError, "unknown quale kind: " + name);
}

bool Dimension::operator==(const Dimension& other) const {
    bool base = name == other.name && kind == other.kind && unit == other.unit &&
                values == other.values && bounds.has_value() == other.bounds.has_value();
    if (!base) return false;
    if (bounds) {
        return bounds->lower == other.bounds->lower && bounds->upper == other.bounds->upper;
    }
    return true;
}

namespace {

void validate_dimension(const Dimension& d) {
    if (d.name.empty()) {
        throw Error(ErrorCode::ValidationFailure, "dimension name must be non-empty");
    }
    if (d.kind == QualeKind::Categorical) {
        if (d.values.empty()) {
            throw Error(ErrorCode::ValidationFailure,
                        "categorical dimension '" + d.name + "' has no values");
        }
        std::set<std::string> seen(d.values.begin(), d.values.end());
        if (seen.size() != d.values.size()) {
            throw Error(ErrorCode::ValidationFailure,
                        "categorical dimension '" + d.name + "' has duplicate values");
        }
    }
    if (d.bounds) {
        if (!d.is_numeric()) {
            throw Error(ErrorCode::ValidationFailure,
                        "bounds only apply to numeric dimensions ('" + d.name + "')");
        }
        if (d.bounds->lower > d.bounds->upper) {
            throw Error(ErrorCode::ValidationFailure,
                        "bounds of '" + d.name + "' have lower > upper");
        }
    }
}

} // namespace

DomainSchema::DomainSchema(std::string name, std::vector<Dimension> dims)
    : name_(std::move(name)), dims_(std::move(dims)) {}

std::size_t DomainSchema::index_of(const std::string& dim_name) const {
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i].name == dim_name) return i;
    }
    throw Error(ErrorCode::UnknownDimension,
                "schema '" + name_ + "' has no dimension '" + dim_name + "'");
}

bool DomainSchema::has_dim(const std::string& dim_name) const {
    return std::any_of(dims_.begin(), dims_.end(),
                       [&](const Dimension& d) { return d.name == dim_name; });
}

SchemaPtr DomainSchema::induced(const std::vector<std::string>& dim_names) const {
    if (dim_names.empty()) {
        throw Error(ErrorCode::EmptyProjection, "projection onto no dimensions");
    }
    std::set<std::string> wanted;
    for (const auto& n : dim_names) {
        index_of(n); // throws UnknownDimension
        wanted.insert(n);
    }
    // Cache key in parent basis order, so {a,b} and {b,a} share one entry.
    std::string key;
    std::vector<Dimension> sub;
    for (const auto& d : dims_) {
        if (wanted.count(d.name)) {
            key += d.name;
            key += '\x1f';
            sub.push_back(d);
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = induced_cache_.find(key);
    if (it != induced_cache_.end()) return it->second;
    auto schema = std::make_shared<DomainSchema>(name_ + "/projected", std::move(sub));
    induced_cache_.emplace(key, schema);
    return schema;
}

bool DomainSchema::operator==(const DomainSchema& other) const {
    return name_ == other.name_ && dims_ == other.dims_;
}

OntVector::OntVector(SchemaPtr schema, std::vector<Value> coords)
    : schema_(std::move(schema)), coords_(std::move(coords)) {}

double OntVector::numeric(std::size_t i) const {
    if (std::holds_alternative<double>(coords_[i])) return std::get<double>(coords_[i]);
    if (std::holds_alternative<std::int64_t>(coords_[i])) {
        return static_cast<double>(std::get<std::int64_t>(coords_[i]));
    }
    throw Error(ErrorCode::NonNumericDimension,
                "dimension '" + schema_->dim(i).name + "' is not numeric");
}

SchemaPtr define_schema(const std::string& name, std::vector<Dimension> dims) {
    if (dims.empty()) {
        throw Error(ErrorCode::EmptySchema, "schema '" + name + "' has no dimensions");
    }
    std::set<std::string> seen;
    for (const auto& d : dims) {
        validate_dimension(d);
        if (!seen.insert(d.name).second) {
            throw Error(ErrorCode::DuplicateDimensionName,
                        "duplicate dimension name '" + d.name + "'");
        }
    }
    return std::make_shared<DomainSchema>(name, std::move(dims));
}

namespace {

bool coord_matches(const Dimension& d, const Value& v, std::string* reason) {
    switch (d.kind) {
        case QualeKind::Continuous:
            if (!std::holds_alternative<double>(v) && !std::holds_alternative<std::int64_t>(v)) {
                if (reason) *reason = "KIND_MISMATCH";
                return false;
            }
            break;
        case QualeKind::Integer:
            if (!std::holds_alternative<std::int64_t>(v)) {
                if (reason) *reason = "KIND_MISMATCH";
                return false;
            }
            break;
        case QualeKind::Boolean:
            if (!std::holds_alternative<bool>(v)) {
                if (reason) *reason = "KIND_MISMATCH";
                return false;
            }
            return true;
        case QualeKind::Categorical: {
            if (!std::holds_alternative<std::string>(v)) {
                if (reason) *reason = "KIND_MISMATCH";
                return false;
            }
            const auto& label = std::get<std::string>(v);
            if (std::find(d.values.begin(), d.values.end(), label) == d.values.end()) {
                if (reason) *reason = "VALIDATION_FAILURE";
                return false;
            }
            return true;
        }
    }
    if (d.bounds) {
        double x = std::holds_alternative<double>(v)
                       ? std::get<double>(v)
                       : static_cast<double>(std::get<std::int64_t>(v));
        if (x < d.bounds->lower || x > d.bounds->upper) {
            if (reason) *reason = "OUT_OF_BOUNDS";
            return false;
        }
    }
    return true;
}

// Continuous coordinates given as integers are normalized to double.
Value normalize_coord(const Dimension& d, Value v) {
    if (d.kind == QualeKind::Continuous && std::holds_alternative<std::int64_t>(v)) {
        return static_cast<double>(std::get<std::int64_t>(v));
    }
    return v;
}

} // namespace

bool validate_coords(const DomainSchema& schema, const std::vector<Value>& coords,
                     std::string* reason) {
    if (coords.size() != schema.size()) {
        if (reason) *reason = "ARITY_MISMATCH";
        return false;
    }
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::string why;
        if (!coord_matches(schema.dim(i), coords[i], &why)) {
            if (reason) *reason = why + ":" + schema.dim(i).name;
            return false;
        }
    }
    return true;
}

OntVector make_vector(const SchemaPtr& schema, std::vector<Value> coords) {
    if (coords.size() != schema->size()) {
        std::ostringstream os;
        os << "expected " << schema->size() << " coordinates, got " << coords.size();
        throw Error(ErrorCode::ArityMismatch, os.str());
    }
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const Dimension& d = schema->dim(i);
        coords[i] = normalize_coord(d, coords[i]);
        std::string why;
        if (!coord_matches(d, coords[i], &why)) {
            if (why == "KIND_MISMATCH") {
                throw Error(ErrorCode::KindMismatch,
                            "coordinate " + std::to_string(i) + " does not match kind of '" +
                                d.name + "'");
            }
            if (why == "OUT_OF_BOUNDS") {
                throw Error(ErrorCode::OutOfBounds,
                            "coordinate " + std::to_string(i) + " outside bounds of '" +
                                d.name + "'");
            }
            throw Error(ErrorCode::ValidationFailure,
                        "coordinate " + std::to_string(i) + " invalid for '" + d.name + "'");
        }
    }
    return OntVector(schema, std::move(coords));
}

void require_same_schema(const OntVector& u, const OntVector& v) {
    if (u.schema() != v.schema() && !(*u.schema() == *v.schema())) {
        throw Error(ErrorCode::SchemaMismatch,
                    "vectors over different schemas ('" + u.schema()->name() + "' vs '" +
                        v.schema()->name() + "')");
    }
}

namespace {

void require_all_numeric(const OntVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v.schema()->dim(i).is_numeric()) {
            throw Error(ErrorCode::NonArithmeticDimension,
                        "dimension '" + v.schema()->dim(i).name +
                            "' does not support arithmetic");
        }
    }
}

} // namespace

OntVector add(const OntVector& u, const OntVector& v) {
    require_same_schema(u, v);
    require_all_numeric(u);
    std::vector<Value> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.schema()->dim(i).kind == QualeKind::Integer) {
            out[i] = std::get<std::int64_t>(u.coord(i)) + std::get<std::int64_t>(v.coord(i));
        } else {
            out[i] = u.numeric(i) + v.numeric(i);
        }
    }
    return OntVector(u.schema(), std::move(out));
}

OntVector negate(const OntVector& v) {
    return scale(-1.0, v);
}

OntVector scale(double a, const OntVector& v) {
    require_all_numeric(v);
    std::vector<Value> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.schema()->dim(i).kind == QualeKind::Integer) {
            if (a != std::floor(a) || !std::isfinite(a)) {
                throw Error(ErrorCode::NonIntegralScalarOnIntegerDimension,
                            "scaling integer dimension '" + v.schema()->dim(i).name +
                                "' by non-integer scalar");
            }
            out[i] = std::get<std::int64_t>(v.coord(i)) * static_cast<std::int64_t>(a);
        } else {
            out[i] = a * v.numeric(i);
        }
    }
    return OntVector(v.schema(), std::move(out));
}

OntVector project(const OntVector& v, const std::vector<std::string>& dim_names) {
    SchemaPtr sub = v.schema()->induced(dim_names);
    std::vector<Value> out;
    out.reserve(sub->size());
    for (const auto& d : sub->dims()) {
        out.push_back(v.coord(v.schema()->index_of(d.name)));
    }
    return OntVector(sub, std::move(out));
}

bool value_eq(const Value& a, const Value& b, double tol) {
    bool a_num = std::holds_alternative<double>(a) || std::holds_alternative<std::int64_t>(a);
    bool b_num = std::holds_alternative<double>(b) || std::holds_alternative<std::int64_t>(b);
    if (a_num && b_num) {
        auto num = [](const Value& v) {
            return std::holds_alternative<double>(v)
                       ? std::get<double>(v)
                       : static_cast<double>(std::get<std::int64_t>(v));
        };
        return tol_eq(num(a), num(b), tol);
    }
    return a == b;
}

bool vector_eq(const OntVector& u, const OntVector& v, double tol) {
    if (u.size() != v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!value_eq(u.coord(i), v.coord(i), tol)) return false;
    }
    return true;
}

bool vector_less(const OntVector& u, const OntVector& v) {
    auto rank = [](const Value& x) -> int {
        if (std::holds_alternative<bool>(x)) return 0;
        if (std::holds_alternative<std::string>(x)) return 1;
        return 2; // numeric
    };
    for (std::size_t i = 0; i < std::min(u.size(), v.size()); ++i) {
        const Value& a = u.coord(i);
        const Value& b = v.coord(i);
        if (rank(a) != rank(b)) return rank(a) < rank(b);
        if (std::holds_alternative<bool>(a)) {
            if (std::get<bool>(a) != std::get<bool>(b)) return !std::get<bool>(a);
        } else if (std::holds_alternative<std::string>(a)) {
            if (std::get<std::string>(a) != std::get<std::string>(b)) {
                return std::get<std::string>(a) < std::get<std::string>(b);
            }
        } else {
            auto num = [](const Value& v2) {
                return std::holds_alternative<double>(v2)
                           ? std::get<double>(v2)
                           : static_cast<double>(std::get<std::int64_t>(v2));
            };
            if (num(a) != num(b)) return num(a) < num(b);
        }
    }
    return u.size() < v.size();
}

std::string schema_to_json(const DomainSchema& schema) {
    nlohmann::ordered_json doc;
    doc["name"] = schema.name();
    doc["dims"] = nlohmann::ordered_json::array();
    for (const auto& d : schema.dims()) {
        nlohmann::ordered_json jd;
        jd["name"] = d.name;
        jd["kind"] = quale_kind_name(d.kind);
        jd["unit"] = d.unit;
        if (d.bounds) {
            jd["bounds"] = {d.bounds->lower, d.bounds->upper};
        } else {
            jd["bounds"] = nullptr;
        }
        if (d.kind == QualeKind::Categorical) {
            jd["values"] = d.values;
        } else {
            jd["values"] = nullptr;
        }
        doc["dims"].push_back(jd);
    }
    return doc.dump();
}

SchemaPtr schema_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("schema JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("name") || !doc.contains("dims")) {
        throw Error(ErrorCode::ParseError, "schema JSON must have 'name' and 'dims'");
    }
    std::vector<Dimension> dims;
    for (const auto& jd : doc["dims"]) {
        Dimension d;
        d.name = jd.at("name").get<std::string>();
        d.kind = quale_kind_from_name(jd.at("kind").get<std::string>());
        if (jd.contains("unit") && !jd["unit"].is_null()) d.unit = jd["unit"].get<std::string>();
        if (jd.contains("bounds") && !jd["bounds"].is_null()) {
            d.bounds = Bounds{jd["bounds"][0].get<double>(), jd["bounds"][1].get<double>()};
        }
        if (jd.contains("values") && !jd["values"].is_null()) {
            d.values = jd["values"].get<std::vector<std::string>>();
        }
        dims.push_back(std::move(d));
    }
    return define_schema(doc["name"].get<std::string>(), std::move(dims));
}

SchemaPtr load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open schema file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return schema_from_json(os.str());
}

void save_schema(const DomainSchema& schema, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write schema file: " + path);
    out << schema_to_json(schema) << "\n";
}

} // namespace vectont
