#include "vectont/existence.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vectont {

ExistenceSet::ExistenceSet(SchemaPtr schema, double tol)
    : schema_(std::move(schema)), tol_(tol) {}

ExistenceSet::InsertResult ExistenceSet::insert(const OntVector& v,
                                                const std::string& source) const {
    if (!(*v.schema() == *schema_)) {
        throw Error(ErrorCode::SchemaMismatch,
                    "vector over '" + v.schema()->name() + "' inserted into set over '" +
                        schema_->name() + "'");
    }
    std::string reason;
    if (!validate_coords(*schema_, v.coords(), &reason)) {
        throw Error(ErrorCode::ValidationFailure, "member rejected: " + reason);
    }
    InsertResult result{*this, false};
    if (find(v) != npos) {
        result.duplicate = true;
        return result;
    }
    result.set.members_.push_back(v);
    result.set.provenance_.push_back(source);
    return result;
}

bool ExistenceSet::exists(const OntVector& v) const {
    if (!(*v.schema() == *schema_)) {
        throw Error(ErrorCode::SchemaMismatch,
                    "existence query over mismatched schema '" + v.schema()->name() + "'");
    }
    return find(v) != npos;
}

std::size_t ExistenceSet::find(const OntVector& v) const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (vector_eq(members_[i], v, tol_)) return i;
    }
    return npos;
}

bool possible(const DomainSchema& schema, const std::vector<Value>& coords,
              std::string* reason) {
    return validate_coords(schema, coords, reason);
}

namespace {

Value parse_value(const Dimension& d, const std::string& raw, std::size_t line_no) {
    auto fail = [&](const std::string& what) -> Error {
        return Error(ErrorCode::ParseError,
                     "line " + std::to_string(line_no) + ": " + what + " for dimension '" +
                         d.name + "' (got '" + raw + "')");
    };
    switch (d.kind) {
        case QualeKind::Continuous: {
            try {
                std::size_t used = 0;
                double x = std::stod(raw, &used);
                if (used != raw.size()) throw fail("trailing characters in number");
                return x;
            } catch (const std::invalid_argument&) {
                throw fail("not a number");
            } catch (const std::out_of_range&) {
                throw fail("number out of range");
            }
        }
        case QualeKind::Integer: {
            std::int64_t x = 0;
            auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), x);
            if (ec != std::errc() || p != raw.data() + raw.size()) {
                throw fail("not an integer");
            }
            return x;
        }
        case QualeKind::Boolean:
            if (raw == "true") return true;
            if (raw == "false") return false;
            throw fail("not a boolean");
        case QualeKind::Categorical:
            return raw;
    }
    throw fail("unreachable kind");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

OntVector checked_vector(const SchemaPtr& schema, std::vector<Value> coords,
                         std::size_t line_no) {
    try {
        return make_vector(schema, std::move(coords));
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationFailure,
                    "line " + std::to_string(line_no) + ": " + e.what());
    }
}

ExistenceSet load_csv(std::istream& in, const SchemaPtr& schema, double tol) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, "empty CSV file");
    }
    ++line_no;
    auto header = split_csv_line(line);
    if (header.size() != schema->size()) {
        throw Error(ErrorCode::ParseError, "line 1: CSV header arity does not match schema");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != schema->dim(i).name) {
            throw Error(ErrorCode::ParseError,
                        "line 1: CSV header column " + std::to_string(i) + " is '" + header[i] +
                            "', expected '" + schema->dim(i).name + "'");
        }
    }
    ExistenceSet set(schema, tol);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != schema->size()) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(schema->size()) + " cells, got " +
                            std::to_string(cells.size()));
        }
        std::vector<Value> coords;
        coords.reserve(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            coords.push_back(parse_value(schema->dim(i), cells[i], line_no));
        }
        set = set.insert(checked_vector(schema, std::move(coords), line_no)).set;
    }
    return set;
}

ExistenceSet load_jsonl(std::istream& in, const SchemaPtr& schema, double tol) {
    ExistenceSet set(schema, tol);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": " + e.what());
        }
        std::vector<Value> coords;
        coords.reserve(schema->size());
        for (const auto& d : schema->dims()) {
            if (!obj.contains(d.name)) {
                throw Error(ErrorCode::ParseError,
                            "line " + std::to_string(line_no) + ": missing key '" + d.name + "'");
            }
            const auto& jv = obj[d.name];
            switch (d.kind) {
                case QualeKind::Continuous:
                    if (!jv.is_number()) {
                        throw Error(ErrorCode::ValidationFailure,
                                    "line " + std::to_string(line_no) + ": '" + d.name +
                                        "' must be a number");
                    }
                    coords.emplace_back(jv.get<double>());
                    break;
                case QualeKind::Integer:
                    if (!jv.is_number_integer()) {
                        throw Error(ErrorCode::ValidationFailure,
                                    "line " + std::to_string(line_no) + ": '" + d.name +
                                        "' must be an integer");
                    }
                    coords.emplace_back(jv.get<std::int64_t>());
                    break;
                case QualeKind::Boolean:
                    if (!jv.is_boolean()) {
                        throw Error(ErrorCode::ValidationFailure,
                                    "line " + std::to_string(line_no) + ": '" + d.name +
                                        "' must be a boolean");
                    }
                    coords.emplace_back(jv.get<bool>());
                    break;
                case QualeKind::Categorical:
                    if (!jv.is_string()) {
                        throw Error(ErrorCode::ValidationFailure,
                                    "line " + std::to_string(line_no) + ": '" + d.name +
                                        "' must be a string label");
                    }
                    coords.emplace_back(jv.get<std::string>());
                    break;
            }
        }
        set = set.insert(checked_vector(schema, std::move(coords), line_no)).set;
    }
    return set;
}

std::string value_to_text(const Value& v) {
    if (std::holds_alternative<double>(v)) {
        nlohmann::json j = std::get<double>(v); // shortest round-trip representation
        return j.dump();
    }
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    return std::get<std::string>(v);
}

} // namespace

ExistenceSet load_dataset(const std::string& path, const SchemaPtr& schema, double tol) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open dataset file: " + path);
    if (ends_with(path, ".jsonl")) return load_jsonl(in, schema, tol);
    return load_csv(in, schema, tol);
}

void save_dataset(const ExistenceSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write dataset file: " + path);
    const auto& schema = *set.schema();
    if (ends_with(path, ".jsonl")) {
        for (const auto& m : set.members()) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < schema.size(); ++i) {
                const Value& v = m.coord(i);
                const std::string& key = schema.dim(i).name;
                if (std::holds_alternative<double>(v)) obj[key] = std::get<double>(v);
                else if (std::holds_alternative<std::int64_t>(v)) obj[key] = std::get<std::int64_t>(v);
                else if (std::holds_alternative<bool>(v)) obj[key] = std::get<bool>(v);
                else obj[key] = std::get<std::string>(v);
            }
            out << obj.dump() << "\n";
        }
        return;
    }
    for (std::size_t i = 0; i < schema.size(); ++i) {
        out << (i ? "," : "") << schema.dim(i).name;
    }
    out << "\n";
    for (const auto& m : set.members()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            out << (i ? "," : "") << value_to_text(m.coord(i));
        }
        out << "\n";
    }
}

std::vector<Value> parse_coords_csv(const DomainSchema& schema, const std::string& line) {
    auto cells = split_csv_line(line);
    if (cells.size() != schema.size()) {
        throw Error(ErrorCode::ArityMismatch,
                    "expected " + std::to_string(schema.size()) + " coordinates, got " +
                        std::to_string(cells.size()));
    }
    std::vector<Value> coords;
    coords.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        coords.push_back(parse_value(schema.dim(i), cells[i], 0));
    }
    return coords;
}

} // namespace vectont
