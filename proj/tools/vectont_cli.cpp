// vectont: command-line surface over the vector-ontology engine.
//
// Exit codes: 0 success, 1 domain error (machine-readable code on output),
// 2 usage or argv parse error (usage text on stderr).

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vectont/dependence.hpp"
#include "vectont/existence.hpp"
#include "vectont/foe.hpp"
#include "vectont/mereology.hpp"
#include "vectont/metrics.hpp"
#include "vectont/schema.hpp"

using nlohmann::ordered_json;
using namespace vectont;

namespace {

struct Globals {
    std::string schema_path;
    std::string data_path;
    bool json = false;
    double tolerance = kDefaultTolerance;
    std::string r_text = "2";
    std::string weights_csv;
};

double parse_order(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        double r = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return r;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidOrder, "cannot parse Minkowski order '" + text + "'");
    }
}

std::optional<std::vector<double>> parse_weights(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ValidationFailure, "cannot parse weight '" + cell + "'");
        }
    }
    return out;
}

ordered_json value_to_json(const Value& v) {
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
    return std::get<std::string>(v);
}

ordered_json vector_to_json(const OntVector& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : v.coords()) arr.push_back(value_to_json(c));
    return arr;
}

std::string value_to_text(const Value& v) {
    return value_to_json(v).dump();
}

std::string vector_to_text(const OntVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        if (std::holds_alternative<std::string>(v.coord(i))) {
            out += std::get<std::string>(v.coord(i));
        } else {
            out += value_to_text(v.coord(i));
        }
    }
    return out;
}

std::string number_text(double x) {
    ordered_json j = x;
    return j.dump();
}

// Command output: `text` for the human form, `result` for --json.
struct Output {
    std::string text;
    ordered_json result;
};

void emit(const Globals& g, const Output& out) {
    if (g.json) {
        ordered_json doc;
        doc["ok"] = true;
        doc["result"] = out.result;
        doc["error"] = nullptr;
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << out.text << "\n";
    }
}

int emit_error(const Globals& g, const Error& e) {
    if (g.json) {
        ordered_json doc;
        doc["ok"] = false;
        doc["result"] = nullptr;
        doc["error"] = e.code_name();
        std::cout << doc.dump() << "\n";
    }
    std::cerr << "error [" << e.code_name() << "]: " << e.what() << "\n";
    return 1;
}

SchemaPtr need_schema(const Globals& g) {
    if (g.schema_path.empty()) {
        throw Error(ErrorCode::ValidationFailure, "--schema PATH is required");
    }
    return load_schema(g.schema_path);
}

ExistenceSet need_data(const Globals& g, const SchemaPtr& schema) {
    if (g.data_path.empty()) {
        throw Error(ErrorCode::ValidationFailure, "--data PATH is required");
    }
    return load_dataset(g.data_path, schema, g.tolerance);
}

// A vector argument: inline CSV or a JSON file keyed by dimension name.
// Giving both is an error rather than a silent precedence.
OntVector vector_arg(const SchemaPtr& schema, const std::string& inline_csv,
                     const std::string& file_path, const std::string& flag) {
    if (!inline_csv.empty() && !file_path.empty()) {
        throw Error(ErrorCode::ValidationFailure,
                    flag + " given both inline and as a file; pick one");
    }
    if (!inline_csv.empty()) {
        return make_vector(schema, parse_coords_csv(*schema, inline_csv));
    }
    if (file_path.empty()) {
        throw Error(ErrorCode::ValidationFailure, flag + " is required");
    }
    std::ifstream in(file_path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open vector file: " + file_path);
    nlohmann::json obj;
    try {
        in >> obj;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("vector JSON: ") + e.what());
    }
    std::vector<Value> coords;
    for (const auto& d : schema->dims()) {
        if (!obj.contains(d.name)) {
            throw Error(ErrorCode::ParseError,
                        "vector file missing dimension '" + d.name + "'");
        }
        const auto& jv = obj[d.name];
        switch (d.kind) {
            case QualeKind::Continuous: coords.emplace_back(jv.get<double>()); break;
            case QualeKind::Integer: coords.emplace_back(jv.get<std::int64_t>()); break;
            case QualeKind::Boolean: coords.emplace_back(jv.get<bool>()); break;
            case QualeKind::Categorical: coords.emplace_back(jv.get<std::string>()); break;
        }
    }
    return make_vector(schema, std::move(coords));
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ValidationFailure,
                        "parameter '" + kv + "' must look like name=value");
        }
        try {
            out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ValidationFailure,
                        "cannot parse parameter value in '" + kv + "'");
        }
    }
    return out;
}

// Move syntax: dim=+0.5 | dim=-1.0 | dim:=VALUE (categorical substitution).
std::vector<Move> parse_moves(const SchemaPtr& schema, const std::vector<std::string>& specs) {
    std::vector<Move> out;
    for (const auto& spec : specs) {
        Move m;
        auto subst = spec.find(":=");
        if (subst != std::string::npos) {
            m.dim = spec.substr(0, subst);
            m.substitution = true;
            std::size_t idx = schema->index_of(m.dim);
            const Dimension& d = schema->dim(idx);
            std::string raw = spec.substr(subst + 2);
            if (d.kind == QualeKind::Boolean) {
                m.target = raw == "true";
            } else {
                m.target = raw;
            }
        } else {
            auto eq = spec.find('=');
            if (eq == std::string::npos) {
                throw Error(ErrorCode::ValidationFailure,
                            "move '" + spec + "' must look like dim=+0.5 or dim:=VALUE");
            }
            m.dim = spec.substr(0, eq);
            try {
                m.coefficient = std::stod(spec.substr(eq + 1));
            } catch (const std::exception&) {
                throw Error(ErrorCode::ValidationFailure,
                            "cannot parse move coefficient in '" + spec + "'");
            }
            if (m.coefficient == 0.0) continue; // zero moves are dropped
        }
        out.push_back(std::move(m));
    }
    return out;
}

ordered_json move_to_json(const Move& m) {
    ordered_json j;
    j["dim"] = m.dim;
    if (m.substitution) {
        j["target"] = value_to_json(m.target);
    } else {
        j["coefficient"] = m.coefficient;
    }
    return j;
}

ordered_json instance_to_json(const FOEInstance& inst) {
    ordered_json j;
    j["class"] = inst.class_ref->name;
    ordered_json b;
    for (std::size_t i = 0; i < inst.class_ref->params.size(); ++i) {
        b[inst.class_ref->params[i]] = inst.bindings[i];
    }
    j["bindings"] = b;
    return j;
}

std::string instance_to_text(const FOEInstance& inst) {
    std::string out = inst.class_ref->name + "(";
    for (std::size_t i = 0; i < inst.class_ref->params.size(); ++i) {
        if (i) out += ", ";
        out += inst.class_ref->params[i] + "=" + number_text(inst.bindings[i]);
    }
    return out + ")";
}

ordered_json set_to_json(const ExistenceSet& set) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : set.members()) arr.push_back(vector_to_json(m));
    return arr;
}

std::string set_to_text(const ExistenceSet& set) {
    std::string out;
    for (const auto& m : set.members()) {
        out += vector_to_text(m);
        out += "\n";
    }
    if (!out.empty()) out.pop_back();
    return out;
}

ConvexRegion region_arg(const SchemaPtr& schema, const std::string& literal_or_path) {
    if (!literal_or_path.empty() && literal_or_path.front() == '{') {
        return region_from_json(literal_or_path, schema);
    }
    std::ifstream in(literal_or_path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open region file: " + literal_or_path);
    std::ostringstream os;
    os << in.rdbuf();
    return region_from_json(os.str(), schema);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

} // namespace

int main(int argc, char** argv) {
    Globals g;
    CLI::App app{"vector ontology engine"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--schema", g.schema_path, "schema JSON file");
    app.add_option("--data", g.data_path, "dataset file (.csv or .jsonl)");
    app.add_flag("--json", g.json, "single-line JSON output");
    app.add_option("--tolerance", g.tolerance, "numeric tolerance")
        ->envname("VECTONT_TOLERANCE");
    app.add_option("--r", g.r_text, "Minkowski order (number or 'inf')");
    app.add_option("--weights", g.weights_csv, "per-dimension positive weights, CSV");

    std::function<Output()> action;

    // ---- schema ----
    auto* schema_cmd = app.add_subcommand("schema", "schema definition");
    schema_cmd->require_subcommand(1);
    {
        auto* sub = schema_cmd->add_subcommand("new", "define a schema and write it");
        auto name = std::make_shared<std::string>();
        auto dims = std::make_shared<std::vector<std::string>>();
        auto out_path = std::make_shared<std::string>();
        sub->add_option("--name", *name, "schema name")->required();
        sub->add_option("--dim", *dims,
                        "dimension spec name:kind[:unit[:lo,hi]] or name:categorical:v1|v2")
            ->required();
        sub->add_option("--out", *out_path, "output path")->required();
        sub->callback([&action, name, dims, out_path] {
            action = [name, dims, out_path]() -> Output {
                std::vector<Dimension> parsed;
                for (const auto& spec : *dims) {
                    std::vector<std::string> parts;
                    std::stringstream ss(spec);
                    std::string cell;
                    while (std::getline(ss, cell, ':')) parts.push_back(cell);
                    if (parts.size() < 2) {
                        throw Error(ErrorCode::ValidationFailure,
                                    "dimension spec '" + spec + "' needs name:kind");
                    }
                    Dimension d;
                    d.name = parts[0];
                    d.kind = quale_kind_from_name(parts[1]);
                    if (d.kind == QualeKind::Categorical) {
                        if (parts.size() < 3) {
                            throw Error(ErrorCode::ValidationFailure,
                                        "categorical dimension '" + d.name + "' needs values");
                        }
                        std::stringstream vs(parts[2]);
                        while (std::getline(vs, cell, '|')) d.values.push_back(cell);
                    } else {
                        if (parts.size() > 2) d.unit = parts[2];
                        if (parts.size() > 3) {
                            auto comma = parts[3].find(',');
                            if (comma == std::string::npos) {
                                throw Error(ErrorCode::ValidationFailure,
                                            "bounds must be lo,hi in '" + spec + "'");
                            }
                            d.bounds = Bounds{std::stod(parts[3].substr(0, comma)),
                                              std::stod(parts[3].substr(comma + 1))};
                        }
                    }
                    parsed.push_back(std::move(d));
                }
                SchemaPtr schema = define_schema(*name, std::move(parsed));
                save_schema(*schema, *out_path);
                return {"wrote " + *out_path, ordered_json::parse(schema_to_json(*schema))};
            };
        });
    }
    {
        auto* sub = schema_cmd->add_subcommand("show", "print a schema");
        sub->callback([&action, &g] {
            action = [&g]() -> Output {
                SchemaPtr schema = need_schema(g);
                std::string js = schema_to_json(*schema);
                return {js, ordered_json::parse(js)};
            };
        });
    }

    // ---- data ----
    auto* data_cmd = app.add_subcommand("data", "dataset management");
    data_cmd->require_subcommand(1);
    {
        auto* sub = data_cmd->add_subcommand("load", "validate a dataset");
        sub->callback([&action, &g] {
            action = [&g]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                ordered_json j;
                j["members"] = set.size();
                return {std::to_string(set.size()) + " members", j};
            };
        });
    }
    {
        auto* sub = data_cmd->add_subcommand("save", "rewrite a dataset (format by extension)");
        auto out_path = std::make_shared<std::string>();
        sub->add_option("--out", *out_path, "output path")->required();
        sub->callback([&action, &g, out_path] {
            action = [&g, out_path]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                save_dataset(set, *out_path);
                ordered_json j;
                j["members"] = set.size();
                j["path"] = *out_path;
                return {"wrote " + *out_path, j};
            };
        });
    }
    {
        auto* sub = data_cmd->add_subcommand("insert", "insert a vector into a dataset");
        auto vec = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        sub->add_option("--vector", *vec, "comma-separated coordinates")->required();
        sub->add_option("--out", *out_path, "write the updated dataset here");
        sub->callback([&action, &g, vec, out_path] {
            action = [&g, vec, out_path]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                OntVector v = make_vector(schema, parse_coords_csv(*schema, *vec));
                auto result = set.insert(v);
                if (!out_path->empty()) save_dataset(result.set, *out_path);
                ordered_json j;
                j["inserted"] = !result.duplicate;
                j["duplicate"] = result.duplicate;
                j["members"] = result.set.size();
                return {result.duplicate ? "duplicate (kept first)" : "inserted", j};
            };
        });
    }

    // ---- exists / possible ----
    {
        auto* sub = app.add_subcommand("exists", "does the vector exist in the dataset?");
        auto vec = std::make_shared<std::string>();
        sub->add_option("--vector", *vec, "comma-separated coordinates")->required();
        sub->callback([&action, &g, vec] {
            action = [&g, vec]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                OntVector v = make_vector(schema, parse_coords_csv(*schema, *vec));
                bool found = set.exists(v);
                return {bool_text(found), found};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("possible", "could the vector exist in this schema?");
        auto vec = std::make_shared<std::string>();
        sub->add_option("--vector", *vec, "comma-separated coordinates")->required();
        sub->callback([&action, &g, vec] {
            action = [&g, vec]() -> Output {
                SchemaPtr schema = need_schema(g);
                std::vector<Value> coords;
                std::string reason;
                try {
                    coords = parse_coords_csv(*schema, *vec);
                } catch (const Error&) {
                    ordered_json j;
                    j["possible"] = false;
                    j["reason"] = "PARSE_ERROR";
                    return {"false (PARSE_ERROR)", j};
                }
                bool ok = possible(*schema, coords, &reason);
                ordered_json j;
                j["possible"] = ok;
                j["reason"] = ok ? ordered_json(nullptr) : ordered_json(reason);
                return {ok ? "true" : "false (" + reason + ")", j};
            };
        });
    }

    // ---- foe ----
    auto* foe_cmd = app.add_subcommand("foe", "functions of existence");
    foe_cmd->require_subcommand(1);
    auto foe_class = std::make_shared<std::string>();
    auto foe_params = std::make_shared<std::vector<std::string>>();
    {
        auto* sub = foe_cmd->add_subcommand("parse", "parse a class definition");
        sub->add_option("--class", *foe_class, "class text")->required();
        sub->callback([&action, &g, foe_class] {
            action = [&g, foe_class]() -> Output {
                auto cls = parse_foe(*foe_class, need_schema(g));
                ordered_json j;
                j["name"] = cls->name;
                j["params"] = cls->params;
                j["canonical"] = unparse(*cls);
                return {unparse(*cls), j};
            };
        });
    }
    {
        auto* sub = foe_cmd->add_subcommand("bind", "bind class parameters");
        sub->add_option("--class", *foe_class, "class text")->required();
        sub->add_option("--param", *foe_params, "name=value (repeatable)");
        sub->callback([&action, &g, foe_class, foe_params] {
            action = [&g, foe_class, foe_params]() -> Output {
                auto cls = parse_foe(*foe_class, need_schema(g));
                FOEInstance inst = vectont::bind(cls, parse_params(*foe_params));
                return {instance_to_text(inst), instance_to_json(inst)};
            };
        });
    }
    {
        auto* sub = foe_cmd->add_subcommand("eval", "evaluate an instance on a vector");
        auto vec = std::make_shared<std::string>();
        sub->add_option("--class", *foe_class, "class text")->required();
        sub->add_option("--param", *foe_params, "name=value (repeatable)");
        sub->add_option("--vector", *vec, "comma-separated coordinates")->required();
        sub->callback([&action, &g, foe_class, foe_params, vec] {
            action = [&g, foe_class, foe_params, vec]() -> Output {
                SchemaPtr schema = need_schema(g);
                auto cls = parse_foe(*foe_class, schema);
                FOEInstance inst = vectont::bind(cls, parse_params(*foe_params));
                OntVector v = make_vector(schema, parse_coords_csv(*schema, *vec));
                bool value = evaluate(inst, v, g.tolerance);
                return {bool_text(value), value};
            };
        });
    }
    {
        auto* sub = foe_cmd->add_subcommand("extension", "members satisfying an instance");
        sub->add_option("--class", *foe_class, "class text")->required();
        sub->add_option("--param", *foe_params, "name=value (repeatable)");
        sub->callback([&action, &g, foe_class, foe_params] {
            action = [&g, foe_class, foe_params]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                auto cls = parse_foe(*foe_class, schema);
                FOEInstance inst = vectont::bind(cls, parse_params(*foe_params));
                ExistenceSet ext = extension(inst, set, g.tolerance);
                return {set_to_text(ext), set_to_json(ext)};
            };
        });
    }
    {
        auto* sub = foe_cmd->add_subcommand("fit-const", "fit interval-constant instances");
        auto value_dim = std::make_shared<std::string>();
        auto axis_dim = std::make_shared<std::string>();
        auto gap_factor = std::make_shared<double>(1.5);
        sub->add_option("--value-dim", *value_dim, "constant dimension")->required();
        sub->add_option("--axis-dim", *axis_dim, "axis dimension")->required();
        sub->add_option("--gap-factor", *gap_factor, "gap threshold factor (default 1.5)");
        sub->callback([&action, &g, value_dim, axis_dim, gap_factor] {
            action = [&g, value_dim, axis_dim, gap_factor]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                auto fits =
                    fit_constant_interval(set, *value_dim, *axis_dim, *gap_factor, g.tolerance);
                ordered_json arr = ordered_json::array();
                std::string text;
                for (const auto& inst : fits) {
                    arr.push_back(instance_to_json(inst));
                    text += instance_to_text(inst) + "\n";
                }
                if (!text.empty()) text.pop_back();
                return {text, arr};
            };
        });
    }
    {
        auto* sub = foe_cmd->add_subcommand("classify", "endurant/perdurant verdict");
        auto axis_dim = std::make_shared<std::string>();
        auto gap_factor = std::make_shared<double>(1.5);
        sub->add_option("--class", *foe_class, "class text")->required();
        sub->add_option("--param", *foe_params, "name=value (repeatable)");
        sub->add_option("--axis-dim", *axis_dim, "axis dimension")->required();
        sub->add_option("--gap-factor", *gap_factor, "gap threshold factor (default 1.5)");
        sub->callback([&action, &g, foe_class, foe_params, axis_dim, gap_factor] {
            action = [&g, foe_class, foe_params, axis_dim, gap_factor]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                auto cls = parse_foe(*foe_class, schema);
                FOEInstance inst = vectont::bind(cls, parse_params(*foe_params));
                ContinuityVerdict v =
                    classify_continuity(set, inst, *axis_dim, *gap_factor, g.tolerance);
                ordered_json j;
                bool endurant = v.label == ContinuityLabel::Endurant;
                j["label"] = endurant ? "Endurant" : "Perdurant";
                j["sampling_interval"] = v.sampling_interval;
                if (!endurant) {
                    j["witness"] = {v.witness_lo, v.witness_hi};
                    j["witness_gap"] = std::isinf(v.witness_gap)
                                           ? ordered_json("inf")
                                           : ordered_json(v.witness_gap);
                }
                std::string text = endurant ? "Endurant"
                                            : "Perdurant witness=(" + number_text(v.witness_lo) +
                                                  "," + number_text(v.witness_hi) + ")";
                return {text, j};
            };
        });
    }

    // ---- region ----
    auto* region_cmd = app.add_subcommand("region", "convex-region mereology");
    region_cmd->require_subcommand(1);
    {
        auto* sub = region_cmd->add_subcommand("new", "validate and echo a region literal");
        auto literal = std::make_shared<std::string>();
        sub->add_option("--region", *literal, "region JSON literal or file")->required();
        sub->callback([&action, &g, literal] {
            action = [&g, literal]() -> Output {
                ConvexRegion region = region_arg(need_schema(g), *literal);
                std::string js = region_to_json(region);
                return {js, ordered_json::parse(js)};
            };
        });
    }
    {
        auto* sub = region_cmd->add_subcommand("contains", "is the point in the hull?");
        auto literal = std::make_shared<std::string>();
        auto vec = std::make_shared<std::string>();
        sub->add_option("--region", *literal, "region JSON literal or file")->required();
        sub->add_option("--vector", *vec, "comma-separated coordinates")->required();
        sub->callback([&action, &g, literal, vec] {
            action = [&g, literal, vec]() -> Output {
                SchemaPtr schema = need_schema(g);
                ConvexRegion region = region_arg(schema, *literal);
                OntVector v = make_vector(schema, parse_coords_csv(*schema, *vec));
                bool inside = contains_point(region, v);
                return {bool_text(inside), inside};
            };
        });
    }
    {
        auto* sub = region_cmd->add_subcommand("part-of", "is part inside whole?");
        auto part = std::make_shared<std::string>();
        auto whole = std::make_shared<std::string>();
        sub->add_option("--part", *part, "region JSON literal or file")->required();
        sub->add_option("--whole", *whole, "region JSON literal or file")->required();
        sub->callback([&action, &g, part, whole] {
            action = [&g, part, whole]() -> Output {
                SchemaPtr schema = need_schema(g);
                bool inside = part_of(region_arg(schema, *part), region_arg(schema, *whole));
                return {bool_text(inside), inside};
            };
        });
    }
    {
        auto* sub = region_cmd->add_subcommand("overlap", "do the hulls intersect?");
        auto ra = std::make_shared<std::string>();
        auto rb = std::make_shared<std::string>();
        sub->add_option("--a", *ra, "region JSON literal or file")->required();
        sub->add_option("--b", *rb, "region JSON literal or file")->required();
        sub->callback([&action, &g, ra, rb] {
            action = [&g, ra, rb]() -> Output {
                SchemaPtr schema = need_schema(g);
                bool hit = overlap(region_arg(schema, *ra), region_arg(schema, *rb));
                return {bool_text(hit), hit};
            };
        });
    }
    {
        auto* sub = region_cmd->add_subcommand("centrality", "centroid distance part->whole");
        auto part = std::make_shared<std::string>();
        auto whole = std::make_shared<std::string>();
        sub->add_option("--part", *part, "region JSON literal or file")->required();
        sub->add_option("--whole", *whole, "region JSON literal or file")->required();
        sub->callback([&action, &g, part, whole] {
            action = [&g, part, whole]() -> Output {
                SchemaPtr schema = need_schema(g);
                bool warn = false;
                double d = centrality(region_arg(schema, *part), region_arg(schema, *whole),
                                      parse_order(g.r_text), &warn);
                if (warn) std::cerr << "warning: part is not contained in whole\n";
                return {number_text(d), d};
            };
        });
    }
    {
        auto* sub = region_cmd->add_subcommand("convex-in", "dataset-relative convexity");
        auto subset_path = std::make_shared<std::string>();
        auto dims_csv = std::make_shared<std::string>();
        sub->add_option("--subset", *subset_path, "dataset file listing the subset")->required();
        sub->add_option("--dims", *dims_csv, "dimension names, CSV")->required();
        sub->callback([&action, &g, subset_path, dims_csv] {
            action = [&g, subset_path, dims_csv]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                ExistenceSet subset = load_dataset(*subset_path, schema, g.tolerance);
                std::vector<std::string> dims;
                std::stringstream ss(*dims_csv);
                std::string cell;
                while (std::getline(ss, cell, ',')) dims.push_back(cell);
                bool convex = is_convex_in(set, subset.members(), dims);
                return {bool_text(convex), convex};
            };
        });
    }

    // ---- dist ----
    {
        auto* sub = app.add_subcommand("dist", "Minkowski distance between two vectors");
        auto u = std::make_shared<std::string>();
        auto v = std::make_shared<std::string>();
        sub->add_option("--u", *u, "comma-separated coordinates")->required();
        sub->add_option("--v", *v, "comma-separated coordinates")->required();
        sub->callback([&action, &g, u, v] {
            action = [&g, u, v]() -> Output {
                SchemaPtr schema = need_schema(g);
                OntVector uu = make_vector(schema, parse_coords_csv(*schema, *u));
                OntVector vv = make_vector(schema, parse_coords_csv(*schema, *v));
                auto weights = parse_weights(g.weights_csv);
                double d = minkowski(uu, vv, parse_order(g.r_text),
                                     weights ? &*weights : nullptr);
                return {number_text(d), d};
            };
        });
    }

    // ---- recon ----
    auto* recon_cmd = app.add_subcommand("recon", "reconstruction paths and distance");
    recon_cmd->require_subcommand(1);
    auto recon_from = std::make_shared<std::string>();
    auto recon_to = std::make_shared<std::string>();
    auto recon_from_file = std::make_shared<std::string>();
    auto recon_to_file = std::make_shared<std::string>();
    auto add_recon_opts = [&](CLI::App* sub) {
        sub->add_option("--from", *recon_from, "origin, comma-separated");
        sub->add_option("--to", *recon_to, "target, comma-separated");
        sub->add_option("--from-file", *recon_from_file, "origin as JSON file");
        sub->add_option("--to-file", *recon_to_file, "target as JSON file");
    };
    {
        auto* sub = recon_cmd->add_subcommand("path", "minimal move sequence");
        add_recon_opts(sub);
        sub->callback([&action, &g, recon_from, recon_to, recon_from_file, recon_to_file] {
            action = [&g, recon_from, recon_to, recon_from_file, recon_to_file]() -> Output {
                SchemaPtr schema = need_schema(g);
                OntVector origin = vector_arg(schema, *recon_from, *recon_from_file, "--from");
                OntVector target = vector_arg(schema, *recon_to, *recon_to_file, "--to");
                ReconstructionPath path = reconstruction_path(origin, target, g.tolerance);
                ordered_json j;
                j["moves"] = ordered_json::array();
                for (const auto& m : path.moves) j["moves"].push_back(move_to_json(m));
                std::string text;
                for (const auto& m : path.moves) {
                    if (!text.empty()) text += " ";
                    if (m.substitution) {
                        text += m.dim + ":=" + value_to_text(m.target);
                    } else {
                        text += m.dim + "=" + (m.coefficient >= 0 ? "+" : "") +
                                number_text(m.coefficient);
                    }
                }
                if (text.empty()) text = "(empty path)";
                return {text, j};
            };
        });
    }
    {
        auto* sub = recon_cmd->add_subcommand("dist", "move count");
        add_recon_opts(sub);
        sub->callback([&action, &g, recon_from, recon_to, recon_from_file, recon_to_file] {
            action = [&g, recon_from, recon_to, recon_from_file, recon_to_file]() -> Output {
                SchemaPtr schema = need_schema(g);
                OntVector origin = vector_arg(schema, *recon_from, *recon_from_file, "--from");
                OntVector target = vector_arg(schema, *recon_to, *recon_to_file, "--to");
                std::size_t d = reconstruction_distance(origin, target, g.tolerance);
                return {std::to_string(d), d};
            };
        });
    }

    // ---- navigate / nearest ----
    {
        auto* sub = app.add_subcommand("navigate", "origin + moves -> closest existing member");
        auto origin = std::make_shared<std::string>();
        auto moves = std::make_shared<std::vector<std::string>>();
        sub->add_option("--origin", *origin, "comma-separated coordinates")->required();
        sub->add_option("--move", *moves, "dim=+0.5 | dim:=VALUE (repeatable)");
        sub->callback([&action, &g, origin, moves] {
            action = [&g, origin, moves]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                OntVector o = make_vector(schema, parse_coords_csv(*schema, *origin));
                OntVector hit = navigate(set, o, parse_moves(schema, *moves));
                return {vector_to_text(hit), vector_to_json(hit)};
            };
        });
    }
    {
        auto* sub = app.add_subcommand("nearest", "k nearest members");
        auto vec = std::make_shared<std::string>();
        auto k = std::make_shared<std::size_t>(1);
        sub->add_option("--vector", *vec, "comma-separated coordinates")->required();
        sub->add_option("--k", *k, "result count (default 1)");
        sub->callback([&action, &g, vec, k] {
            action = [&g, vec, k]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                OntVector v = make_vector(schema, parse_coords_csv(*schema, *vec));
                auto weights = parse_weights(g.weights_csv);
                auto hits = nearest(set, v, parse_order(g.r_text), *k,
                                    weights ? &*weights : nullptr);
                ordered_json arr = ordered_json::array();
                std::string text;
                for (const auto& h : hits) {
                    arr.push_back(vector_to_json(h));
                    text += vector_to_text(h) + "\n";
                }
                if (!text.empty()) text.pop_back();
                return {text, arr};
            };
        });
    }

    // ---- depend ----
    auto* depend_cmd = app.add_subcommand("depend", "linear dependence analysis");
    depend_cmd->require_subcommand(1);
    auto vectors_path = std::make_shared<std::string>();
    {
        auto* sub = depend_cmd->add_subcommand("rank", "rank and dependencies");
        sub->add_option("--vectors", *vectors_path, "dataset of concept vectors")->required();
        sub->callback([&action, &g, vectors_path] {
            action = [&g, vectors_path]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet vs = load_dataset(*vectors_path, schema, g.tolerance);
                DependenceReport report =
                    detect_linear_dependence(vs.members(), g.tolerance);
                ordered_json j;
                j["rank"] = report.rank;
                j["dependent"] = ordered_json::array();
                std::string text = "rank=" + std::to_string(report.rank);
                for (const auto& dep : report.dependent) {
                    ordered_json jd;
                    jd["target"] = dep.target;
                    jd["basis"] = dep.basis;
                    jd["coefficients"] = dep.coefficients;
                    jd["residual"] = dep.residual;
                    j["dependent"].push_back(jd);
                    text += "; v" + std::to_string(dep.target) + " =";
                    for (std::size_t i = 0; i < dep.basis.size(); ++i) {
                        text += (i ? " + " : " ") + number_text(dep.coefficients[i]) + "*v" +
                                std::to_string(dep.basis[i]);
                    }
                }
                return {text, j};
            };
        });
    }
    {
        auto* sub = depend_cmd->add_subcommand("express", "target as combination of candidates");
        auto target = std::make_shared<std::string>();
        sub->add_option("--target", *target, "comma-separated coordinates")->required();
        sub->add_option("--vectors", *vectors_path, "dataset of candidate vectors")->required();
        sub->callback([&action, &g, target, vectors_path] {
            action = [&g, target, vectors_path]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet vs = load_dataset(*vectors_path, schema, g.tolerance);
                OntVector t = make_vector(schema, parse_coords_csv(*schema, *target));
                CombinationResult result =
                    express_as_combination(t, vs.members(), g.tolerance);
                if (!result.in_span) {
                    throw Error(ErrorCode::NotInSpan,
                                "residual " + number_text(result.residual) + " above tolerance");
                }
                ordered_json j;
                j["coefficients"] = result.coefficients;
                j["residual"] = result.residual;
                std::string text;
                for (std::size_t i = 0; i < result.coefficients.size(); ++i) {
                    text += (i ? " + " : "") + number_text(result.coefficients[i]) + "*v" +
                            std::to_string(i);
                }
                return {text, j};
            };
        });
    }

    // ---- prob ----
    auto* prob_cmd = app.add_subcommand("prob", "probabilistic existence model");
    prob_cmd->require_subcommand(1);
    {
        auto* sub = prob_cmd->add_subcommand("fit", "estimate a histogram model");
        auto bins = std::make_shared<std::size_t>(10);
        auto smoothing = std::make_shared<double>(0.0);
        auto out_path = std::make_shared<std::string>();
        sub->add_option("--bins", *bins, "bins per numeric dimension (default 10)");
        sub->add_option("--smoothing", *smoothing, "additive smoothing (default 0)");
        sub->add_option("--out", *out_path, "model output path")->required();
        sub->callback([&action, &g, bins, smoothing, out_path] {
            action = [&g, bins, smoothing, out_path]() -> Output {
                SchemaPtr schema = need_schema(g);
                ExistenceSet set = need_data(g, schema);
                ProbabilisticFOE model = ProbabilisticFOE::estimate(set, *bins, *smoothing);
                model.save(*out_path);
                ordered_json j;
                j["cells"] = model.cell_count();
                j["total"] = model.total();
                j["path"] = *out_path;
                return {"wrote " + *out_path, j};
            };
        });
    }
    {
        auto* sub = prob_cmd->add_subcommand("query", "probability of a vector's cell");
        auto model_path = std::make_shared<std::string>();
        auto vec = std::make_shared<std::string>();
        sub->add_option("--model", *model_path, "model JSON file")->required();
        sub->add_option("--vector", *vec, "comma-separated coordinates")->required();
        sub->callback([&action, &g, model_path, vec] {
            action = [&g, model_path, vec]() -> Output {
                SchemaPtr schema = need_schema(g);
                ProbabilisticFOE model = ProbabilisticFOE::load(*model_path);
                OntVector v = make_vector(schema, parse_coords_csv(*schema, *vec));
                bool clamped = false;
                double p = model.probability_of(v, &clamped);
                ordered_json j;
                j["probability"] = p;
                j["clamped"] = clamped;
                return {number_text(p) + (clamped ? " (clamped)" : ""), j};
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!action) {
            std::cerr << "no command selected\n";
            return 2;
        }
        emit(g, action());
        return 0;
    } catch (const Error& e) {
        return emit_error(g, e);
    } catch (const std::exception& e) {
        return emit_error(g, Error(ErrorCode::ValidationFailure, e.what()));
    }
}
