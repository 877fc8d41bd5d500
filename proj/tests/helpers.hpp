#ifndef VECTONT_TESTS_HELPERS_HPP
#define VECTONT_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "vectont/existence.hpp"
#include "vectont/schema.hpp"

namespace testutil {

inline vectont::Dimension cont(const std::string& name) {
    vectont::Dimension d;
    d.name = name;
    d.kind = vectont::QualeKind::Continuous;
    return d;
}

inline vectont::Dimension intd(const std::string& name) {
    vectont::Dimension d;
    d.name = name;
    d.kind = vectont::QualeKind::Integer;
    return d;
}

inline vectont::SchemaPtr continuous_schema(std::size_t n, const std::string& name = "test") {
    std::vector<vectont::Dimension> dims;
    for (std::size_t i = 0; i < n; ++i) dims.push_back(cont("d" + std::to_string(i)));
    return vectont::define_schema(name, std::move(dims));
}

inline vectont::OntVector vec(const vectont::SchemaPtr& schema,
                              const std::vector<double>& coords) {
    std::vector<vectont::Value> vals(coords.begin(), coords.end());
    return vectont::make_vector(schema, std::move(vals));
}

inline vectont::OntVector random_vec(const vectont::SchemaPtr& schema, std::mt19937& rng,
                                     double lo = -100.0, double hi = 100.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<vectont::Value> vals;
    for (std::size_t i = 0; i < schema->size(); ++i) vals.emplace_back(dist(rng));
    return vectont::make_vector(schema, std::move(vals));
}

// The colored-shapes schema: one integer edge count, three color channels.
inline vectont::SchemaPtr colored_shapes() {
    return vectont::define_schema(
        "colored-shapes",
        {intd("number_of_edges"), cont("redness"), cont("greenness"), cont("blueness")});
}

// time/weight schema used throughout the constant-interval examples.
inline vectont::SchemaPtr time_weight() {
    return vectont::define_schema("humans", {cont("time"), cont("weight")});
}

inline vectont::ExistenceSet set_of(const vectont::SchemaPtr& schema,
                                    const std::vector<std::vector<double>>& rows) {
    vectont::ExistenceSet s(schema);
    for (const auto& row : rows) s = s.insert(vec(schema, row)).set;
    return s;
}

} // namespace testutil

#endif
