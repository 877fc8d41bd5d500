// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// argv[1] is the path to the command-line binary (used by the determinism
// criterion); all other criteria exercise the library directly.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vectont/dependence.hpp"
#include "vectont/existence.hpp"
#include "vectont/foe.hpp"
#include "vectont/mereology.hpp"
#include "vectont/metrics.hpp"
#include "vectont/schema.hpp"

using namespace vectont;

namespace {

constexpr double kAxiomTol = 1e-9;
constexpr double kResidualTol = 1e-9;
constexpr double kProbTol = 1e-12;
constexpr double kOracleBand = 1e-5; // boundary band excluded from hull oracle checks

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("[%2d/13] %s  %s%s%s\n", index, ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

bool guarded(int index, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(index, name, ok, ok ? "" : detail);
    return ok;
}

Dimension cont(const std::string& name) {
    Dimension d;
    d.name = name;
    d.kind = QualeKind::Continuous;
    return d;
}

Dimension intd(const std::string& name) {
    Dimension d;
    d.name = name;
    d.kind = QualeKind::Integer;
    return d;
}

SchemaPtr continuous_schema(std::size_t n, const std::string& name = "accept") {
    std::vector<Dimension> dims;
    for (std::size_t i = 0; i < n; ++i) dims.push_back(cont("d" + std::to_string(i)));
    return define_schema(name, std::move(dims));
}

OntVector vec(const SchemaPtr& schema, const std::vector<double>& coords) {
    std::vector<Value> vals(coords.begin(), coords.end());
    return make_vector(schema, std::move(vals));
}

OntVector random_vec(const SchemaPtr& schema, std::mt19937& rng, double lo = -100.0,
                     double hi = 100.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<Value> vals;
    for (std::size_t i = 0; i < schema->size(); ++i) vals.emplace_back(dist(rng));
    return make_vector(schema, std::move(vals));
}

ExistenceSet set_of(const SchemaPtr& schema, const std::vector<std::vector<double>>& rows) {
    ExistenceSet s(schema);
    for (const auto& row : rows) s = s.insert(vec(schema, row)).set;
    return s;
}

// ---- criterion 1: vector-space axioms -------------------------------------

bool axioms(std::string& detail) {
    auto schema = continuous_schema(4);
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> sdist(-10.0, 10.0);
    const char* names[8] = {
        "commutativity", "associativity",   "additive identity", "additive inverse",
        "scalar assoc",  "scalar identity", "distributive/vec",  "distributive/scalar"};
    for (int i = 0; i < 1000; ++i) {
        auto u = random_vec(schema, rng);
        auto v = random_vec(schema, rng);
        auto w = random_vec(schema, rng);
        double a = sdist(rng), b = sdist(rng);
        bool checks[8] = {
            vector_eq(add(u, v), add(v, u), kAxiomTol),
            vector_eq(add(add(u, v), w), add(u, add(v, w)), kAxiomTol),
            vector_eq(add(u, scale(0.0, u)), u, kAxiomTol),
            vector_eq(add(u, negate(u)), scale(0.0, u), kAxiomTol),
            vector_eq(scale(a * b, u), scale(a, scale(b, u)), kAxiomTol),
            vector_eq(scale(1.0, u), u, kAxiomTol),
            vector_eq(scale(a, add(u, v)), add(scale(a, u), scale(a, v)), kAxiomTol),
            vector_eq(scale(a + b, u), add(scale(a, u), scale(b, u)), kAxiomTol),
        };
        for (int k = 0; k < 8; ++k) {
            if (!checks[k]) {
                detail = std::string(names[k]) + " failed at draw " + std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

// ---- criterion 2: shelf schema round-trip ----------------------------------

bool shelf(std::string& detail) {
    auto shelves = define_schema("shelves", {cont("height"), cont("width")});
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> dist(0.05, 4.0);
    for (int i = 0; i < 1000; ++i) {
        double h = dist(rng), w = dist(rng);
        auto s = vec(shelves, {h, w});
        if (std::get<double>(s.coord(0)) != h || std::get<double>(s.coord(1)) != w) {
            detail = "coordinate read-back not exact";
            return false;
        }
        // unique coordinates: equality iff both components match exactly
        auto other = vec(shelves, {h, w});
        if (!vector_eq(s, other, 0.0)) {
            detail = "identical shelves compare unequal";
            return false;
        }
        if (vector_eq(s, vec(shelves, {h + 0.5, w}), 0.0)) {
            detail = "distinct shelves compare equal";
            return false;
        }
    }
    return true;
}

// ---- criterion 3: blue-rectangle existence ---------------------------------

bool blue_rectangle(std::string& detail) {
    auto shapes = define_schema("colored-shapes", {intd("number_of_edges"), cont("redness"),
                                                   cont("greenness"), cont("blueness")});
    ExistenceSet set(shapes);
    auto blue_rect = make_vector(shapes, {std::int64_t{4}, 0.0, 0.0, 255.0});
    set = set.insert(blue_rect).set;
    if (!set.exists(blue_rect)) {
        detail = "inserted vector not found";
        return false;
    }
    auto nudged = make_vector(shapes, {std::int64_t{4}, 0.0, 0.0, 255.001});
    if (set.exists(nudged)) {
        detail = "perturbation beyond tolerance still reported as existing";
        return false;
    }
    auto within = make_vector(shapes, {std::int64_t{4}, 0.0, 0.0, 255.0 + 1e-12});
    if (!set.exists(within)) {
        detail = "perturbation within tolerance reported as missing";
        return false;
    }
    return true;
}

// ---- criterion 4: constant-weight interval fit -----------------------------

bool johns_weight(std::string& detail) {
    auto tw = define_schema("humans", {cont("time"), cont("weight")});
    std::vector<std::vector<double>> rows;
    for (int t = 50; t <= 60; ++t) rows.push_back({double(t), 68.0});
    auto set = set_of(tw, rows);
    auto fits = fit_constant_interval(set, "weight", "time");
    if (fits.size() != 1) {
        detail = "expected exactly one fitted instance, got " + std::to_string(fits.size());
        return false;
    }
    const auto& inst = fits[0];
    if (inst.bindings[0] != 50.0 || inst.bindings[1] != 60.0 || inst.bindings[2] != 68.0) {
        detail = "fitted parameters differ from lo=50 hi=60 val=68";
        return false;
    }
    auto ext = extension(inst, set);
    if (ext.size() != 11) {
        detail = "extension covers " + std::to_string(ext.size()) + " of 11 members";
        return false;
    }
    auto verdict = classify_continuity(set, inst, "time");
    if (verdict.label != ContinuityLabel::Endurant) {
        detail = "gap-free run classified Perdurant";
        return false;
    }
    return true;
}

// ---- criterion 5: perdurant witness and threshold monotonicity -------------

bool continuity_split(std::string& detail) {
    auto tw = define_schema("humans", {cont("time"), cont("weight")});
    std::vector<std::vector<double>> rows;
    for (int t = 0; t <= 10; ++t) rows.push_back({double(t), 68.0});
    for (int t = 50; t <= 60; ++t) rows.push_back({double(t), 68.0});
    auto set = set_of(tw, rows);
    auto taut = bind(parse_foe("class t(): 0 <= 1", tw), {});
    auto verdict = classify_continuity(set, taut, "time");
    if (verdict.label != ContinuityLabel::Perdurant || verdict.witness_lo != 10.0 ||
        verdict.witness_hi != 50.0 || verdict.witness_gap != 40.0) {
        detail = "two-cluster series: wrong label or witness gap";
        return false;
    }

    // monotonicity: loosening the gap factor can only move Perdurant -> Endurant
    std::mt19937 rng(107);
    std::uniform_real_distribution<double> tdist(0.0, 100.0);
    for (int series = 0; series < 100; ++series) {
        std::vector<std::vector<double>> pts;
        int n = 3 + int(rng() % 30);
        for (int i = 0; i < n; ++i) pts.push_back({tdist(rng), 1.0});
        auto s = set_of(tw, pts);
        ContinuityLabel prev = ContinuityLabel::Perdurant;
        bool prev_set = false;
        for (double factor : {1.0, 1.5, 2.5, 4.0}) {
            auto v = classify_continuity(s, taut, "time", factor);
            if (prev_set && prev == ContinuityLabel::Endurant &&
                v.label == ContinuityLabel::Perdurant) {
                detail = "larger gap factor flipped Endurant back to Perdurant";
                return false;
            }
            prev = v.label;
            prev_set = true;
        }
    }
    return true;
}

// ---- criterion 6: mereology ------------------------------------------------

// Independent 2-D oracle: membership via supporting-edge enumeration.
int halfplane_oracle_2d(const std::vector<std::vector<double>>& gens,
                        const std::vector<double>& p, double band) {
    bool boundary = false;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            double ax = gens[j][0] - gens[i][0];
            double ay = gens[j][1] - gens[i][1];
            int side = 0;
            bool is_edge = true;
            for (const auto& g : gens) {
                double cross = ax * (g[1] - gens[i][1]) - ay * (g[0] - gens[i][0]);
                if (std::fabs(cross) <= 1e-12) continue;
                int s = cross > 0 ? 1 : -1;
                if (side == 0) side = s;
                else if (s != side) {
                    is_edge = false;
                    break;
                }
            }
            if (!is_edge || side == 0) continue;
            double cross = ax * (p[1] - gens[i][1]) - ay * (p[0] - gens[i][0]);
            double scale = std::hypot(ax, ay);
            if (side * cross < -band * scale) return -1;
            if (std::fabs(cross) <= band * scale) boundary = true;
        }
    }
    return boundary ? 0 : 1;
}

// Independent 3-D oracle: membership via supporting-facet enumeration.
// Returns -2 when the generators are degenerate (no facet found).
int facet_oracle_3d(const std::vector<std::vector<double>>& gens,
                    const std::vector<double>& p, double band) {
    bool boundary = false;
    bool any_facet = false;
    auto subv = [](const std::vector<double>& a, const std::vector<double>& b) {
        return std::array<double, 3>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            for (std::size_t k = j + 1; k < gens.size(); ++k) {
                auto u = subv(gens[j], gens[i]);
                auto v = subv(gens[k], gens[i]);
                std::array<double, 3> n = {u[1] * v[2] - u[2] * v[1],
                                           u[2] * v[0] - u[0] * v[2],
                                           u[0] * v[1] - u[1] * v[0]};
                double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
                if (norm <= 1e-12) continue;
                int side = 0;
                bool facet = true;
                for (const auto& g : gens) {
                    auto d = subv(g, gens[i]);
                    double dot = (n[0] * d[0] + n[1] * d[1] + n[2] * d[2]) / norm;
                    if (std::fabs(dot) <= 1e-9) continue;
                    int s = dot > 0 ? 1 : -1;
                    if (side == 0) side = s;
                    else if (s != side) {
                        facet = false;
                        break;
                    }
                }
                if (!facet || side == 0) continue;
                any_facet = true;
                auto d = subv(p, gens[i]);
                double dot = (n[0] * d[0] + n[1] * d[1] + n[2] * d[2]) / norm;
                if (side * dot < -band) return -1;
                if (std::fabs(dot) <= band) boundary = true;
            }
        }
    }
    if (!any_facet) return -2;
    return boundary ? 0 : 1;
}

ConvexRegion box_region(const SchemaPtr& schema, const std::vector<std::string>& dims,
                        double cx, double cy, double half) {
    return region_from_points({vec(schema, {cx - half, cy - half}),
                               vec(schema, {cx + half, cy - half}),
                               vec(schema, {cx - half, cy + half}),
                               vec(schema, {cx + half, cy + half})},
                              dims);
}

bool mereology(std::string& detail) {
    auto plane = define_schema("plane", {cont("x"), cont("y")});
    auto engine = box_region(plane, {"x", "y"}, 0, 0, 1);
    auto car = box_region(plane, {"x", "y"}, 0, 0, 5);
    if (!part_of(engine, car) || part_of(car, engine)) {
        detail = "nested-box part_of facts failed";
        return false;
    }

    std::mt19937 rng(109);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    auto space = define_schema("space", {cont("x"), cont("y"), cont("z")});
    for (int trial = 0; trial < 20; ++trial) {
        bool three_d = trial % 2 == 1;
        const SchemaPtr& schema = three_d ? space : plane;
        std::size_t dim_count = three_d ? 3 : 2;
        std::vector<std::string> dims(schema->size() == 3
                                          ? std::vector<std::string>{"x", "y", "z"}
                                          : std::vector<std::string>{"x", "y"});
        std::vector<OntVector> pts;
        std::vector<std::vector<double>> raw;
        int n = int(dim_count) + 1 + int(rng() % 5);
        for (int i = 0; i < n; ++i) {
            std::vector<double> row;
            for (std::size_t d = 0; d < dim_count; ++d) row.push_back(coord(rng));
            raw.push_back(row);
            pts.push_back(vec(schema, row));
        }
        auto region = region_from_points(pts, dims);
        int checked = 0;
        for (int q = 0; q < 10000; ++q) {
            std::vector<double> p;
            for (std::size_t d = 0; d < dim_count; ++d) p.push_back(coord(rng) * 1.3);
            int oracle = three_d ? facet_oracle_3d(raw, p, kOracleBand)
                                 : halfplane_oracle_2d(raw, p, kOracleBand);
            if (oracle == -2) break;     // degenerate hull, skip trial
            if (oracle == 0) continue;   // within the tolerance band
            ++checked;
            if (contains_coords(region, p) != (oracle > 0)) {
                detail = "hull membership disagrees with the rejection oracle (trial " +
                         std::to_string(trial) + ")";
                return false;
            }
        }
        if (checked == 0 && n > int(dim_count)) {
            detail = "oracle never produced a decisive sample";
            return false;
        }
    }

    // transitivity over random nested triples
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        double cx = c(rng), cy = c(rng);
        auto a = box_region(plane, {"x", "y"}, cx, cy, 0.25 + 0.5 * (trial % 3));
        auto b = box_region(plane, {"x", "y"}, cx, cy, 2.0);
        auto d = box_region(plane, {"x", "y"}, cx, cy, 4.5);
        if (!(part_of(a, b) && part_of(b, d) && part_of(a, d))) {
            detail = "transitivity failed on nested boxes";
            return false;
        }
    }
    return true;
}

// ---- criterion 7: linear dependence ----------------------------------------

struct Frac {
    std::int64_t num = 0, den = 1;
};

Frac frac(std::int64_t n, std::int64_t d = 1) {
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    return Frac{n, d};
}

Frac fsub(Frac a, Frac b) { return frac(a.num * b.den - b.num * a.den, a.den * b.den); }
Frac fmul(Frac a, Frac b) { return frac(a.num * b.num, a.den * b.den); }
Frac fdiv(Frac a, Frac b) { return frac(a.num * b.den, a.den * b.num); }

std::size_t exact_rank(std::vector<std::vector<std::int64_t>> rows) {
    if (rows.empty()) return 0;
    std::vector<std::vector<Frac>> m;
    for (const auto& r : rows) {
        std::vector<Frac> fr;
        for (auto v : r) fr.push_back(frac(v));
        m.push_back(std::move(fr));
    }
    std::size_t rank = 0;
    std::size_t cols = m[0].size();
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col].num == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col].num == 0) continue;
            Frac factor = fdiv(m[r][col], m[rank][col]);
            for (std::size_t cc = col; cc < cols; ++cc)
                m[r][cc] = fsub(m[r][cc], fmul(factor, m[rank][cc]));
        }
        ++rank;
    }
    return rank;
}

bool rgb_dependence(std::string& detail) {
    auto rgb = define_schema("rgb", {cont("redness"), cont("greenness"), cont("blueness")});
    std::vector<OntVector> colors = {vec(rgb, {1, 0, 0}), vec(rgb, {0, 1, 0}),
                                     vec(rgb, {1, 1, 0})};
    auto report = detect_linear_dependence(colors);
    if (report.rank != 2 || report.dependent.size() != 1) {
        detail = "rank({r,g,yellow}) != 2";
        return false;
    }
    const auto& dep = report.dependent[0];
    if (dep.target != 2 || dep.coefficients.size() != 2 ||
        std::fabs(dep.coefficients[0] - 1.0) > kResidualTol ||
        std::fabs(dep.coefficients[1] - 1.0) > kResidualTol || dep.residual > kResidualTol) {
        detail = "yellow != 1*r + 1*g within 1e-9";
        return false;
    }

    std::mt19937 rng(113);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t dims = 2 + rng() % 5; // up to 6 columns
        std::size_t count = 2 + rng() % 5; // up to 6 rows
        auto schema = continuous_schema(dims, "m" + std::to_string(dims));
        std::vector<std::vector<std::int64_t>> rows;
        std::vector<OntVector> vectors;
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<std::int64_t> row;
            std::vector<double> dr;
            for (std::size_t ccol = 0; ccol < dims; ++ccol) {
                int v = entry(rng);
                row.push_back(v);
                dr.push_back(double(v));
            }
            rows.push_back(row);
            vectors.push_back(vec(schema, dr));
        }
        if (detect_linear_dependence(vectors).rank != exact_rank(rows)) {
            detail = "rank disagrees with exact rational elimination (trial " +
                     std::to_string(trial) + ")";
            return false;
        }
    }
    return true;
}

// ---- criterion 8: reconstruction paths -------------------------------------

bool reconstruction(std::string& detail) {
    auto motion = define_schema("motion", {cont("size"), cont("gravitational_force"),
                                           cont("electric_force"), cont("ellipticity")});
    auto planets = vec(motion, {1.0, 1.0, 0.0, 0.8});
    auto atoms = vec(motion, {0.001, 0.0, 1.0, 0.8});
    if (reconstruction_path(planets, atoms).moves.size() != 3 ||
        reconstruction_distance(planets, atoms) != 3) {
        detail = "three-dimension rewrite does not have length 3";
        return false;
    }

    auto schema = continuous_schema(4);
    std::mt19937 rng(127);
    std::uniform_int_distribution<int> coarse(0, 2);
    for (int i = 0; i < 1000; ++i) {
        auto draw = [&] {
            return vec(schema, {double(coarse(rng)), double(coarse(rng)),
                                double(coarse(rng)), double(coarse(rng))});
        };
        auto a = draw(), b = draw(), c = draw();
        auto dab = reconstruction_distance(a, b);
        if (dab != reconstruction_distance(b, a) || (dab == 0) != vector_eq(a, b) ||
            dab > reconstruction_distance(a, c) + reconstruction_distance(c, b)) {
            detail = "metric law failed at triple " + std::to_string(i);
            return false;
        }
    }
    for (int i = 0; i < 1000; ++i) {
        auto origin = random_vec(schema, rng);
        auto target = random_vec(schema, rng);
        auto path = reconstruction_path(origin, target);
        if (!vector_eq(apply_moves(origin, path.moves), target, 0.0)) {
            detail = "applying the path moves did not land exactly on the target";
            return false;
        }
    }
    return true;
}

// ---- criterion 9: Minkowski metric laws ------------------------------------

bool minkowski_laws(std::string& detail) {
    auto schema = continuous_schema(3);
    auto plane = continuous_schema(2, "plane2");
    if (minkowski(vec(plane, {0, 0}), vec(plane, {3, 4}), 2.0) != 5.0) {
        detail = "d([0,0],[3,4],2) != 5 exactly";
        return false;
    }
    std::mt19937 rng(131);
    const double inf = std::numeric_limits<double>::infinity();
    for (double r : {1.0, 2.0, 3.0, inf}) {
        for (int i = 0; i < 1000; ++i) {
            auto a = random_vec(schema, rng);
            auto b = random_vec(schema, rng);
            auto c = random_vec(schema, rng);
            double ab = minkowski(a, b, r);
            if (ab < 0 || std::fabs(ab - minkowski(b, a, r)) > kAxiomTol * std::max(1.0, ab) ||
                minkowski(a, a, r) != 0.0 ||
                ab > minkowski(a, c, r) + minkowski(c, b, r) + kAxiomTol * std::max(1.0, ab)) {
                detail = "metric law failed for r=" + std::to_string(r);
                return false;
            }
        }
    }
    return true;
}

// ---- criterion 10: navigation oracles --------------------------------------

bool navigation(std::string& detail) {
    auto schema = continuous_schema(3);
    std::mt19937 rng(137);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_int_distribution<int> ties(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> rows;
        int n = 5 + int(rng() % 96); // up to 100 members
        for (int i = 0; i < n; ++i) {
            if (ties(rng) == 0 && !rows.empty()) {
                // mirrored duplicate to force distance ties
                auto m = rows.back();
                m[0] = -m[0];
                rows.push_back(m);
            } else {
                rows.push_back({coord(rng), coord(rng), coord(rng)});
            }
        }
        auto set = set_of(schema, rows);
        auto query = vec(schema, {0.0, coord(rng), coord(rng)});

        std::vector<const OntVector*> order;
        for (const auto& m : set.members()) order.push_back(&m);
        std::stable_sort(order.begin(), order.end(), [&](const OntVector* a, const OntVector* b) {
            double da = minkowski(*a, query, 2.0);
            double db = minkowski(*b, query, 2.0);
            if (da != db) return da < db;
            return vector_less(*a, *b);
        });

        if (!vector_eq(navigate(set, query, {}), *order[0], 0.0)) {
            detail = "navigate diverged from the exhaustive oracle";
            return false;
        }
        std::size_t k = std::min<std::size_t>(5, set.size());
        auto top = nearest(set, query, 2.0, k);
        for (std::size_t i = 0; i < k; ++i) {
            if (!vector_eq(top[i], *order[i], 0.0)) {
                detail = "nearest order diverged from the exhaustive oracle";
                return false;
            }
        }
        // determinism: repeated calls give identical answers
        auto again = nearest(set, query, 2.0, k);
        for (std::size_t i = 0; i < k; ++i) {
            if (!vector_eq(top[i], again[i], 0.0)) {
                detail = "nearest is not deterministic across calls";
                return false;
            }
        }
    }
    return true;
}

// ---- criterion 11: probability model ---------------------------------------

bool probability_model(std::string& detail) {
    auto schema = continuous_schema(2);
    std::vector<std::vector<double>> grid;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) grid.push_back({double(x), double(y)});
    auto uniform = set_of(schema, grid);
    for (double smoothing : {0.0, 0.5, 1.0}) {
        auto model = ProbabilisticFOE::estimate(uniform, 4, smoothing);
        for (const auto& m : uniform.members()) {
            if (std::fabs(model.probability_of(m) - 1.0 / 16.0) > kProbTol) {
                detail = "uniform grid cell probability differs from 1/16";
                return false;
            }
        }
    }

    std::mt19937 rng(139);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 80; ++i) rows.push_back({coord(rng), coord(rng)});
    auto set = set_of(schema, rows);
    for (double smoothing : {0.0, 0.25, 1.0}) {
        auto model = ProbabilisticFOE::estimate(set, 5, smoothing);
        double total = 0.0;
        for (std::uint64_t c : model.counts())
            total += (double(c) + smoothing) /
                     (double(model.total()) + smoothing * double(model.cell_count()));
        if (std::fabs(total - 1.0) > kProbTol) {
            detail = "cell probabilities do not sum to 1";
            return false;
        }
    }

    auto model = ProbabilisticFOE::estimate(set, 4, 0.75);
    auto path = std::filesystem::temp_directory_path() / "vectont_accept_model.json";
    model.save(path.string());
    auto reloaded = ProbabilisticFOE::load(path.string());
    std::filesystem::remove(path);
    for (const auto& m : set.members()) {
        double a = model.probability_of(m);
        double b = reloaded.probability_of(m);
        if (std::memcmp(&a, &b, sizeof(double)) != 0) {
            detail = "reloaded model is not bit-for-bit identical";
            return false;
        }
    }
    return true;
}

// ---- criterion 12: predicate grammar ---------------------------------------

bool parser_grammar(std::string& detail) {
    auto schema = define_schema("pspace", {cont("x"), cont("y"), cont("z"), cont("time"),
                                           cont("weight")});
    std::vector<std::string> corpus = {
        "class sphere(a,b,c,r): (x+a)^2+(y+b)^2+(z+c)^2 <= r^2",
        "class w(lo,hi,val): (time >= lo) AND (time <= hi) AND (weight = val)",
        "class t(): 0 <= 1",
        "class f(): 1 <= 0",
        "class neg(a): NOT (x <= a)",
        "class orc(a,b): x <= a OR y >= b",
        "class andor(a,b,c): x <= a AND y <= b OR z <= c",
        "class nested(a): ((x + a) * (y - a)) <= (z ^ 3)",
        "class prec(a): x + y * z ^ 2 <= a",
        "class eq(v): weight = v",
        "class both(a,b): (x <= a) AND ((y >= b) OR (z = 0))",
        "class deep(): NOT (NOT (x <= 1))",
        "class lit(): 1.5 <= 2.5e3",
        "class chain(a): x - y - z <= a",
        "class powpow(): (x ^ 2) ^ 3 <= 100",
        "class mulmul(a): x * y * z <= a",
        "class mix(a): x * 2 + y * 3 - z <= a",
        "class ge(a): x >= a",
        "class le(a): x <= a",
        "class zero(): x = 0",
        "class negnum(): x <= 0 - 5",
        "class paren(): (((x))) <= 1",
        "class two(a,b): (x = a) OR (y = b)",
        "class three(a,b,c): (x = a) AND (y = b) AND (z = c)",
        "class band(lo,hi): (x >= lo) AND (x <= hi)",
        "class ring(r1,r2): (x^2 + y^2 >= r1^2) AND (x^2 + y^2 <= r2^2)",
        "class slope(m,b): y <= m * x + b",
        "class cube(s): (x <= s) AND (y <= s) AND (z <= s)",
        "class offset(a): time - a <= weight + a",
        "class poly(a,b): x^3 - y^2 + z <= a * b",
    };
    if (corpus.size() < 30) {
        detail = "corpus smaller than 30 cases";
        return false;
    }
    for (const auto& text : corpus) {
        auto first = parse_foe(text, schema);
        auto second = parse_foe(unparse(*first), schema);
        if (!expr_equal(first->body, second->body) || first->params != second->params) {
            detail = "round-trip inequality for: " + text;
            return false;
        }
    }

    struct BadCase {
        std::string text;
        ErrorCode code;
    };
    std::vector<BadCase> bad = {
        {"class b(): q + 1 <= 2", ErrorCode::UnknownIdentifier},
        {"class b(a): x + <= 2", ErrorCode::SyntaxError},
        {"class b(): x + 1", ErrorCode::TypeError},
        {"class b(): (x <= 1) + 2 <= 3", ErrorCode::TypeError},
        {"class b(a,a): x <= a", ErrorCode::SyntaxError},
    };
    for (const auto& bc : bad) {
        try {
            parse_foe(bc.text, schema);
            detail = "accepted invalid input: " + bc.text;
            return false;
        } catch (const Error& e) {
            if (e.code() != bc.code || std::string(e.what()).find("position") ==
                                           std::string::npos) {
                detail = "wrong code or missing position for: " + bc.text + " (" +
                         e.code_name() + ": " + e.what() + ")";
                return false;
            }
        }
    }
    // binding arity misuse is diagnosed too
    auto cls = parse_foe("class s(a): x <= a", schema);
    try {
        bind(cls, {});
        detail = "missing parameter accepted";
        return false;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::MissingParameter) {
            detail = "wrong code for missing parameter";
            return false;
        }
    }
    return true;
}

// ---- criterion 13: CLI determinism -----------------------------------------

std::string run_cli(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    out += "\n<exit " + std::to_string(rc) + ">";
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool cli_determinism(const std::string& cli, std::string& detail) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "vectont_accept_cli";
    fs::create_directories(dir);

    // fixtures
    fs::path schema_path = dir / "humans.json";
    {
        std::ofstream out(schema_path);
        out << R"({"name":"humans","dims":[)"
            << R"({"name":"time","kind":"continuous","unit":null,"bounds":null,"values":null},)"
            << R"({"name":"weight","kind":"continuous","unit":null,"bounds":null,"values":null}]})";
    }
    fs::path data_path = dir / "weights.csv";
    {
        std::ofstream out(data_path);
        out << "time,weight\n";
        for (int t = 50; t <= 60; ++t) out << t << ",68\n";
        out << "70,80\n71,80\n";
    }
    fs::path subset_path = dir / "subset.csv";
    {
        std::ofstream out(subset_path);
        out << "time,weight\n50,68\n51,68\n52,68\n";
    }
    fs::path rgb_schema = dir / "rgb.json";
    {
        std::ofstream out(rgb_schema);
        out << R"({"name":"rgb","dims":[)"
            << R"({"name":"redness","kind":"continuous","unit":null,"bounds":null,"values":null},)"
            << R"({"name":"greenness","kind":"continuous","unit":null,"bounds":null,"values":null},)"
            << R"({"name":"blueness","kind":"continuous","unit":null,"bounds":null,"values":null}]})";
    }
    fs::path colors_path = dir / "colors.csv";
    {
        std::ofstream out(colors_path);
        out << "redness,greenness,blueness\n1,0,0\n0,1,0\n1,1,0\n";
    }
    std::string tri = R"('{"dims":["time","weight"],"generators":[[50,60],[60,60],[50,80]]}')";
    std::string tri_small = R"('{"dims":["time","weight"],"generators":[[52,62],[56,62],[52,66]]}')";

    std::string base = cli + " --json --schema " + schema_path.string() + " --data " +
                       data_path.string() + " ";
    std::string rgb_base = cli + " --json --schema " + rgb_schema.string() + " --data " +
                           colors_path.string() + " ";
    std::string klass = " --class 'class w(lo,hi,val): (time >= lo) AND (time <= hi) AND "
                        "(weight = val)' --param lo=49 --param hi=61 --param val=68 ";

    std::vector<std::string> commands = {
        cli + " --json schema new --name demo --dim h:continuous:m:0,3 --dim w:continuous"
              " --out " + (dir / "demo.json").string(),
        base + "schema show",
        base + "data load",
        base + "data save --out " + (dir / "copy.jsonl").string(),
        base + "data insert --vector 80,82 --out " + (dir / "plus.csv").string(),
        base + "exists --vector 50,68",
        base + "exists --vector 50,99",
        base + "possible --vector 50,68",
        base + "possible --vector 50,nope",
        base + "foe parse --class 'class w(lo,hi,val): (time >= lo) AND (time <= hi) AND"
               " (weight = val)'",
        base + "foe bind" + klass,
        base + "foe eval" + klass + "--vector 55,68",
        base + "foe extension" + klass,
        base + "foe fit-const --value-dim weight --axis-dim time",
        base + "foe classify" + klass + "--axis-dim time",
        base + "region new --region " + tri,
        base + "region contains --region " + tri + " --vector 55,65",
        base + "region part-of --part " + tri_small + " --whole " + tri,
        base + "region overlap --a " + tri + " --b " + tri_small,
        base + "region centrality --part " + tri_small + " --whole " + tri,
        base + "region convex-in --subset " + subset_path.string() + " --dims time,weight",
        base + "dist --u 0,0 --v 3,4 --r 2",
        base + "dist --u 0,0 --v 3,4 --r inf",
        base + "recon path --from 50,68 --to 70,80",
        base + "recon dist --from 50,68 --to 70,80",
        base + "navigate --origin 49,68 --move time=+1",
        base + "nearest --vector 55,68 --k 3",
        rgb_base + "depend rank --vectors " + colors_path.string(),
        rgb_base + "depend express --target 1,1,0 --vectors " + colors_path.string(),
        base + "prob fit --bins 3 --smoothing 1 --out " + (dir / "model.json").string(),
        base + "prob query --model " + (dir / "model.json").string() + " --vector 55,68",
    };

    for (const auto& cmd : commands) {
        std::string first = run_cli(cmd);
        std::string second = run_cli(cmd);
        if (first != second) {
            detail = "output differs across runs for: " + cmd;
            return false;
        }
        if (first.find("\"ok\":true") == std::string::npos) {
            detail = "command did not succeed: " + cmd + " => " + first;
            return false;
        }
    }

    // file-producing commands emit identical bytes across runs
    for (const char* name : {"demo.json", "copy.jsonl", "plus.csv", "model.json"}) {
        fs::path p = dir / name;
        std::string first = slurp(p);
        // re-run the whole battery once more cheaply: just the producers
        for (const auto& cmd : commands) {
            if (cmd.find(name) != std::string::npos) run_cli(cmd);
        }
        if (slurp(p) != first) {
            detail = std::string("artifact differs across runs: ") + name;
            return false;
        }
    }

    fs::remove_all(dir);
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 2;
    }
    std::string cli = argv[1];

    guarded(1, "vector-space axioms (8 properties x 1000 draws, tol 1e-9)", axioms);
    guarded(2, "shelf schema: unique coordinates, exact round-trip", shelf);
    guarded(3, "blue-rectangle existence and tolerance boundary", blue_rectangle);
    guarded(4, "constant-weight interval: fit, extension, Endurant", johns_weight);
    guarded(5, "two-cluster Perdurant witness + threshold monotonicity", continuity_split);
    guarded(6, "mereology: hull oracle (20 hulls x 10^4 samples) + transitivity", mereology);
    guarded(7, "linear dependence: rgb rank 2 + exact rational rank oracle", rgb_dependence);
    guarded(8, "reconstruction: 3-move path, metric laws, exact round-trip", reconstruction);
    guarded(9, "Minkowski laws for r in {1,2,3,inf}; d([0,0],[3,4],2)=5", minkowski_laws);
    guarded(10, "navigate/nearest vs exhaustive oracles with tie-breaks", navigation);
    guarded(11, "probability model: uniform cells, sum to 1, bit-exact reload",
            probability_model);
    guarded(12, "predicate grammar: 30-case round-trip + positioned errors", parser_grammar);
    guarded(13, "command-line determinism: byte-identical repeated runs",
            [&cli](std::string& d) { return cli_determinism(cli, d); });

    if (g_failures == 0) {
        std::printf("all 13 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
