#include "vectont/mereology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "vectont/metrics.hpp"

namespace vectont {

namespace {

// Phase-1 simplex feasibility: does A x = b admit x >= 0?
// Artificial variables are driven out with Bland's rule; the system is
// feasible when the residual artificial mass is within tol (scaled by the
// magnitude of b).
bool lp_feasible(std::vector<std::vector<double>> a, std::vector<double> b, double tol) {
    const std::size_t m = b.size();
    const std::size_t n = a.empty() ? 0 : a[0].size();
    const double pivot_eps = 1e-12;

    double scale = 1.0;
    for (double x : b) scale = std::max(scale, std::fabs(x));
    for (const auto& row : a) {
        for (double x : row) scale = std::max(scale, std::fabs(x));
    }

    // Tableau: n structural + m artificial columns + rhs.
    std::vector<std::vector<double>> t(m, std::vector<double>(n + m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        double sign = b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
        t[i][n + i] = 1.0;
        t[i][n + m] = sign * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs for minimizing the artificial sum.
    std::vector<double> z(n + m + 1, 0.0);
    for (std::size_t j = 0; j <= n + m; ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < m; ++i) colsum += t[i][j];
        z[j] = (j >= n && j < n + m ? 1.0 : 0.0) - colsum;
    }

    while (true) {
        // Bland: smallest-index entering column with negative reduced cost.
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (z[j] < -pivot_eps) {
                enter = j;
                break;
            }
        }
        if (enter == n + m) break;

        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > pivot_eps) {
                double ratio = t[i][n + m] / t[i][enter];
                if (ratio < best_ratio - pivot_eps ||
                    (std::fabs(ratio - best_ratio) <= pivot_eps &&
                     (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) break; // unbounded direction; cannot reduce further

        double pivot = t[leave][enter];
        for (double& x : t[leave]) x /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || std::fabs(t[i][enter]) <= pivot_eps) continue;
            double factor = t[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= factor * t[leave][j];
        }
        double zfactor = z[enter];
        for (std::size_t j = 0; j <= n + m; ++j) z[j] -= zfactor * t[leave][j];
        basis[leave] = enter;
    }

    double artificial_mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n) artificial_mass += std::fabs(t[i][n + m]);
    }
    return artificial_mass <= tol * scale;
}

std::vector<double> project_numeric(const OntVector& v, const std::vector<std::string>& dims) {
    std::vector<double> out;
    out.reserve(dims.size());
    for (const auto& name : dims) {
        out.push_back(v.numeric(v.schema()->index_of(name)));
    }
    return out;
}

std::vector<double> centroid(const std::vector<std::vector<double>>& points) {
    std::vector<double> c(points[0].size(), 0.0);
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) c[i] += p[i];
    }
    for (double& x : c) x /= static_cast<double>(points.size());
    return c;
}

void require_same_dims(const ConvexRegion& a, const ConvexRegion& b) {
    if (a.dims != b.dims) {
        throw Error(ErrorCode::DimensionMismatch,
                    "regions span different dimension subsets");
    }
}

} // namespace

ConvexRegion region_from_points(const std::vector<OntVector>& points,
                                const std::vector<std::string>& dims) {
    if (points.empty()) {
        throw Error(ErrorCode::EmptyPointList, "a region needs at least one generator");
    }
    SchemaPtr sub = points[0].schema()->induced(dims);
    for (const auto& d : sub->dims()) {
        if (!d.is_numeric()) {
            throw Error(ErrorCode::NonNumericDimension,
                        "region dimension '" + d.name + "' is not numeric");
        }
    }
    // Keep dims in parent basis order, matching the induced schema.
    std::vector<std::string> ordered;
    ordered.reserve(sub->size());
    for (const auto& d : sub->dims()) ordered.push_back(d.name);

    ConvexRegion region;
    region.schema = sub;
    region.dims = std::move(ordered);
    region.generators.reserve(points.size());
    for (const auto& p : points) {
        region.generators.push_back(project_numeric(p, region.dims));
    }
    return region;
}

bool contains_coords(const ConvexRegion& region, const std::vector<double>& point, double tol) {
    if (point.size() != region.dims.size()) {
        throw Error(ErrorCode::DimensionMismatch, "point arity does not match region dims");
    }
    const std::size_t d = point.size();
    const std::size_t g = region.generators.size();
    // Sum_k lambda_k * gen_k = point,  Sum_k lambda_k = 1,  lambda >= 0.
    std::vector<std::vector<double>> a(d + 1, std::vector<double>(g, 0.0));
    std::vector<double> b(d + 1, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < g; ++k) a[i][k] = region.generators[k][i];
        b[i] = point[i];
    }
    for (std::size_t k = 0; k < g; ++k) a[d][k] = 1.0;
    b[d] = 1.0;
    return lp_feasible(std::move(a), std::move(b), tol);
}

bool contains_point(const ConvexRegion& region, const OntVector& v, double tol) {
    for (const auto& name : region.dims) {
        if (!v.schema()->has_dim(name)) {
            throw Error(ErrorCode::SchemaMismatch,
                        "vector's schema lacks region dimension '" + name + "'");
        }
    }
    return contains_coords(region, project_numeric(v, region.dims), tol);
}

bool part_of(const ConvexRegion& part, const ConvexRegion& whole, double tol) {
    require_same_dims(part, whole);
    for (const auto& gen : part.generators) {
        if (!contains_coords(whole, gen, tol)) return false;
    }
    return true;
}

bool overlap(const ConvexRegion& a, const ConvexRegion& b, double tol) {
    require_same_dims(a, b);
    const std::size_t d = a.dims.size();
    const std::size_t ga = a.generators.size();
    const std::size_t gb = b.generators.size();
    // Sum lambda_k gen_a_k - Sum mu_j gen_b_j = 0,  Sum lambda = 1,  Sum mu = 1.
    std::vector<std::vector<double>> mat(d + 2, std::vector<double>(ga + gb, 0.0));
    std::vector<double> rhs(d + 2, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < ga; ++k) mat[i][k] = a.generators[k][i];
        for (std::size_t j = 0; j < gb; ++j) mat[i][ga + j] = -b.generators[j][i];
    }
    for (std::size_t k = 0; k < ga; ++k) mat[d][k] = 1.0;
    rhs[d] = 1.0;
    for (std::size_t j = 0; j < gb; ++j) mat[d + 1][ga + j] = 1.0;
    rhs[d + 1] = 1.0;
    return lp_feasible(std::move(mat), std::move(rhs), tol);
}

double centrality(const ConvexRegion& part, const ConvexRegion& whole, double r,
                  bool* not_contained) {
    require_same_dims(part, whole);
    validate_order(r);
    if (not_contained) *not_contained = !part_of(part, whole);
    return minkowski_raw(centroid(part.generators), centroid(whole.generators), r);
}

bool is_convex_in(const ExistenceSet& set, const std::vector<OntVector>& subset,
                  const std::vector<std::string>& dims, double tol) {
    std::vector<bool> in_subset(set.size(), false);
    for (const auto& s : subset) {
        std::size_t idx = set.find(s);
        if (idx == ExistenceSet::npos) {
            throw Error(ErrorCode::NotAMember, "subset element is not a member of the set");
        }
        in_subset[idx] = true;
    }
    ConvexRegion hull = region_from_points(subset, dims);
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (in_subset[i]) continue;
        if (contains_point(hull, set.members()[i], tol)) return false;
    }
    return true;
}

ConvexRegion region_from_json(const std::string& text, const SchemaPtr& schema) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("region JSON: ") + e.what());
    }
    if (!doc.contains("dims") || !doc.contains("generators")) {
        throw Error(ErrorCode::ParseError, "region JSON needs 'dims' and 'generators'");
    }
    std::vector<std::string> dims = doc["dims"].get<std::vector<std::string>>();
    SchemaPtr sub = schema->induced(dims);
    for (const auto& d : sub->dims()) {
        if (!d.is_numeric()) {
            throw Error(ErrorCode::NonNumericDimension,
                        "region dimension '" + d.name + "' is not numeric");
        }
    }
    ConvexRegion region;
    region.schema = sub;
    for (const auto& d : sub->dims()) region.dims.push_back(d.name);
    for (const auto& row : doc["generators"]) {
        std::vector<double> gen = row.get<std::vector<double>>();
        if (gen.size() != region.dims.size()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "generator arity does not match region dims");
        }
        region.generators.push_back(std::move(gen));
    }
    if (region.generators.empty()) {
        throw Error(ErrorCode::EmptyPointList, "a region needs at least one generator");
    }
    return region;
}

std::string region_to_json(const ConvexRegion& region) {
    nlohmann::ordered_json doc;
    doc["dims"] = region.dims;
    doc["generators"] = region.generators;
    return doc.dump();
}

} // namespace vectont
