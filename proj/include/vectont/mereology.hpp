#ifndef VECTONT_MEREOLOGY_HPP
#define VECTONT_MEREOLOGY_HPP

#include <string>
#include <vector>

#include "vectont/existence.hpp"
#include "vectont/schema.hpp"

namespace vectont {

// Feasibility tolerance for the convex-combination solves below.
inline constexpr double kHullTolerance = 1e-7;

// A convex region in V-representation: the hull of projected generator
// points over a numeric dimension subset.
struct ConvexRegion {
    SchemaPtr schema;                          // induced sub-schema
    std::vector<std::string> dims;             // in parent basis order
    std::vector<std::vector<double>> generators;
};

// Hull of the projections of `points` onto `dims`.
ConvexRegion region_from_points(const std::vector<OntVector>& points,
                                const std::vector<std::string>& dims);

// True iff v's projection lies in the hull, decided by feasibility of a
// convex-combination system solved to kHullTolerance.
bool contains_point(const ConvexRegion& region, const OntVector& v,
                    double tol = kHullTolerance);
bool contains_coords(const ConvexRegion& region, const std::vector<double>& point,
                     double tol = kHullTolerance);

// Every generator of part lies in whole's hull. Equals hull containment
// for convex sets.
bool part_of(const ConvexRegion& part, const ConvexRegion& whole,
             double tol = kHullTolerance);

// Hulls share at least one point.
bool overlap(const ConvexRegion& a, const ConvexRegion& b, double tol = kHullTolerance);

// Minkowski-r distance between generator centroids; zero means the part
// sits on the whole's center. When part_of does not hold the distance is
// still returned and *not_contained (if given) is set.
double centrality(const ConvexRegion& part, const ConvexRegion& whole, double r,
                  bool* not_contained = nullptr);

// Dataset-relative convexity: no member of `set` outside `subset` projects
// into the hull of subset's projections.
bool is_convex_in(const ExistenceSet& set, const std::vector<OntVector>& subset,
                  const std::vector<std::string>& dims, double tol = kHullTolerance);

// Region literal JSON: {"dims": [names], "generators": [[coords],...]}.
ConvexRegion region_from_json(const std::string& text, const SchemaPtr& schema);
std::string region_to_json(const ConvexRegion& region);

} // namespace vectont

#endif
