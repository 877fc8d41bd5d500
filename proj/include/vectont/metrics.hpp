#ifndef VECTONT_METRICS_HPP
#define VECTONT_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "vectont/existence.hpp"
#include "vectont/schema.hpp"

namespace vectont {

// Minkowski order; r = infinity selects the max-coordinate metric.
// Orders below 1 are rejected (not a metric).
void validate_order(double r);

// Raw Minkowski-r distance over aligned numeric coordinate arrays.
// Weights, when given, must be positive and are ignored for r = infinity.
double minkowski_raw(const std::vector<double>& u, const std::vector<double>& v, double r,
                     const std::vector<double>* weights = nullptr);

// Minkowski-r distance between two vectors of the same schema. Categorical
// and boolean dimensions contribute a 0/1 indicator.
double minkowski(const OntVector& u, const OntVector& v, double r,
                 const std::vector<double>* weights = nullptr);

// One single-dimension step of a reconstruction path: a scaled basis move
// for numeric dimensions, a value substitution for categorical/boolean ones.
struct Move {
    std::string dim;
    bool substitution = false;
    double coefficient = 0.0;          // numeric move, nonzero
    Value target;                      // substitution move
    std::optional<Value> destination;  // set on path moves so replay is exact
};

struct ReconstructionPath {
    OntVector origin;
    std::vector<Move> moves; // at most one per dimension, schema order
    OntVector target;
};

// Minimal path from origin to target: one move per dimension differing
// beyond tolerance.
ReconstructionPath reconstruction_path(const OntVector& origin, const OntVector& target,
                                       double tol = kDefaultTolerance);

// Count of moves in the minimal path; a Hamming-type metric in [0, n].
std::size_t reconstruction_distance(const OntVector& origin, const OntVector& target,
                                    double tol = kDefaultTolerance);

// Optional companion measure: sum of |coefficient| over numeric moves plus 1
// per substitution. Not the default distance.
double reconstruction_effort(const OntVector& origin, const OntVector& target,
                             double tol = kDefaultTolerance);

// Applies moves to origin; numeric moves add, substitutions replace.
OntVector apply_moves(const OntVector& origin, const std::vector<Move>& moves);

// Existing member closest (Minkowski-2) to origin + moves; ties break by
// lexicographic coordinate order.
OntVector navigate(const ExistenceSet& set, const OntVector& origin,
                   const std::vector<Move>& moves);

// k members by ascending Minkowski-r distance, lexicographic tie-break;
// returns fewer when the set is smaller than k.
std::vector<OntVector> nearest(const ExistenceSet& set, const OntVector& v, double r,
                               std::size_t k,
                               const std::vector<double>* weights = nullptr);

} // namespace vectont

#endif
