#include "vectont/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vectont {

void validate_order(double r) {
    if (std::isnan(r) || r < 1.0) {
        throw Error(ErrorCode::InvalidOrder,
                    "Minkowski order must satisfy r >= 1 (got " + std::to_string(r) + ")");
    }
}

namespace {

void validate_weights(const std::vector<double>* weights, std::size_t n) {
    if (!weights) return;
    if (weights->size() != n) {
        throw Error(ErrorCode::ArityMismatch, "weight count does not match dimension count");
    }
    for (double w : *weights) {
        if (!(w > 0.0)) {
            throw Error(ErrorCode::ValidationFailure, "weights must be positive");
        }
    }
}

double aggregate(const std::vector<double>& diffs, double r, const std::vector<double>* weights) {
    if (std::isinf(r)) {
        // Limit of the weighted r-norm: weights wash out.
        double best = 0.0;
        for (double d : diffs) best = std::max(best, d);
        return best;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        double w = weights ? (*weights)[i] : 1.0;
        sum += w * std::pow(diffs[i], r);
    }
    return std::pow(sum, 1.0 / r);
}

} // namespace

double minkowski_raw(const std::vector<double>& u, const std::vector<double>& v, double r,
                     const std::vector<double>* weights) {
    validate_order(r);
    if (u.size() != v.size()) {
        throw Error(ErrorCode::ArityMismatch, "coordinate arrays of different length");
    }
    validate_weights(weights, u.size());
    std::vector<double> diffs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) diffs[i] = std::fabs(u[i] - v[i]);
    return aggregate(diffs, r, weights);
}

double minkowski(const OntVector& u, const OntVector& v, double r,
                 const std::vector<double>* weights) {
    validate_order(r);
    require_same_schema(u, v);
    validate_weights(weights, u.size());
    std::vector<double> diffs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.schema()->dim(i).is_numeric()) {
            diffs[i] = std::fabs(u.numeric(i) - v.numeric(i));
        } else {
            diffs[i] = u.coord(i) == v.coord(i) ? 0.0 : 1.0;
        }
    }
    return aggregate(diffs, r, weights);
}

ReconstructionPath reconstruction_path(const OntVector& origin, const OntVector& target,
                                       double tol) {
    require_same_schema(origin, target);
    std::vector<Move> moves;
    for (std::size_t i = 0; i < origin.size(); ++i) {
        if (value_eq(origin.coord(i), target.coord(i), tol)) continue;
        Move m;
        m.dim = origin.schema()->dim(i).name;
        if (origin.schema()->dim(i).is_numeric()) {
            m.coefficient = target.numeric(i) - origin.numeric(i);
            m.destination = target.coord(i);
        } else {
            m.substitution = true;
            m.target = target.coord(i);
        }
        moves.push_back(std::move(m));
    }
    return ReconstructionPath{origin, std::move(moves), target};
}

std::size_t reconstruction_distance(const OntVector& origin, const OntVector& target,
                                    double tol) {
    return reconstruction_path(origin, target, tol).moves.size();
}

double reconstruction_effort(const OntVector& origin, const OntVector& target, double tol) {
    double effort = 0.0;
    for (const Move& m : reconstruction_path(origin, target, tol).moves) {
        effort += m.substitution ? 1.0 : std::fabs(m.coefficient);
    }
    return effort;
}

OntVector apply_moves(const OntVector& origin, const std::vector<Move>& moves) {
    std::vector<Value> coords = origin.coords();
    const auto& schema = origin.schema();
    for (const Move& m : moves) {
        std::size_t i = schema->index_of(m.dim);
        const Dimension& d = schema->dim(i);
        if (m.substitution) {
            if (d.is_numeric()) {
                throw Error(ErrorCode::KindMismatch,
                            "substitution move on numeric dimension '" + d.name + "'");
            }
            if (d.kind == QualeKind::Categorical) {
                const auto* label = std::get_if<std::string>(&m.target);
                if (!label ||
                    std::find(d.values.begin(), d.values.end(), *label) == d.values.end()) {
                    throw Error(ErrorCode::ValidationFailure,
                                "substitution target is not a value of '" + d.name + "'");
                }
            }
            coords[i] = m.target;
        } else {
            if (!d.is_numeric()) {
                throw Error(ErrorCode::NonArithmeticDimension,
                            "scaled move on non-numeric dimension '" + d.name + "'");
            }
            if (d.kind == QualeKind::Integer) {
                if (m.coefficient != std::floor(m.coefficient)) {
                    throw Error(ErrorCode::NonIntegralScalarOnIntegerDimension,
                                "non-integral move on integer dimension '" + d.name + "'");
                }
                coords[i] = std::get<std::int64_t>(coords[i]) +
                            static_cast<std::int64_t>(m.coefficient);
            } else {
                coords[i] = std::get<double>(coords[i]) + m.coefficient;
            }
            // path moves remember where they came from, so replay is exact
            if (m.destination) coords[i] = *m.destination;
        }
    }
    // Arithmetic may leave declared bounds; the virtual point is not an
    // existence assertion, so no bounds check here.
    return OntVector(schema, std::move(coords));
}

OntVector navigate(const ExistenceSet& set, const OntVector& origin,
                   const std::vector<Move>& moves) {
    if (set.empty()) {
        throw Error(ErrorCode::EmptyExistenceSet, "cannot navigate an empty existence set");
    }
    OntVector virtual_target = apply_moves(origin, moves);
    const OntVector* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& m : set.members()) {
        double d = minkowski(m, virtual_target, 2.0);
        if (d < best_dist || (d == best_dist && best && vector_less(m, *best))) {
            best = &m;
            best_dist = d;
        }
    }
    return *best;
}

std::vector<OntVector> nearest(const ExistenceSet& set, const OntVector& v, double r,
                               std::size_t k, const std::vector<double>* weights) {
    if (set.empty()) {
        throw Error(ErrorCode::EmptyExistenceSet, "cannot query an empty existence set");
    }
    if (k == 0) {
        throw Error(ErrorCode::ValidationFailure, "k must be at least 1");
    }
    std::vector<std::pair<double, const OntVector*>> ranked;
    ranked.reserve(set.size());
    for (const auto& m : set.members()) {
        ranked.emplace_back(minkowski(m, v, r, weights), &m);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return vector_less(*a.second, *b.second);
    });
    std::vector<OntVector> out;
    out.reserve(std::min(k, ranked.size()));
    for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(*ranked[i].second);
    return out;
}

} // namespace vectont
