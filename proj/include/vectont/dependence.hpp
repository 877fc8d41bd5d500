#ifndef VECTONT_DEPENDENCE_HPP
#define VECTONT_DEPENDENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "vectont/existence.hpp"
#include "vectont/schema.hpp"

namespace vectont {

struct Dependency {
    std::size_t target;                  // index of the dependent vector
    std::vector<std::size_t> basis;      // indices of the spanning predecessors
    std::vector<double> coefficients;    // aligned with `basis`
    double residual;
};

struct DependenceReport {
    std::size_t rank = 0;
    std::vector<Dependency> dependent;
    double tolerance_used = 0.0;
};

// Rank by elimination with pivot threshold tol * (max absolute entry); each
// vector in the span of its predecessors is reported with coefficients and
// residual.
DependenceReport detect_linear_dependence(const std::vector<OntVector>& vectors,
                                          double tol = kDefaultTolerance);

struct CombinationResult {
    bool in_span;
    std::vector<double> coefficients; // least-squares, aligned with candidates
    double residual;
};

// Least-squares expression of target over candidates; in_span iff the
// residual norm is within tol * max(1, |target|).
CombinationResult express_as_combination(const OntVector& target,
                                         const std::vector<OntVector>& candidates,
                                         double tol = kDefaultTolerance);

// Histogram-based probability of existence over a schema's space.
class ProbabilisticFOE {
public:
    struct DimPartition {
        std::string name;
        QualeKind kind;
        std::vector<double> edges;        // numeric dims: bin edges, size bins+1
        std::vector<std::string> labels;  // categorical dims: one cell per label
        std::size_t cells() const;
    };

    static ProbabilisticFOE estimate(const ExistenceSet& set, std::size_t bins_per_dim,
                                     double smoothing);

    // Probability of v's cell; out-of-range numeric coordinates clamp to the
    // nearest edge cell and set *clamped when given.
    double probability_of(const OntVector& v, bool* clamped = nullptr) const;

    std::size_t cell_count() const { return cells_; }
    double smoothing() const { return smoothing_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    const std::vector<DimPartition>& partitions() const { return partitions_; }

    // JSON serialization; reload reproduces probability_of bit-for-bit.
    std::string to_json() const;
    static ProbabilisticFOE from_json(const std::string& text);
    static ProbabilisticFOE load(const std::string& path);
    void save(const std::string& path) const;

private:
    ProbabilisticFOE() = default;
    std::size_t cell_index(const OntVector& v, bool* clamped) const;

    std::string schema_name_;
    std::vector<DimPartition> partitions_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::size_t cells_ = 0;
    double smoothing_ = 0.0;
};

} // namespace vectont

#endif
