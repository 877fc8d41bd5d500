#ifndef VECTONT_EXISTENCE_HPP
#define VECTONT_EXISTENCE_HPP

#include <string>
#include <vector>

#include "vectont/schema.hpp"

namespace vectont {

// Sparse finite population of a schema's space. Snapshots are immutable:
// insert returns a new logical version.
class ExistenceSet {
public:
    explicit ExistenceSet(SchemaPtr schema, double tol = kDefaultTolerance);

    const SchemaPtr& schema() const { return schema_; }
    const std::vector<OntVector>& members() const { return members_; }
    const std::vector<std::string>& provenance() const { return provenance_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    double tolerance() const { return tol_; }

    // Duplicate handling is report-and-keep-first, never an error.
    struct InsertResult;
    InsertResult insert(const OntVector& v, const std::string& source = "") const;

    // True iff some member equals v under coordinate tolerance.
    bool exists(const OntVector& v) const;

    // Index of the tolerance-equal member, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find(const OntVector& v) const;

private:
    SchemaPtr schema_;
    std::vector<OntVector> members_;
    std::vector<std::string> provenance_;
    double tol_;
};

struct ExistenceSet::InsertResult {
    ExistenceSet set;
    bool duplicate; // true when a tolerance-equal member was already present
};

// Possible existence: coords validate against the schema (kinds, bounds,
// categorical membership); actual existence is not required. Never throws;
// the reason code for a false verdict lands in `reason` when non-null.
bool possible(const DomainSchema& schema, const std::vector<Value>& coords,
              std::string* reason = nullptr);

// Flat-file persistence. Format chosen by extension: ".csv" or ".jsonl".
// CSV carries a header row of dimension names in schema order; JSONL has
// one object per vector keyed by dimension name.
ExistenceSet load_dataset(const std::string& path, const SchemaPtr& schema,
                          double tol = kDefaultTolerance);
void save_dataset(const ExistenceSet& set, const std::string& path);

// Parse one comma-separated coordinate list against a schema.
std::vector<Value> parse_coords_csv(const DomainSchema& schema, const std::string& line);

} // namespace vectont

#endif
