#include "vectont/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vectont {

namespace {

std::vector<double> to_raw(const OntVector& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v.schema()->dim(i).is_numeric()) {
            throw Error(ErrorCode::NonNumericDimension,
                        "dimension '" + v.schema()->dim(i).name + "' is not numeric");
        }
        out[i] = v.numeric(i);
    }
    return out;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Least squares min |B c - y| over columns B via normal equations with full
// pivoting; B is given as a list of column vectors. Sizes here are tiny.
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols,
                                  const std::vector<double>& y) {
    const std::size_t k = cols.size();
    std::vector<std::vector<double>> g(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < y.size(); ++t) s += cols[i][t] * cols[j][t];
            g[i][j] = s;
        }
        double s = 0.0;
        for (std::size_t t = 0; t < y.size(); ++t) s += cols[i][t] * y[t];
        g[i][k] = s;
    }
    // Gaussian elimination with partial pivoting; singular pivots give a
    // minimum-norm-ish solution by zeroing the free coefficient.
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::fabs(g[r][col]) > std::fabs(g[pivot][col])) pivot = r;
        }
        std::swap(g[col], g[pivot]);
        if (std::fabs(g[col][col]) < 1e-300) continue;
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = g[r][col] / g[col][col];
            for (std::size_t c = col; c <= k; ++c) g[r][c] -= f * g[col][c];
        }
    }
    std::vector<double> c(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        c[i] = std::fabs(g[i][i]) < 1e-300 ? 0.0 : g[i][k] / g[i][i];
    }
    return c;
}

double residual_norm(const std::vector<std::vector<double>>& cols,
                     const std::vector<double>& c, const std::vector<double>& y) {
    std::vector<double> r = y;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        for (std::size_t t = 0; t < y.size(); ++t) r[t] -= c[i] * cols[i][t];
    }
    return norm2(r);
}

} // namespace

DependenceReport detect_linear_dependence(const std::vector<OntVector>& vectors, double tol) {
    if (vectors.size() < 2) {
        throw Error(ErrorCode::TooFewVectors, "need at least two vectors");
    }
    std::vector<std::vector<double>> raw;
    raw.reserve(vectors.size());
    double max_entry = 0.0;
    for (const auto& v : vectors) {
        raw.push_back(to_raw(v));
        for (double x : raw.back()) max_entry = std::max(max_entry, std::fabs(x));
    }
    const double threshold = tol * std::max(1.0, max_entry);

    DependenceReport report;
    report.tolerance_used = threshold;

    // Orthogonal residual test against the accepted independent set, with
    // coefficients recovered over the original predecessors.
    std::vector<std::vector<double>> ortho;      // orthonormalized independents
    std::vector<std::size_t> independent_idx;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        std::vector<double> r = raw[i];
        for (const auto& q : ortho) {
            double dot = 0.0;
            for (std::size_t t = 0; t < r.size(); ++t) dot += q[t] * r[t];
            for (std::size_t t = 0; t < r.size(); ++t) r[t] -= dot * q[t];
        }
        double rnorm = norm2(r);
        if (rnorm > threshold) {
            for (double& x : r) x /= rnorm;
            ortho.push_back(std::move(r));
            independent_idx.push_back(i);
            continue;
        }
        // Dependent: express over the independent predecessors.
        std::vector<std::vector<double>> basis_cols;
        for (std::size_t idx : independent_idx) basis_cols.push_back(raw[idx]);
        Dependency dep;
        dep.target = i;
        dep.basis = independent_idx;
        dep.coefficients = least_squares(basis_cols, raw[i]);
        dep.residual = residual_norm(basis_cols, dep.coefficients, raw[i]);
        report.dependent.push_back(std::move(dep));
    }
    report.rank = independent_idx.size();
    return report;
}

CombinationResult express_as_combination(const OntVector& target,
                                         const std::vector<OntVector>& candidates,
                                         double tol) {
    if (candidates.empty()) {
        throw Error(ErrorCode::TooFewVectors, "need at least one candidate");
    }
    std::vector<double> y = to_raw(target);
    std::vector<std::vector<double>> cols;
    cols.reserve(candidates.size());
    for (const auto& c : candidates) cols.push_back(to_raw(c));

    CombinationResult result;
    result.coefficients = least_squares(cols, y);
    result.residual = residual_norm(cols, result.coefficients, y);
    result.in_span = result.residual <= tol * std::max(1.0, norm2(y));
    return result;
}

std::size_t ProbabilisticFOE::DimPartition::cells() const {
    if (kind == QualeKind::Categorical) return labels.size();
    if (kind == QualeKind::Boolean) return 2;
    return edges.size() - 1;
}

ProbabilisticFOE ProbabilisticFOE::estimate(const ExistenceSet& set, std::size_t bins_per_dim,
                                            double smoothing) {
    if (set.empty()) {
        throw Error(ErrorCode::EmptyExistenceSet, "cannot estimate from an empty set");
    }
    if (bins_per_dim < 1) {
        throw Error(ErrorCode::ValidationFailure, "bins_per_dim must be at least 1");
    }
    if (smoothing < 0.0) {
        throw Error(ErrorCode::ValidationFailure, "smoothing must be nonnegative");
    }
    const auto& schema = *set.schema();
    ProbabilisticFOE model;
    model.schema_name_ = schema.name();
    model.smoothing_ = smoothing;
    model.cells_ = 1;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const Dimension& d = schema.dim(i);
        DimPartition part;
        part.name = d.name;
        part.kind = d.kind;
        if (d.kind == QualeKind::Categorical) {
            part.labels = d.values;
        } else if (d.kind == QualeKind::Boolean) {
            // two implicit cells: false, true
        } else {
            double lo = set.members()[0].numeric(i);
            double hi = lo;
            for (const auto& m : set.members()) {
                lo = std::min(lo, m.numeric(i));
                hi = std::max(hi, m.numeric(i));
            }
            std::size_t bins = lo == hi ? 1 : bins_per_dim;
            part.edges.resize(bins + 1);
            for (std::size_t b = 0; b <= bins; ++b) {
                part.edges[b] = lo + (hi - lo) * static_cast<double>(b) /
                                         static_cast<double>(bins);
            }
            part.edges.back() = hi; // right-closed final bin
        }
        model.cells_ *= part.cells();
        model.partitions_.push_back(std::move(part));
    }
    model.counts_.assign(model.cells_, 0);
    for (const auto& m : set.members()) {
        model.counts_[model.cell_index(m, nullptr)] += 1;
    }
    model.total_ = set.size();
    return model;
}

std::size_t ProbabilisticFOE::cell_index(const OntVector& v, bool* clamped) const {
    if (v.size() != partitions_.size()) {
        throw Error(ErrorCode::SchemaMismatch, "vector arity does not match model");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        const DimPartition& p = partitions_[i];
        std::size_t cell = 0;
        if (p.kind == QualeKind::Categorical) {
            const auto& label = std::get<std::string>(v.coord(i));
            auto it = std::find(p.labels.begin(), p.labels.end(), label);
            if (it == p.labels.end()) {
                throw Error(ErrorCode::SchemaMismatch,
                            "label '" + label + "' unknown to model dimension '" + p.name + "'");
            }
            cell = static_cast<std::size_t>(it - p.labels.begin());
        } else if (p.kind == QualeKind::Boolean) {
            cell = std::get<bool>(v.coord(i)) ? 1 : 0;
        } else {
            double x = v.numeric(i);
            const std::size_t bins = p.edges.size() - 1;
            double lo = p.edges.front();
            double hi = p.edges.back();
            if (x < lo) {
                cell = 0;
                if (clamped) *clamped = true;
            } else if (x >= hi) {
                cell = bins - 1;
                if (clamped && x > hi) *clamped = true;
            } else {
                double width = (hi - lo) / static_cast<double>(bins);
                cell = static_cast<std::size_t>((x - lo) / width);
                if (cell >= bins) cell = bins - 1;
            }
        }
        idx = idx * p.cells() + cell;
    }
    return idx;
}

double ProbabilisticFOE::probability_of(const OntVector& v, bool* clamped) const {
    if (clamped) *clamped = false;
    std::size_t idx = cell_index(v, clamped);
    double denom = static_cast<double>(total_) + smoothing_ * static_cast<double>(cells_);
    return (static_cast<double>(counts_[idx]) + smoothing_) / denom;
}

std::string ProbabilisticFOE::to_json() const {
    nlohmann::ordered_json doc;
    doc["schema"] = schema_name_;
    doc["smoothing"] = smoothing_;
    doc["total"] = total_;
    doc["cells"] = cells_;
    doc["dims"] = nlohmann::ordered_json::array();
    for (const auto& p : partitions_) {
        nlohmann::ordered_json jp;
        jp["name"] = p.name;
        jp["kind"] = quale_kind_name(p.kind);
        if (p.kind == QualeKind::Categorical) {
            jp["labels"] = p.labels;
        } else if (p.kind != QualeKind::Boolean) {
            jp["edges"] = p.edges;
        }
        doc["dims"].push_back(jp);
    }
    doc["counts"] = counts_;
    // Derived, for human inspection; reload recomputes from counts.
    double denom = static_cast<double>(total_) + smoothing_ * static_cast<double>(cells_);
    nlohmann::ordered_json probs = nlohmann::ordered_json::array();
    for (auto c : counts_) probs.push_back((static_cast<double>(c) + smoothing_) / denom);
    doc["probabilities"] = probs;
    return doc.dump();
}

ProbabilisticFOE ProbabilisticFOE::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("model JSON: ") + e.what());
    }
    ProbabilisticFOE model;
    model.schema_name_ = doc.at("schema").get<std::string>();
    model.smoothing_ = doc.at("smoothing").get<double>();
    model.total_ = doc.at("total").get<std::uint64_t>();
    model.cells_ = doc.at("cells").get<std::size_t>();
    for (const auto& jp : doc.at("dims")) {
        DimPartition p;
        p.name = jp.at("name").get<std::string>();
        p.kind = quale_kind_from_name(jp.at("kind").get<std::string>());
        if (jp.contains("labels")) p.labels = jp["labels"].get<std::vector<std::string>>();
        if (jp.contains("edges")) p.edges = jp["edges"].get<std::vector<double>>();
        model.partitions_.push_back(std::move(p));
    }
    model.counts_ = doc.at("counts").get<std::vector<std::uint64_t>>();
    if (model.counts_.size() != model.cells_) {
        throw Error(ErrorCode::ParseError, "model JSON cell count mismatch");
    }
    return model;
}

ProbabilisticFOE ProbabilisticFOE::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open model file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return from_json(os.str());
}

void ProbabilisticFOE::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write model file: " + path);
    out << to_json() << "\n";
}

} // namespace vectont
