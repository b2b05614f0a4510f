#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sca/matrix.hpp"

namespace sca {

/// m attributes x n elements; column j is element j. Stored column-major
/// so an element's attribute vector is contiguous.
class DataMatrix {
public:
    DataMatrix() = default;
    DataMatrix(std::size_t m, std::size_t n);
    static DataMatrix from_columns(std::size_t m, std::size_t n, std::vector<double> col_major);

    std::size_t attributes() const { return m_; }
    std::size_t elements() const { return n_; }

    double operator()(std::size_t attr, std::size_t elem) const { return data_[elem * m_ + attr]; }
    void set(std::size_t attr, std::size_t elem, double v) { data_[elem * m_ + attr] = v; }

    std::span<const double> column(std::size_t elem) const { return {data_.data() + elem * m_, m_}; }
    std::span<double> mutable_column(std::size_t elem) { return {data_.data() + elem * m_, m_}; }

    bool all_nonnegative() const;

private:
    std::size_t m_ = 0, n_ = 0;
    std::vector<double> data_;  // column-major
};

/// Label assignment from one ensemble member. Labels are 1..k.
struct ClusteringResult {
    std::vector<int> labels;
    int k = 0;
    std::string method;
    int k_requested = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    std::size_t size() const { return labels.size(); }
};

struct NmfFactors {
    std::vector<double> W;  // row-major m x k
    std::vector<double> H;  // row-major k x n
    std::size_t m = 0, n = 0, k = 0;
    double residual = 0.0;                  // final ||A - WH||_F
    std::vector<double> residual_history;   // one entry per recorded iteration
    int iterations = 0;
};

/// Lloyd iterations with probabilistic farthest-point (k-means++ style)
/// seeding. Deterministic for a fixed seed. An empty cluster is reseeded
/// to the point farthest from its assigned centroid. Degenerate data
/// (all columns identical) collapses to a single cluster with a warning.
ClusteringResult kmeans(const DataMatrix& A, int k, std::uint64_t seed, int max_iter = 100);

/// Multiplicative-update factorization A ~ WH with epsilon-guarded
/// denominators. The Frobenius residual is nonincreasing per iteration;
/// stops when its relative change drops below tol or at max_iter.
NmfFactors nmf_mu(const DataMatrix& A, int k, std::uint64_t seed, int max_iter = 500,
                  double tol = 1e-6);

/// Element j takes the row index maximizing H[:,j] (lowest row on ties).
ClusteringResult assign_from_nmf(const NmfFactors& factors);

/// Minimum mislabel count over all bijective relabelings (exhaustive;
/// requires max(k) <= 12).
int clustering_errors(const ClusteringResult& clustering, const ClusteringResult& truth);

/// Within-cluster sum of squared distances; the kmeans objective.
double wcss(const DataMatrix& A, const ClusteringResult& clustering);

}  // namespace sca
