#pragma once

#include <string>
#include <vector>

#include "sca/ensemble.hpp"
#include "sca/matrix.hpp"

namespace sca {

enum class ConsensusKind { ensemble_sum, knn, combined };
enum class KnnMetric { euclidean, cosine };

/// Neighbor-set combination rule.
///   intersection: |N_i & N_j|
///   union_size:   |N_i | N_j|  (decreases with overlap; kept for reference)
///   mutual:       |N_i & N_j| when i,j are mutually kappa-nearest, else 0
enum class KnnMode { intersection, union_size, mutual };

std::string to_string(ConsensusKind kind);
std::string to_string(KnnMetric metric);
std::string to_string(KnnMode mode);

/// Symmetric nonnegative co-clustering count matrix.
struct ConsensusMatrix {
    SymMatrix S;
    int r = 0;  // ensemble size; kappa for knn kind
    ConsensusKind kind = ConsensusKind::ensemble_sum;
    // knn provenance (meaningful when kind == knn)
    int kappa = 0;
    KnnMetric metric = KnnMetric::euclidean;
    KnnMode mode = KnnMode::intersection;

    std::size_t order() const { return S.order(); }
};

/// 0/1 co-membership matrix of one clustering; diagonal is 1.
SymMatrix adjacency(const ClusteringResult& clustering);

/// Entrywise sum of member adjacencies; diagonal equals the ensemble size.
ConsensusMatrix consensus_sum(const std::vector<ClusteringResult>& ensemble);

/// Entrywise sum of two consensus matrices of equal order.
ConsensusMatrix combine(const ConsensusMatrix& a, const ConsensusMatrix& b);

/// Single-measure consensus from kappa-nearest-neighbor sets (self
/// excluded; distance ties at the kappa-th neighbor keep the smallest
/// index). Diagonal is fixed at kappa.
ConsensusMatrix knn_consensus(const DataMatrix& A, int kappa,
                              KnnMetric metric = KnnMetric::euclidean,
                              KnnMode mode = KnnMode::intersection);

/// Indices whose off-diagonal row is entirely zero; nonempty means the
/// matrix cannot be balanced and should be surfaced to the user.
std::vector<std::size_t> isolated_indices(const SymMatrix& S);

}  // namespace sca
