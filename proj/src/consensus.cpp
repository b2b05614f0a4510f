#include "sca/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sca/errors.hpp"
#include "sca/kernels.hpp"

namespace sca {

std::string to_string(ConsensusKind kind) {
    switch (kind) {
        case ConsensusKind::ensemble_sum: return "ensemble-sum";
        case ConsensusKind::knn: return "knn";
        case ConsensusKind::combined: return "combined";
    }
    return "?";
}

std::string to_string(KnnMetric metric) {
    return metric == KnnMetric::euclidean ? "euclidean" : "cosine";
}

std::string to_string(KnnMode mode) {
    switch (mode) {
        case KnnMode::intersection: return "intersection";
        case KnnMode::union_size: return "union";
        case KnnMode::mutual: return "mutual";
    }
    return "?";
}

SymMatrix adjacency(const ClusteringResult& clustering) {
    const std::size_t n = clustering.size();
    SymMatrix A(n);
    for (std::size_t i = 0; i < n; ++i) {
        A.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < n; ++j)
            if (clustering.labels[i] == clustering.labels[j]) A.set(i, j, 1.0);
    }
    return A;
}

ConsensusMatrix consensus_sum(const std::vector<ClusteringResult>& ensemble) {
    if (ensemble.empty()) throw DomainError("ensemble must be nonempty");
    const std::size_t n = ensemble.front().size();
    for (const auto& member : ensemble)
        if (member.size() != n) throw DomainError("ensemble members have mixed sizes");

    ConsensusMatrix out;
    out.S = SymMatrix(n);
    out.kind = ConsensusKind::ensemble_sum;
    out.r = static_cast<int>(ensemble.size());
    for (const auto& member : ensemble) {
        for (std::size_t i = 0; i < n; ++i) {
            out.S.set(i, i, out.S(i, i) + 1.0);
            for (std::size_t j = i + 1; j < n; ++j)
                if (member.labels[i] == member.labels[j]) out.S.set(i, j, out.S(i, j) + 1.0);
        }
    }
    return out;
}

ConsensusMatrix combine(const ConsensusMatrix& a, const ConsensusMatrix& b) {
    if (a.order() != b.order()) throw DomainError("consensus orders differ");
    ConsensusMatrix out;
    out.S = a.S;
    auto dst = out.S.mutable_data();
    auto src = b.S.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    out.r = a.r + b.r;
    out.kind = ConsensusKind::combined;
    return out;
}

namespace {

std::vector<std::vector<std::size_t>> neighbor_sets(const DataMatrix& A, int kappa,
                                                    KnnMetric metric) {
    const std::size_t n = A.elements();
    const auto& kern = kernels::active();
    std::vector<double> norms(n, 0.0);
    if (metric == KnnMetric::cosine)
        for (std::size_t j = 0; j < n; ++j)
            norms[j] = std::sqrt(kern.dot(A.column(j).data(), A.column(j).data(), A.attributes()));

    std::vector<std::vector<std::size_t>> sets(n);
    std::vector<double> dist(n);
    std::vector<std::size_t> order(n);
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t j = 0; j < n; ++j) {
            if (metric == KnnMetric::euclidean) {
                dist[j] = kern.sq_dist(A.column(g).data(), A.column(j).data(), A.attributes());
            } else {
                const double denom = std::max(norms[g] * norms[j], 1e-300);
                dist[j] = 1.0 - kern.dot(A.column(g).data(), A.column(j).data(), A.attributes()) /
                                    denom;
            }
        }
        std::iota(order.begin(), order.end(), 0);
        // ties at the kappa-th neighbor resolve to the smallest index
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (dist[a] != dist[b]) return dist[a] < dist[b];
            return a < b;
        });
        auto& set = sets[g];
        set.reserve(kappa);
        for (std::size_t pos = 0; pos < n && set.size() < static_cast<std::size_t>(kappa); ++pos)
            if (order[pos] != g) set.push_back(order[pos]);
        std::sort(set.begin(), set.end());
    }
    return sets;
}

std::size_t intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t i = 0, j = 0, count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

}  // namespace

ConsensusMatrix knn_consensus(const DataMatrix& A, int kappa, KnnMetric metric, KnnMode mode) {
    const std::size_t n = A.elements();
    if (kappa < 1 || static_cast<std::size_t>(kappa) >= n)
        throw DomainError("kappa must satisfy 1 <= kappa < n");

    const auto sets = neighbor_sets(A, kappa, metric);
    ConsensusMatrix out;
    out.S = SymMatrix(n);
    out.kind = ConsensusKind::knn;
    out.r = kappa;
    out.kappa = kappa;
    out.metric = metric;
    out.mode = mode;

    for (std::size_t i = 0; i < n; ++i) {
        out.S.set(i, i, static_cast<double>(kappa));
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t inter = intersection_size(sets[i], sets[j]);
            double v = 0.0;
            switch (mode) {
                case KnnMode::intersection: v = static_cast<double>(inter); break;
                case KnnMode::union_size: v = static_cast<double>(2 * kappa - inter); break;
                case KnnMode::mutual: {
                    const bool mutual =
                        std::binary_search(sets[i].begin(), sets[i].end(), j) &&
                        std::binary_search(sets[j].begin(), sets[j].end(), i);
                    v = mutual ? static_cast<double>(inter) : 0.0;
                    break;
                }
            }
            out.S.set(i, j, v);
        }
    }
    return out;
}

std::vector<std::size_t> isolated_indices(const SymMatrix& S) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < S.order(); ++i) {
        bool isolated = true;
        for (std::size_t j = 0; j < S.order() && isolated; ++j)
            if (j != i && S(i, j) != 0.0) isolated = false;
        if (isolated) out.push_back(i);
    }
    return out;
}

}  // namespace sca
