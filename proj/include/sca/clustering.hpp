#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sca/balance.hpp"
#include "sca/ensemble.hpp"
#include "sca/matrix.hpp"

namespace sca {

struct SCAConfig {
    std::optional<int> k_override;
    int stability_count = 6;
    int max_iter = 1000;
    /// Reject an initial vector closer than this to uniform;
    /// <0 means the scale-aware default 1e-3/sqrt(n).
    double ipv_uniform_tol = -1.0;
    std::uint64_t seed = 0;
    /// Bypass random generation entirely (testing / replays).
    std::optional<ProbVector> x0_override;
    bool record_trace = true;
};

enum class StopReason { stabilized, max_iter };

struct IterationSnapshot {
    int t = 0;
    std::vector<double> x;
    std::vector<int> labels;
};

struct SCAResult {
    ClusteringResult clusters;
    int k_used = 0;
    int iterations_run = 0;
    StopReason stop_reason = StopReason::max_iter;
    std::vector<IterationSnapshot> trace;
};

/// Power-iteration state: current vector, step index and the ring of the
/// most recent clusterings consulted by the stability stop.
struct EvolutionState {
    ProbVector x;
    int t = 0;
    std::vector<std::vector<int>> history;
};

/// i.i.d. uniform entries normalized to sum 1, redrawn while closer than
/// uniform_tol (2-norm) to the uniform vector. Throws ExhaustionError
/// after 100 consecutive rejections.
ProbVector random_ipv(std::size_t n, std::uint64_t seed, double uniform_tol);

/// Sort the entries descending and cut at the k-1 largest consecutive
/// gaps (ties keep the leftmost position). Contiguous runs become
/// clusters labeled 1..k in descending-value order. Throws
/// DegeneratePartitionError when fewer than k distinct values exist.
ClusteringResult gap_partition(const ProbVector& x, int k);

/// Track x_t = x_{t-1}^T P, clustering each iterate, until the clustering
/// is identical for stability_count consecutive iterations (the t = 0
/// clustering counts) or max_iter is reached. k comes from k_override or
/// the Perron cluster of P's spectrum.
SCAResult run_sca(const BalancedMatrix& B, const SCAConfig& cfg);

struct CCAOptions {
    std::size_t target = 0;  // element index, 0-based
    std::size_t min_size = 1;
    std::size_t max_size = 0;
    int max_iter = 1000;
    std::optional<int> closest_m;
    std::optional<int> k_override;
};

struct CCAResult {
    std::vector<std::size_t> members;  // excludes the target for closest_m
    int t_found = 0;
    int k_used = 0;
};

/// Indicator-seeded run: after each step, if the target's cluster size
/// lands in [min_size, max_size], return that cluster — or, when
/// closest_m is set, the m indices whose entries are nearest the
/// target's. Throws ExhaustionError when max_iter passes without a
/// qualifying cluster.
CCAResult run_cca(const BalancedMatrix& B, const CCAOptions& opts);

}  // namespace sca
