#include "sca/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sca/errors.hpp"
#include "sca/rng.hpp"
#include "sca/uncouple.hpp"

namespace sca {

ProbVector random_ipv(std::size_t n, std::uint64_t seed, double uniform_tol) {
    if (n < 2) throw DomainError("initial vector needs n >= 2");
    Rng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<double> v(n);
        for (double& x : v) x = rng.uniform01();
        ProbVector candidate = ProbVector::make(std::move(v));
        if (candidate.distance_to_uniform() >= uniform_tol) return candidate;
    }
    throw ExhaustionError("100 consecutive initial vectors fell inside the uniform tolerance");
}

ClusteringResult gap_partition(const ProbVector& x, int k) {
    const std::size_t n = x.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw DomainError("gap partition requires 1 <= k <= n");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] > x[b];
        return a < b;
    });

    std::size_t distinct = 1;
    for (std::size_t pos = 1; pos < n; ++pos)
        if (x[order[pos]] != x[order[pos - 1]]) ++distinct;
    if (static_cast<std::size_t>(k) > distinct) {
        double collision = x[order[0]];
        for (std::size_t pos = 1; pos < n; ++pos)
            if (x[order[pos]] == x[order[pos - 1]]) {
                collision = x[order[pos]];
                break;
            }
        throw DegeneratePartitionError(
            "only " + std::to_string(distinct) + " distinct values for k = " + std::to_string(k) +
                " (repeated value " + std::to_string(collision) + ")",
            collision);
    }

    // rank the n-1 consecutive gaps; ties keep the leftmost position
    std::vector<std::size_t> gap_order(n - 1);
    std::iota(gap_order.begin(), gap_order.end(), 0);
    std::sort(gap_order.begin(), gap_order.end(), [&](std::size_t a, std::size_t b) {
        const double ga = x[order[a]] - x[order[a + 1]];
        const double gb = x[order[b]] - x[order[b + 1]];
        if (ga != gb) return ga > gb;
        return a < b;
    });
    std::vector<std::size_t> cuts(gap_order.begin(), gap_order.begin() + (k - 1));
    std::sort(cuts.begin(), cuts.end());

    ClusteringResult result;
    result.method = "gap-partition";
    result.k_requested = k;
    result.k = k;
    result.labels.assign(n, 0);
    int label = 1;  // descending-value order: top band is cluster 1
    std::size_t next_cut = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        result.labels[order[pos]] = label;
        if (next_cut < cuts.size() && pos == cuts[next_cut]) {
            ++label;
            ++next_cut;
        }
    }
    return result;
}

namespace {

int detect_k(const BalancedMatrix& B) {
    Spectrum spec = sym_eigen(B.P, {.tol = 1e-12, .max_sweeps = 100, .want_vectors = false});
    return perron_cluster(spec).k;
}

double resolve_uniform_tol(double configured, std::size_t n) {
    return configured >= 0.0 ? configured : 1e-3 / std::sqrt(static_cast<double>(n));
}

}  // namespace

SCAResult run_sca(const BalancedMatrix& B, const SCAConfig& cfg) {
    const std::size_t n = B.P.order();
    if (cfg.stability_count < 1) throw DomainError("stability_count must be >= 1");
    if (cfg.max_iter < cfg.stability_count)
        throw DomainError("max_iter must be >= stability_count");

    const int k = cfg.k_override ? *cfg.k_override : detect_k(B);

    EvolutionState state;
    state.x = cfg.x0_override
                  ? *cfg.x0_override
                  : random_ipv(n, cfg.seed, resolve_uniform_tol(cfg.ipv_uniform_tol, n));
    state.t = 0;

    SCAResult result;
    result.k_used = k;

    auto record = [&](const ClusteringResult& clustering) {
        state.history.push_back(clustering.labels);
        if (state.history.size() > static_cast<std::size_t>(cfg.stability_count))
            state.history.erase(state.history.begin());
        if (cfg.record_trace) {
            IterationSnapshot snap;
            snap.t = state.t;
            snap.x.assign(state.x.values().begin(), state.x.values().end());
            snap.labels = clustering.labels;
            result.trace.push_back(std::move(snap));
        }
    };
    auto stable = [&]() {
        if (state.history.size() < static_cast<std::size_t>(cfg.stability_count)) return false;
        for (std::size_t i = 1; i < state.history.size(); ++i)
            if (state.history[i] != state.history.front()) return false;
        return true;
    };

    ClusteringResult current = gap_partition(state.x, k);
    record(current);
    result.stop_reason = StopReason::max_iter;
    while (state.t < cfg.max_iter) {
        state.x = evolve(state.x, B.P);
        ++state.t;
        current = gap_partition(state.x, k);
        record(current);
        if (stable()) {
            result.stop_reason = StopReason::stabilized;
            break;
        }
    }
    result.iterations_run = state.t;
    result.clusters = current;
    result.clusters.method = "sca";
    result.clusters.seed = cfg.seed;
    return result;
}

CCAResult run_cca(const BalancedMatrix& B, const CCAOptions& opts) {
    const std::size_t n = B.P.order();
    if (opts.target >= n) throw DomainError("target index out of range");
    if (opts.min_size > opts.max_size) throw DomainError("min_size must be <= max_size");

    const int k = opts.k_override ? *opts.k_override : detect_k(B);
    ProbVector x = ProbVector::indicator(n, opts.target);

    for (int t = 1; t <= opts.max_iter; ++t) {
        x = evolve(x, B.P);
        const ClusteringResult clustering = gap_partition(x, k);
        const int target_label = clustering.labels[opts.target];
        std::vector<std::size_t> cluster;
        for (std::size_t j = 0; j < n; ++j)
            if (clustering.labels[j] == target_label) cluster.push_back(j);

        if (cluster.size() >= opts.min_size && cluster.size() <= opts.max_size) {
            CCAResult result;
            result.t_found = t;
            result.k_used = k;
            if (opts.closest_m) {
                // rank companions by |x[j] - x[target]|; ties keep the
                // smaller index
                std::vector<std::size_t> order;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != opts.target) order.push_back(j);
                const double xt = x[opts.target];
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    const double da = std::fabs(x[a] - xt);
                    const double db = std::fabs(x[b] - xt);
                    if (da != db) return da < db;
                    return a < b;
                });
                const std::size_t m =
                    std::min<std::size_t>(static_cast<std::size_t>(*opts.closest_m), order.size());
                result.members.assign(order.begin(), order.begin() + m);
            } else {
                result.members = std::move(cluster);
            }
            return result;
        }
    }
    throw ExhaustionError("no cluster in the requested size range within max_iter iterations");
}

}  // namespace sca
