#include "sca/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sca/eigen.hpp"
#include "sca/errors.hpp"
#include "sca/uncouple.hpp"

namespace sca::verify {

SymMatrix random_positive_sym(std::size_t n, Rng& rng, double lo, double hi) {
    SymMatrix M(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) M.set(i, j, lo + (hi - lo) * rng.uniform01());
    return M;
}

ConsensusMatrix random_consensus(std::size_t n, int r, Rng& rng, int max_k) {
    std::vector<ClusteringResult> ensemble;
    ensemble.reserve(r);
    for (int member = 0; member < r; ++member) {
        ClusteringResult c;
        c.method = "random";
        const int k = 2 + static_cast<int>(rng.uniform_index(std::max(1, max_k - 1)));
        c.labels.resize(n);
        for (auto& label : c.labels) label = 1 + static_cast<int>(rng.uniform_index(k));
        c.k = k;
        ensemble.push_back(std::move(c));
    }
    return consensus_sum(ensemble);
}

BalancedMatrix random_doubly_stochastic(std::size_t n, Rng& rng) {
    return sinkhorn_knopp(random_positive_sym(n, rng), {});
}

BlockPartition random_partition(std::size_t n, int k, Rng& rng) {
    if (k < 1 || static_cast<std::size_t>(k) > n) throw DomainError("bad partition block count");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[rng.uniform_index(i + 1)]);
    std::vector<std::vector<std::size_t>> blocks(k);
    for (int b = 0; b < k; ++b) blocks[b].push_back(order[b]);  // every block nonempty
    for (std::size_t i = k; i < n; ++i) blocks[rng.uniform_index(k)].push_back(order[i]);
    return BlockPartition::from_blocks(blocks, n);
}

SymMatrix block_doubly_stochastic(int b, int block_size, double epsilon) {
    const std::size_t n = static_cast<std::size_t>(b) * block_size;
    SymMatrix M(n);
    const double inside = (1.0 - epsilon) / block_size;
    const double outside = epsilon / static_cast<double>(n - block_size);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            M.set(i, j, (i / block_size == j / block_size) ? inside : outside);
    return M;
}

SuiteResult complement_suite(int trials, std::uint64_t seed, std::size_t max_n) {
    SuiteResult result;
    result.name = "stochastic-complement";
    result.trials = trials;
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 4 + rng.uniform_index(max_n - 3);
        const BalancedMatrix B = random_doubly_stochastic(n, rng);
        const int k = 2 + static_cast<int>(rng.uniform_index(std::min<std::size_t>(3, n - 1)));
        const BlockPartition part = random_partition(n, k, rng);
        const int block = static_cast<int>(rng.uniform_index(k));

        const StochasticComplement C = stochastic_complement(B.P, part, block);
        bool ok = C.C.all_nonnegative();
        const double resid = stochasticity_residual(C.C);
        worst = std::max(worst, resid);
        ok = ok && resid <= 1e-10;

        // block-interchange consistency: move the block to the front and
        // use the 2x2 repartition
        const auto inside = part.indices_of(block);
        std::vector<std::size_t> perm = inside;
        for (std::size_t i = 0; i < n; ++i)
            if (part.block_of[i] != block) perm.push_back(i);
        const SymMatrix Pt = permute_sym(B.P, perm);
        std::vector<std::size_t> front(inside.size());
        std::iota(front.begin(), front.end(), 0);
        const BlockPartition two = BlockPartition::from_subset(front, n);
        const StochasticComplement C2 = stochastic_complement(Pt, two, 0);
        double diff = 0.0;
        for (std::size_t i = 0; i < inside.size(); ++i)
            for (std::size_t j = 0; j < inside.size(); ++j)
                diff = std::max(diff, std::fabs(C.C(i, j) - C2.C(i, j)));
        ok = ok && diff <= 1e-12;

        if (!ok) ++result.failures;
    }
    result.worst = worst;
    result.lines.push_back("worst_residual=" + std::to_string(worst));
    return result;
}

SuiteResult sigma_bound_suite(int trials, std::uint64_t seed, std::size_t max_n) {
    SuiteResult result;
    result.name = "sigma-bound";
    result.trials = trials;
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 6 + rng.uniform_index(max_n - 5);
        const int r = 5 + static_cast<int>(rng.uniform_index(25));
        const ConsensusMatrix S = random_consensus(n, r, rng);
        if (!is_irreducible(S.S)) continue;  // astronomically unlikely; skip if so
        const BalancedMatrix B = sinkhorn_knopp(S, {});
        const std::size_t n1 = 1 + rng.uniform_index(n - 1);
        const SigmaBoundReport bound = sigma_bound_check(S, B, n1);
        if (!bound.pass || !bound.exact) ++result.failures;
        worst = std::max(worst, bound.sigma_p - bound.bound);

        const double dmax = *std::max_element(B.d.begin(), B.d.end());
        if (dmax > 1.0 / std::sqrt(static_cast<double>(r)) + 1e-12) ++result.failures;
    }
    result.worst = worst;
    result.lines.push_back("worst_margin=" + std::to_string(worst));
    return result;
}

SuiteResult lambda2_bound_suite(int trials, std::uint64_t seed, std::size_t max_n) {
    SuiteResult result;
    result.name = "lambda2-bound";
    result.trials = trials;
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 6 + rng.uniform_index(max_n - 5);
        const int r = 5 + static_cast<int>(rng.uniform_index(25));
        const ConsensusMatrix S = random_consensus(n, r, rng);
        if (!is_irreducible(S.S)) continue;
        const BalancedMatrix B = sinkhorn_knopp(S, {});
        const std::size_t n1 = 1 + rng.uniform_index(n - 1);
        const Lambda2BoundReport bound = lambda2_bound_check(B, n1);
        if (!bound.pass || !bound.sigma_exact) ++result.failures;
        worst = std::max(worst, bound.deviation - bound.bound);
    }
    result.worst = worst;
    result.lines.push_back("worst_margin=" + std::to_string(worst));
    return result;
}

SuiteResult perron_detection_suite(int trials, std::uint64_t seed) {
    SuiteResult result;
    result.name = "perron-detection";
    result.trials = trials;
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const int b = 2 + static_cast<int>(rng.uniform_index(4));       // 2..5 blocks
        const int size = 2 + static_cast<int>(rng.uniform_index(4));    // 2..5 each
        const double epsilon = (trial % 2 == 0) ? 1e-3 : 1e-2;
        SymMatrix M = block_doubly_stochastic(b, size, epsilon);
        // hide the block order behind a random symmetric permutation
        std::vector<std::size_t> perm(M.order());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = perm.size(); i-- > 1;) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
        M = permute_sym(M, perm);
        const Spectrum spec = sym_eigen(M, {.tol = 1e-12, .max_sweeps = 100, .want_vectors = false});
        const PerronCluster cluster = perron_cluster(spec);
        if (cluster.k != b) ++result.failures;
    }
    return result;
}

SuiteResult correlation_suite(std::uint64_t seed) {
    SuiteResult result;
    result.name = "sigma-lambda2-correlation";
    Rng rng(seed);
    std::vector<double> sigmas, deviations;
    for (int step = 0; step < 12; ++step) {
        const double epsilon = std::pow(10.0, -0.25 * step - 0.5);
        SymMatrix M = block_doubly_stochastic(2, 5, epsilon);
        // jitter: balance a perturbed copy so the family is not exactly
        // the closed-form matrix
        SymMatrix J = M;
        for (std::size_t i = 0; i < J.order(); ++i)
            for (std::size_t j = i; j < J.order(); ++j)
                J.set(i, j, J(i, j) * (1.0 + 0.05 * rng.uniform01()));
        const BalancedMatrix B = sinkhorn_knopp(J, {});
        const auto sigma = uncoupling_measure(B.P, 5);
        const Spectrum spec = sym_eigen(B.P, {.tol = 1e-12, .max_sweeps = 100, .want_vectors = false});
        sigmas.push_back(sigma.sigma);
        deviations.push_back(std::fabs(1.0 - spec.eigenvalues[1]));
    }
    result.trials = static_cast<int>(sigmas.size());
    // Pearson correlation between sigma and |1-lambda2|
    const auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    };
    const double ms = mean(sigmas), md = mean(deviations);
    double num = 0.0, ds = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        num += (sigmas[i] - ms) * (deviations[i] - md);
        ds += (sigmas[i] - ms) * (sigmas[i] - ms);
        dd += (deviations[i] - md) * (deviations[i] - md);
    }
    const double corr = num / std::sqrt(ds * dd);
    result.worst = corr;
    result.lines.push_back("pearson=" + std::to_string(corr));
    // monotone consequence: smaller sigma should mean lambda2 nearer 1
    if (corr <= 0.0) ++result.failures;
    return result;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
    return {
        complement_suite(100, seed),
        sigma_bound_suite(100, seed + 1),
        lambda2_bound_suite(100, seed + 2),
        perron_detection_suite(50, seed + 3),
        correlation_suite(seed + 4),
    };
}

}  // namespace sca::verify
