#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sca/balance.hpp"
#include "sca/consensus.hpp"
#include "sca/matrix.hpp"
#include "sca/rng.hpp"

namespace sca::verify {

/// Random generators for the property suites. All deterministic in the
/// supplied Rng.

/// Symmetric with entries uniform in (lo, hi], positive when lo >= 0.
SymMatrix random_positive_sym(std::size_t n, Rng& rng, double lo = 0.05, double hi = 1.0);

/// Random ensemble-sum consensus: r random labelings of n elements.
ConsensusMatrix random_consensus(std::size_t n, int r, Rng& rng, int max_k = 4);

/// Balanced form of a random positive symmetric matrix (irreducible,
/// symmetric, doubly stochastic).
BalancedMatrix random_doubly_stochastic(std::size_t n, Rng& rng);

/// Random partition into k nonempty blocks.
BlockPartition random_partition(std::size_t n, int k, Rng& rng);

/// Symmetric doubly stochastic matrix with b equal blocks of size
/// block_size and off-block mass epsilon per row.
SymMatrix block_doubly_stochastic(int b, int block_size, double epsilon);

struct SuiteResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    double worst = 0.0;  // suite-specific worst margin/residual
    bool pass() const { return failures == 0; }
    std::vector<std::string> lines;  // key=value detail rows
};

/// Stochastic complements of random doubly stochastic matrices are
/// doubly stochastic (residual tolerance 1e-10) and agree with the
/// block-interchange 2x2 form (1e-12).
SuiteResult complement_suite(int trials, std::uint64_t seed, std::size_t max_n = 20);

/// sigma(P,n1) <= Sigma/(n r) sigma(S,n1) + 1e-12 and d_i <= 1/sqrt(r) + 1e-12
/// on random ensemble-sum consensus matrices.
SuiteResult sigma_bound_suite(int trials, std::uint64_t seed, std::size_t max_n = 14);

/// |1 - lambda2(P)| <= 2 sqrt(n) sigma(P,n1) + 1e-12 at the exact
/// minimizing partition.
SuiteResult lambda2_bound_suite(int trials, std::uint64_t seed, std::size_t max_n = 14);

/// Perron-cluster detection recovers the block count of synthetic
/// nearly-uncoupled matrices for epsilon in {1e-3, 1e-2}.
SuiteResult perron_detection_suite(int trials, std::uint64_t seed);

/// Empirical sigma->0 vs lambda2->1 correlation on an epsilon sweep;
/// reported, never gating.
SuiteResult correlation_suite(std::uint64_t seed);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace sca::verify
