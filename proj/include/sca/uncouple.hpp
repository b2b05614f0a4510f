#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sca/balance.hpp"
#include "sca/eigen.hpp"
#include "sca/matrix.hpp"

namespace sca {

/// sigma(S, n1): minimum off-diagonal-block mass fraction over all
/// two-block splits with block sizes n1 and n-n1.
struct UncouplingReport {
    std::size_t n1 = 0;
    double sigma = 0.0;
    BlockPartition minimizing_partition;
    bool exact = false;  // true when found by enumeration
};

/// Leading eigenvalues up to the largest consecutive gap.
struct PerronCluster {
    int k = 0;
    double gap = 0.0;
    std::vector<double> eigenvalues;  // the clustered leading values
    /// Set when the maximal gap sits at the last possible position (k = n-1).
    bool gap_at_end = false;
};

struct StochasticComplement {
    SymMatrix C;
    int block = 0;
    BlockPartition partition;
};

/// C_ii = P_ii + P_i* (I - P_i)^-1 P_*i, computed with a dense LU solve.
StochasticComplement stochastic_complement(const SymMatrix& P, const BlockPartition& partition,
                                           int block);

/// Exact minimum by subset enumeration while C(n, min(n1, n-n1)) stays
/// within exact_limit; otherwise an eigenvector-seeded single-swap
/// hill-climb upper bound (exact = false).
UncouplingReport uncoupling_measure(const SymMatrix& S, std::size_t n1,
                                    std::uint64_t exact_limit = 1000000);

struct SigmaBoundReport {
    double sigma_s = 0.0;
    double sigma_p = 0.0;
    double bound = 0.0;  // (Sigma / (n r)) * sigma_s
    bool pass = false;
    bool exact = false;
};

/// Checks sigma(P, n1) <= (Sigma / (n r)) * sigma(S, n1) + 1e-12 for a
/// balanced matrix derived from an ensemble-sum consensus.
SigmaBoundReport sigma_bound_check(const ConsensusMatrix& S, const BalancedMatrix& B,
                                   std::size_t n1, std::uint64_t exact_limit = 1000000);

PerronCluster perron_cluster(const Spectrum& spectrum);

struct Lambda2BoundReport {
    double lambda2 = 0.0;
    double deviation = 0.0;  // |1 - lambda2|
    double sigma_p = 0.0;
    double bound = 0.0;  // 2 sqrt(n) * sigma_p
    bool sigma_exact = false;
    bool pass = false;
};

/// Checks |1 - lambda2(P)| <= 2 sqrt(n) sigma(P, n1) + 1e-12.
Lambda2BoundReport lambda2_bound_check(const BalancedMatrix& B, std::size_t n1,
                                       std::uint64_t exact_limit = 1000000);

}  // namespace sca
