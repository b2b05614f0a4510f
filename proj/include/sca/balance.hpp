#pragma once

#include <cstddef>
#include <vector>

#include "sca/consensus.hpp"
#include "sca/matrix.hpp"

namespace sca {

/// Zero-pattern diagnosis ahead of balancing.
struct SupportDiagnosis {
    bool irreducible = false;
    bool positive_diagonal = false;
    /// irreducible AND positive diagonal; guarantees the scaling exists
    /// and is unique.
    bool fully_indecomposable = false;
    /// Every connected component is irreducible with a positive diagonal;
    /// the doubly stochastic form still exists (componentwise) even when
    /// the matrix itself is uncoupled.
    bool componentwise_balanceable = false;
    int component_count = 0;
    std::vector<std::size_t> isolated;  // rows with no off-diagonal support
};

/// Doubly stochastic scaling P = D S D.
struct BalancedMatrix {
    SymMatrix P;
    std::vector<double> d;  // positive scaling diagonal
    int iterations = 0;
    double residual = 0.0;  // final max row-sum deviation from 1
};

SupportDiagnosis check_support(const ConsensusMatrix& S);
SupportDiagnosis check_support(const SymMatrix& S);

struct BalanceOptions {
    double tol = 1e-10;   // max_i |rowsum_i - 1|
    int max_iter = 10000;
    /// Accept matrices that are uncoupled but componentwise balanceable.
    bool allow_uncoupled = false;
    /// Optional positive initial scaling (default: all ones).
    std::vector<double> initial_d;
};

/// Symmetric Sinkhorn-Knopp: d <- d / sqrt(rowsum(DSD)), iterated until
/// every row sum of P is within tol of 1. Preserves symmetry and the zero
/// pattern exactly. Throws SupportError when the precondition fails and
/// ConvergenceError (with residual history) at the iteration cap.
BalancedMatrix sinkhorn_knopp(const ConsensusMatrix& S, const BalanceOptions& opts = {});
BalancedMatrix sinkhorn_knopp(const SymMatrix& S, const BalanceOptions& opts = {});

}  // namespace sca
