#include "sca/balance.hpp"

#include <algorithm>
#include <cmath>

#include "sca/errors.hpp"
#include "sca/kernels.hpp"

namespace sca {

SupportDiagnosis check_support(const SymMatrix& S) {
    if (!S.all_nonnegative()) throw DomainError("support check requires nonnegative entries");
    SupportDiagnosis diag;
    diag.positive_diagonal = true;
    for (std::size_t i = 0; i < S.order(); ++i)
        if (S(i, i) <= 0.0) diag.positive_diagonal = false;

    int count = 0;
    const auto comp = connected_components(S, &count);
    diag.component_count = count;
    diag.irreducible = (count == 1);
    diag.fully_indecomposable = diag.irreducible && diag.positive_diagonal;
    diag.isolated = isolated_indices(S);

    if (diag.positive_diagonal) {
        diag.componentwise_balanceable = true;
        // a component is fine iff it is internally connected, which the
        // component decomposition already guarantees; isolated singletons
        // with positive diagonal balance to the 1x1 matrix (1)
    } else {
        diag.componentwise_balanceable = false;
    }
    return diag;
}

SupportDiagnosis check_support(const ConsensusMatrix& S) { return check_support(S.S); }

BalancedMatrix sinkhorn_knopp(const SymMatrix& S, const BalanceOptions& opts) {
    if (opts.tol <= 0.0) throw DomainError("balance tolerance must be positive");
    const std::size_t n = S.order();
    const auto diag = check_support(S);
    if (!diag.fully_indecomposable) {
        if (!(opts.allow_uncoupled && diag.componentwise_balanceable)) {
            std::string msg = "matrix is not fully indecomposable (";
            msg += diag.positive_diagonal ? "" : "zero diagonal entry; ";
            msg += diag.irreducible ? "" : "not irreducible; ";
            msg += std::to_string(diag.component_count) + " components)";
            throw SupportError(msg);
        }
    }

    const auto& kern = kernels::active();
    std::vector<double> d;
    if (!opts.initial_d.empty()) {
        if (opts.initial_d.size() != n) throw DimensionError("initial scaling length mismatch");
        for (double v : opts.initial_d)
            if (v <= 0.0) throw DomainError("initial scaling must be positive");
        d = opts.initial_d;
    } else {
        d.assign(n, 1.0);
    }

    std::vector<double> sd(n), rowsum(n), residuals;
    int iter = 0;
    double residual = 0.0;
    for (;; ++iter) {
        // rowsum_i of DSD = d_i * (S d)_i
        for (std::size_t i = 0; i < n; ++i) sd[i] = kern.dot(S.row(i).data(), d.data(), n);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rowsum[i] = d[i] * sd[i];
            residual = std::max(residual, std::fabs(rowsum[i] - 1.0));
        }
        residuals.push_back(residual);
        if (residual <= opts.tol) break;
        if (iter >= opts.max_iter)
            throw ConvergenceError("sinkhorn_knopp hit the iteration cap", std::move(residuals));
        for (std::size_t i = 0; i < n; ++i) d[i] /= std::sqrt(rowsum[i]);
    }

    BalancedMatrix out;
    out.P = SymMatrix(n);
    // build the upper triangle and mirror so symmetry is bitwise exact;
    // zero entries of S stay exactly zero
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double s = S(i, j);
            out.P.set(i, j, s == 0.0 ? 0.0 : d[i] * d[j] * s);
        }
    out.d = std::move(d);
    out.iterations = iter;
    out.residual = residual;
    return out;
}

BalancedMatrix sinkhorn_knopp(const ConsensusMatrix& S, const BalanceOptions& opts) {
    return sinkhorn_knopp(S.S, opts);
}

}  // namespace sca
