#include "sca/uncouple.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sca/errors.hpp"
#include "sca/kernels.hpp"

namespace sca {

StochasticComplement stochastic_complement(const SymMatrix& P, const BlockPartition& partition,
                                           int block) {
    const std::size_t n = P.order();
    if (partition.size() != n) throw DimensionError("partition does not match matrix order");
    if (block < 0 || block >= partition.block_count) throw DomainError("block id out of range");
    const auto inside = partition.indices_of(block);
    std::vector<std::size_t> outside;
    outside.reserve(n - inside.size());
    for (std::size_t i = 0; i < n; ++i)
        if (partition.block_of[i] != block) outside.push_back(i);
    if (inside.empty() || outside.empty())
        throw DomainError("block must be nonempty and proper");

    const std::size_t b = inside.size();
    const std::size_t m = outside.size();

    // I - P_i over the complement indices
    std::vector<double> ImP(m * m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            ImP[r * m + c] = (r == c ? 1.0 : 0.0) - P(outside[r], outside[c]);

    // right-hand side P_*i (complement rows, block columns)
    std::vector<double> rhs(m * b);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < b; ++c) rhs[r * b + c] = P(outside[r], inside[c]);

    std::vector<double> X;
    try {
        X = solve_dense(std::move(ImP), std::move(rhs), m, b);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError(
            "I - P_i is singular; the source matrix is not irreducible stochastic");
    }

    StochasticComplement out;
    out.block = block;
    out.partition = partition;
    out.C = SymMatrix(b);
    const auto& kern = kernels::active();
    // C = P_ii + P_i* X, accumulated row by row
    std::vector<double> prow(m), crow(b);
    for (std::size_t r = 0; r < b; ++r) {
        for (std::size_t c = 0; c < m; ++c) prow[c] = P(inside[r], outside[c]);
        for (std::size_t c = 0; c < b; ++c) crow[c] = P(inside[r], inside[c]);
        for (std::size_t t = 0; t < m; ++t) kern.axpy(crow.data(), prow[t], &X[t * b], b);
        for (std::size_t c = 0; c < b; ++c)
            out.C.mutable_data()[r * b + c] = crow[c];
    }
    // the exact result is symmetric; mirror to remove roundoff skew
    for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = r + 1; c < b; ++c) {
            const double v = 0.5 * (out.C(r, c) + out.C(c, r));
            out.C.set(r, c, v);
        }
    return out;
}

namespace {

double offblock_mass(const SymMatrix& S, const std::vector<std::size_t>& subset,
                     const std::vector<char>& in_subset) {
    double mass = 0.0;
    const std::size_t n = S.order();
    for (std::size_t i : subset) {
        const auto row = S.row(i);
        for (std::size_t j = 0; j < n; ++j)
            if (!in_subset[j]) mass += row[j];
    }
    return 2.0 * mass;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (result > UINT64_MAX / num) return UINT64_MAX;
        result = result * num / i;
    }
    return result;
}

UncouplingReport exact_sigma(const SymMatrix& S, std::size_t n1) {
    const std::size_t n = S.order();
    const std::size_t m = std::min(n1, n - n1);
    const double total = S.total_sum();

    std::vector<std::size_t> subset(m);
    std::iota(subset.begin(), subset.end(), 0);
    std::vector<char> in_subset(n, 0);
    for (std::size_t i : subset) in_subset[i] = 1;

    double best = offblock_mass(S, subset, in_subset) / total;
    std::vector<std::size_t> best_subset = subset;

    // lexicographic enumeration of all size-m subsets; ties keep the first
    while (true) {
        // rightmost position that can still be incremented (max is n-m+pos)
        std::size_t pos = m;
        for (std::size_t p = m; p-- > 0;) {
            if (subset[p] < n - m + p) {
                pos = p;
                break;
            }
        }
        if (pos == m) break;
        for (std::size_t i : subset) in_subset[i] = 0;
        ++subset[pos];
        for (std::size_t p = pos + 1; p < m; ++p) subset[p] = subset[p - 1] + 1;
        for (std::size_t i : subset) in_subset[i] = 1;
        const double sigma = offblock_mass(S, subset, in_subset) / total;
        if (sigma < best) {
            best = sigma;
            best_subset = subset;
        }
    }

    UncouplingReport report;
    report.n1 = n1;
    report.sigma = best;
    report.exact = true;
    if (m == n1) {
        report.minimizing_partition = BlockPartition::from_subset(best_subset, n);
    } else {
        // enumerated the complement size; flip so block 0 has size n1
        std::vector<char> mark(n, 0);
        for (std::size_t i : best_subset) mark[i] = 1;
        std::vector<std::size_t> flipped;
        for (std::size_t i = 0; i < n; ++i)
            if (!mark[i]) flipped.push_back(i);
        report.minimizing_partition = BlockPartition::from_subset(flipped, n);
    }
    return report;
}

UncouplingReport heuristic_sigma(const SymMatrix& S, std::size_t n1) {
    const std::size_t n = S.order();
    const double total = S.total_sum();

    // seed from the ordering induced by the second eigenvector
    Spectrum spec = sym_eigen(S, {.tol = 1e-10, .max_sweeps = 100, .want_vectors = true});
    const auto v2 = spec.eigenvector(1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v2[a] > v2[b]; });

    auto eval = [&](const std::vector<std::size_t>& subset) {
        std::vector<char> mark(n, 0);
        for (std::size_t i : subset) mark[i] = 1;
        return offblock_mass(S, subset, mark) / total;
    };

    std::vector<std::size_t> top(order.begin(), order.begin() + n1);
    std::vector<std::size_t> bottom(order.end() - n1, order.end());
    std::vector<std::size_t> current = eval(top) <= eval(bottom) ? top : bottom;
    double sigma = eval(current);

    // best-improvement single swaps until no swap lowers sigma
    bool improved = true;
    while (improved) {
        improved = false;
        std::vector<char> mark(n, 0);
        for (std::size_t i : current) mark[i] = 1;
        double best_sigma = sigma;
        std::size_t best_in = 0, best_out = 0;
        for (std::size_t a = 0; a < current.size(); ++a) {
            for (std::size_t j = 0; j < n; ++j) {
                if (mark[j]) continue;
                std::vector<std::size_t> candidate = current;
                candidate[a] = j;
                const double s = eval(candidate);
                if (s < best_sigma) {
                    best_sigma = s;
                    best_in = j;
                    best_out = a;
                    improved = true;
                }
            }
        }
        if (improved) {
            current[best_out] = best_in;
            sigma = best_sigma;
        }
    }

    UncouplingReport report;
    report.n1 = n1;
    report.sigma = sigma;
    report.exact = false;
    report.minimizing_partition = BlockPartition::from_subset(current, n);
    return report;
}

}  // namespace

UncouplingReport uncoupling_measure(const SymMatrix& S, std::size_t n1, std::uint64_t exact_limit) {
    const std::size_t n = S.order();
    if (n1 < 1 || n1 >= n) throw DomainError("n1 must satisfy 1 <= n1 < n");
    if (!S.all_nonnegative()) throw DomainError("uncoupling measure requires nonnegative entries");
    const std::size_t m = std::min(n1, n - n1);
    if (binomial(n, m) <= exact_limit) return exact_sigma(S, n1);
    return heuristic_sigma(S, n1);
}

SigmaBoundReport sigma_bound_check(const ConsensusMatrix& S, const BalancedMatrix& B,
                                   std::size_t n1, std::uint64_t exact_limit) {
    const auto rs = uncoupling_measure(S.S, n1, exact_limit);
    const auto rp = uncoupling_measure(B.P, n1, exact_limit);
    SigmaBoundReport report;
    report.sigma_s = rs.sigma;
    report.sigma_p = rp.sigma;
    report.exact = rs.exact && rp.exact;
    const double total = S.S.total_sum();
    report.bound = total / (static_cast<double>(S.order()) * S.r) * rs.sigma;
    report.pass = report.sigma_p <= report.bound + 1e-12;
    return report;
}

PerronCluster perron_cluster(const Spectrum& spectrum) {
    const std::size_t n = spectrum.eigenvalues.size();
    if (n < 2) throw DomainError("perron cluster needs at least two eigenvalues");
    std::size_t best_k = 0;
    double best_gap = -1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double gap = spectrum.eigenvalues[k] - spectrum.eigenvalues[k + 1];
        if (gap > best_gap) {  // strict: ties keep the smallest k
            best_gap = gap;
            best_k = k;
        }
    }
    PerronCluster out;
    out.k = static_cast<int>(best_k) + 1;
    out.gap = best_gap;
    out.eigenvalues.assign(spectrum.eigenvalues.begin(),
                           spectrum.eigenvalues.begin() + best_k + 1);
    out.gap_at_end = (best_k + 2 == n);
    return out;
}

Lambda2BoundReport lambda2_bound_check(const BalancedMatrix& B, std::size_t n1,
                                       std::uint64_t exact_limit) {
    const std::size_t n = B.P.order();
    Spectrum spec = sym_eigen(B.P, {.tol = 1e-12, .max_sweeps = 100, .want_vectors = false});
    const auto rp = uncoupling_measure(B.P, n1, exact_limit);
    Lambda2BoundReport report;
    report.lambda2 = spec.eigenvalues[1];
    report.deviation = std::fabs(1.0 - report.lambda2);
    report.sigma_p = rp.sigma;
    report.sigma_exact = rp.exact;
    report.bound = 2.0 * std::sqrt(static_cast<double>(n)) * rp.sigma;
    report.pass = report.deviation <= report.bound + 1e-12;
    return report;
}

}  // namespace sca
