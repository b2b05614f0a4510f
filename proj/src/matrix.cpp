#include "sca/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sca/errors.hpp"
#include "sca/kernels.hpp"

namespace sca {

SymMatrix::SymMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {
    if (n == 0) throw DomainError("matrix order must be >= 1");
}

SymMatrix SymMatrix::from_rows(std::size_t n, std::vector<double> values) {
    if (n == 0) throw DomainError("matrix order must be >= 1");
    if (values.size() != n * n) throw DimensionError("buffer size does not match order");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (values[i * n + j] != values[j * n + i])
                throw DomainError("matrix is not symmetric");
    SymMatrix M;
    M.n_ = n;
    M.data_ = std::move(values);
    return M;
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix M(n);
    for (std::size_t i = 0; i < n; ++i) M.set(i, i, 1.0);
    return M;
}

double SymMatrix::frobenius_norm() const {
    return std::sqrt(kernels::active().dot(data_.data(), data_.data(), data_.size()));
}

double SymMatrix::total_sum() const { return kernels::active().sum(data_.data(), data_.size()); }

double SymMatrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += std::fabs(data_[i * n_ + j]);
        best = std::max(best, s);
    }
    return best;
}

bool SymMatrix::all_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0; });
}

ProbVector ProbVector::make(std::vector<double> values) {
    if (values.empty()) throw DomainError("probability vector must be nonempty");
    double s = 0.0;
    for (double v : values) {
        if (v < 0.0) throw DomainError("probability vector has a negative entry");
        s += v;
    }
    if (s <= 0.0) throw DomainError("probability vector has zero mass");
    for (double& v : values) v /= s;
    return ProbVector(std::move(values));
}

ProbVector ProbVector::adopt(std::vector<double> values) {
    if (values.empty()) throw DomainError("probability vector must be nonempty");
    double s = 0.0;
    for (double v : values) {
        if (v < 0.0) throw DomainError("probability vector has a negative entry");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-9) throw DomainError("vector is not on the probability simplex");
    return ProbVector(std::move(values));
}

ProbVector ProbVector::uniform(std::size_t n) {
    if (n == 0) throw DomainError("probability vector must be nonempty");
    return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVector ProbVector::indicator(std::size_t n, std::size_t target) {
    if (target >= n) throw DomainError("indicator position out of range");
    std::vector<double> v(n, 0.0);
    v[target] = 1.0;
    return ProbVector(std::move(v));
}

double ProbVector::sum() const { return kernels::active().sum(v_.data(), v_.size()); }

double ProbVector::distance_to_uniform() const {
    const double u = 1.0 / static_cast<double>(v_.size());
    double acc = 0.0;
    for (double x : v_) acc += (x - u) * (x - u);
    return std::sqrt(acc);
}

void ProbVector::renormalize() {
    const double s = sum();
    if (s <= 0.0) throw DomainError("cannot renormalize zero-mass vector");
    kernels::active().scale(v_.data(), 1.0 / s, v_.size());
}

BlockPartition BlockPartition::from_blocks(const std::vector<std::vector<std::size_t>>& blocks,
                                           std::size_t n) {
    BlockPartition part;
    part.block_of.assign(n, -1);
    part.block_count = static_cast<int>(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw DomainError("empty block in partition");
        for (std::size_t idx : blocks[b]) {
            if (idx >= n) throw DomainError("partition index out of range");
            if (part.block_of[idx] != -1) throw DomainError("index assigned to two blocks");
            part.block_of[idx] = static_cast<int>(b);
        }
    }
    for (int b : part.block_of)
        if (b == -1) throw DomainError("partition leaves an index unassigned");
    return part;
}

BlockPartition BlockPartition::from_subset(const std::vector<std::size_t>& subset, std::size_t n) {
    BlockPartition part;
    part.block_of.assign(n, 1);
    part.block_count = 2;
    for (std::size_t idx : subset) {
        if (idx >= n) throw DomainError("subset index out of range");
        part.block_of[idx] = 0;
    }
    auto sizes = part.block_sizes();
    if (sizes[0] == 0 || sizes[1] == 0) throw DomainError("subset must be proper and nonempty");
    return part;
}

std::vector<std::size_t> BlockPartition::indices_of(int block) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < block_of.size(); ++i)
        if (block_of[i] == block) out.push_back(i);
    return out;
}

std::vector<std::size_t> BlockPartition::block_sizes() const {
    std::vector<std::size_t> sizes(block_count, 0);
    for (int b : block_of) ++sizes[b];
    return sizes;
}

ProbVector evolve(const ProbVector& x, const SymMatrix& P) {
    const std::size_t n = P.order();
    if (x.size() != n) throw DimensionError("vector order does not match matrix order");
    const auto& k = kernels::active();
    std::vector<double> y(n);
    // x^T P = (P x)^T by symmetry, so each output entry is a row dot.
    for (std::size_t i = 0; i < n; ++i) y[i] = k.dot(P.row(i).data(), x.values().data(), n);
    const double s = k.sum(y.data(), n);
    if (std::fabs(s - 1.0) > 1e-12) k.scale(y.data(), 1.0 / s, n);
    return ProbVector::adopt(std::move(y));
}

bool is_irreducible(const SymMatrix& M) {
    if (!M.all_nonnegative()) throw DomainError("irreducibility test requires nonnegative entries");
    int count = 0;
    connected_components(M, &count);
    return count == 1;
}

std::vector<int> connected_components(const SymMatrix& M, int* count) {
    const std::size_t n = M.order();
    std::vector<int> comp(n, -1);
    int c = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (v != u && comp[v] == -1 && M(u, v) > 0.0) {
                    comp[v] = c;
                    stack.push_back(v);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

SymMatrix permute_sym(const SymMatrix& M, const std::vector<std::size_t>& perm) {
    const std::size_t n = M.order();
    if (perm.size() != n) throw DomainError("permutation length does not match order");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) throw DomainError("not a permutation of 0..n-1");
        seen[p] = true;
    }
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.mutable_data()[i * n + j] = M(perm[i], perm[j]);
    return out;
}

double stochasticity_residual(const SymMatrix& M) {
    const auto& k = kernels::active();
    double worst = 0.0;
    for (std::size_t i = 0; i < M.order(); ++i)
        worst = std::max(worst, std::fabs(k.sum(M.row(i).data(), M.order()) - 1.0));
    return worst;
}

bool is_doubly_stochastic(const SymMatrix& M, double tol) {
    return M.all_nonnegative() && stochasticity_residual(M) <= tol;
}

std::vector<double> solve_dense(std::vector<double> A, std::vector<double> B, std::size_t n,
                                std::size_t m, double pivot_tol) {
    if (A.size() != n * n || B.size() != n * m) throw DimensionError("solve_dense shape mismatch");
    const auto& k = kernels::active();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::fabs(A[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::fabs(A[r * n + col]);
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best < pivot_tol) throw SingularMatrixError("pivot below singularity threshold");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A[col * n + j], A[piv * n + j]);
            for (std::size_t j = 0; j < m; ++j) std::swap(B[col * m + j], B[piv * m + j]);
        }
        const double inv = 1.0 / A[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A[r * n + col] * inv;
            if (f == 0.0) continue;
            A[r * n + col] = 0.0;
            k.axpy(&A[r * n + col + 1], -f, &A[col * n + col + 1], n - col - 1);
            k.axpy(&B[r * m], -f, &B[col * m], m);
        }
    }
    // back substitution
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t r = ri + 1; r < n; ++r)
            k.axpy(&B[ri * m], -A[ri * n + r], &B[r * m], m);
        const double inv = 1.0 / A[ri * n + ri];
        k.scale(&B[ri * m], inv, m);
    }
    return B;
}

}  // namespace sca
