#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sca {

/// Dense symmetric matrix, row-major full storage.
///
/// Symmetry is exact by construction: set() writes both triangles, and
/// from_rows() rejects buffers where entries[i][j] != entries[j][i].
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n, double fill = 0.0);

    /// Build from a full row-major buffer; throws DomainError unless
    /// the buffer is exactly symmetric.
    static SymMatrix from_rows(std::size_t n, std::vector<double> values);

    static SymMatrix identity(std::size_t n);

    std::size_t order() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::span<const double> data() const { return data_; }
    std::span<double> mutable_data() { return data_; }

    double frobenius_norm() const;
    double total_sum() const;
    /// max_i sum_j |a_ij|
    double inf_norm() const;
    bool all_nonnegative() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Nonnegative vector on the probability simplex.
class ProbVector {
public:
    ProbVector() = default;

    /// Normalizes to sum 1; throws DomainError on negative entries or zero sum.
    static ProbVector make(std::vector<double> values);
    /// Adopts values already on the simplex (sum within 1e-9 of 1); no rescaling.
    static ProbVector adopt(std::vector<double> values);
    static ProbVector uniform(std::size_t n);
    /// Indicator vector e_target.
    static ProbVector indicator(std::size_t n, std::size_t target);

    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    std::span<const double> values() const { return v_; }

    double sum() const;
    /// 2-norm distance to the uniform vector (1/n, ..., 1/n).
    double distance_to_uniform() const;

    /// Rescale so the entries sum to 1 again (drift repair).
    void renormalize();

private:
    explicit ProbVector(std::vector<double> v) : v_(std::move(v)) {}
    std::vector<double> v_;
};

/// Assignment of indices 0..n-1 to blocks 0..k-1; every block nonempty.
struct BlockPartition {
    std::vector<int> block_of;
    int block_count = 0;

    static BlockPartition from_blocks(const std::vector<std::vector<std::size_t>>& blocks,
                                      std::size_t n);
    /// Two-block partition from a member set of block 0.
    static BlockPartition from_subset(const std::vector<std::size_t>& subset, std::size_t n);

    std::size_t size() const { return block_of.size(); }
    std::vector<std::size_t> indices_of(int block) const;
    std::vector<std::size_t> block_sizes() const;
};

/// One power step: returns x^T P, renormalized when the sum drifts
/// beyond 1e-12. P must be doubly stochastic (caller's obligation).
ProbVector evolve(const ProbVector& x, const SymMatrix& P);

/// True iff the graph with an edge wherever M[i][j] > 0 is connected.
/// Throws DomainError on negative entries.
bool is_irreducible(const SymMatrix& M);

/// Connected components of the positive-entry graph (off-diagonal edges).
std::vector<int> connected_components(const SymMatrix& M, int* count = nullptr);

/// Q M Q^T for the permutation out[i][j] = M[perm[i]][perm[j]].
/// perm must be a bijection on 0..n-1.
SymMatrix permute_sym(const SymMatrix& M, const std::vector<std::size_t>& perm);

/// Max deviation of any row sum from 1 (rows suffice for a symmetric matrix).
double stochasticity_residual(const SymMatrix& M);
bool is_doubly_stochastic(const SymMatrix& M, double tol = 1e-9);

/// Dense LU solve with partial pivoting: returns X with A X = B.
/// A is row-major n x n, B row-major n x m. Pivots below pivot_tol
/// raise SingularMatrixError.
std::vector<double> solve_dense(std::vector<double> A, std::vector<double> B, std::size_t n,
                                std::size_t m, double pivot_tol = 1e-13);

}  // namespace sca
