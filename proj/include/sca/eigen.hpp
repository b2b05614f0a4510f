#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sca/errors.hpp"
#include "sca/matrix.hpp"

namespace sca {

/// Eigendecomposition of a symmetric matrix.
struct Spectrum {
    /// Sorted descending. Ties keep the solver's output order (stable sort).
    std::vector<double> eigenvalues;
    /// Row-major; row k is the unit eigenvector for eigenvalues[k].
    /// Empty when vectors were not requested.
    std::vector<double> vectors;
    std::size_t order = 0;
    int sweeps = 0;
    /// Final off-diagonal Frobenius norm.
    double off_norm = 0.0;

    bool has_vectors() const { return !vectors.empty(); }
    std::span<const double> eigenvector(std::size_t k) const {
        return {vectors.data() + k * order, order};
    }
};

struct EigenOptions {
    double tol = 1e-12;  // convergence: off(A)_F <= tol * ||A||_F
    int max_sweeps = 100;
    bool want_vectors = true;
};

/// Thrown when the sweep cap is reached; carries the best iterate so far.
class EigenIterationError : public ConvergenceError {
public:
    EigenIterationError(const std::string& msg, std::vector<double> residuals, Spectrum best)
        : ConvergenceError(msg, std::move(residuals)), best_so_far(std::move(best)) {}
    Spectrum best_so_far;
};

/// Cyclic Jacobi (row-cyclic sweeps of plane rotations).
Spectrum sym_eigen(const SymMatrix& M, const EigenOptions& opts = {});

}  // namespace sca
