#include "sca/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sca/kernels.hpp"

namespace sca {
namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) acc += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * acc);
}

Spectrum collect(const std::vector<double>& a, const std::vector<double>& r, std::size_t n,
                 bool want_vectors, int sweeps, double off) {
    // stable sort keeps the solver's diagonal order among equal eigenvalues
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });
    Spectrum spec;
    spec.order = n;
    spec.sweeps = sweeps;
    spec.off_norm = off;
    spec.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) spec.eigenvalues[k] = a[idx[k] * n + idx[k]];
    if (want_vectors) {
        spec.vectors.resize(n * n);
        for (std::size_t k = 0; k < n; ++k)
            std::copy_n(r.data() + idx[k] * n, n, spec.vectors.data() + k * n);
    }
    return spec;
}

}  // namespace

Spectrum sym_eigen(const SymMatrix& M, const EigenOptions& opts) {
    if (opts.tol <= 0.0) throw DomainError("eigensolver tolerance must be positive");
    const std::size_t n = M.order();
    const auto& kern = kernels::active();

    std::vector<double> a(M.data().begin(), M.data().end());
    // rows of r accumulate R with R M R^T = diag; row k is an eigenvector
    std::vector<double> r;
    r.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1.0;

    const double target = opts.tol * std::max(M.frobenius_norm(), 1e-300);
    std::vector<double> residuals;
    double off = off_diagonal_norm(a, n);
    residuals.push_back(off);
    int sweep = 0;
    while (off > target) {
        if (sweep >= opts.max_sweeps) {
            Spectrum best = collect(a, r, n, opts.want_vectors, sweep, off);
            throw EigenIterationError("jacobi sweep cap reached", std::move(residuals),
                                      std::move(best));
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e150) {
                    t = 0.5 / theta;  // avoids overflow in theta^2
                } else {
                    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A <- J^T A (rows p,q), then A <- A J (columns p,q)
                kern.rot(&a[p * n], &a[q * n], c, s, n);
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a[i * n + p];
                    const double aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                kern.rot(&r[p * n], &r[q * n], c, s, n);
            }
        }
        ++sweep;
        off = off_diagonal_norm(a, n);
        residuals.push_back(off);
    }
    return collect(a, r, n, opts.want_vectors, sweep, off);
}

}  // namespace sca
