#pragma once

#include <cstddef>
#include <string>

namespace sca::kernels {

/// Data-parallel double-precision primitives behind the numeric modules.
/// Every entry has a scalar reference implementation and (on x86-64 with
/// AVX2) a vectorized variant; the active table is chosen once at startup
/// and can be overridden for testing.
struct Ops {
    /// sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// sum_i a[i]
    double (*sum)(const double* a, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*axpy)(double* y, double alpha, const double* x, std::size_t n);
    /// x[i] *= alpha
    void (*scale)(double* x, double alpha, std::size_t n);
    /// dst[i] = a[i] * b[i]
    void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
    /// plane rotation: (x, y) <- (c*x - s*y, s*x + c*y)
    void (*rot)(double* x, double* y, double c, double s, std::size_t n);
    /// sum_i (a[i]-b[i])^2
    double (*sq_dist)(const double* a, const double* b, std::size_t n);
    /// max_i |a[i]-b[i]|
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

enum class Isa { scalar, avx2 };

/// Kernel table for a specific ISA. Throws DomainError if the host cannot
/// run it.
const Ops& ops(Isa isa);

/// The table selected at startup: AVX2 when the CPU supports it, unless
/// the SCA_KERNELS environment variable ("scalar"/"avx2") says otherwise.
const Ops& active();

/// Force the active table; used by equivalence tests.
void select(Isa isa);

bool cpu_has_avx2();
std::string active_name();

}  // namespace sca::kernels
