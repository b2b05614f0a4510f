#include "sca/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sca/errors.hpp"
#include "sca/kernels.hpp"
#include "sca/rng.hpp"

namespace sca {

DataMatrix::DataMatrix(std::size_t m, std::size_t n) : m_(m), n_(n), data_(m * n, 0.0) {
    if (m < 1 || n < 1) throw DomainError("data matrix must be at least 1 x 1");
}

DataMatrix DataMatrix::from_columns(std::size_t m, std::size_t n, std::vector<double> col_major) {
    if (col_major.size() != m * n) throw DimensionError("data buffer size mismatch");
    DataMatrix A(m, n);
    A.data_ = std::move(col_major);
    return A;
}

bool DataMatrix::all_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0; });
}

namespace {

// squared distances from every column to one centroid
void centroid_distances(const DataMatrix& A, const double* centroid, std::vector<double>& out) {
    const auto& k = kernels::active();
    for (std::size_t j = 0; j < A.elements(); ++j)
        out[j] = k.sq_dist(A.column(j).data(), centroid, A.attributes());
}

bool all_columns_identical(const DataMatrix& A) {
    const auto& k = kernels::active();
    for (std::size_t j = 1; j < A.elements(); ++j)
        if (k.max_abs_diff(A.column(j).data(), A.column(0).data(), A.attributes()) != 0.0)
            return false;
    return true;
}

}  // namespace

ClusteringResult kmeans(const DataMatrix& A, int k, std::uint64_t seed, int max_iter) {
    const std::size_t n = A.elements();
    const std::size_t m = A.attributes();
    if (k < 1 || static_cast<std::size_t>(k) > n) throw DomainError("kmeans requires 1 <= k <= n");

    ClusteringResult result;
    result.method = "kmeans";
    result.k_requested = k;
    result.seed = seed;

    if (k == 1) {
        result.labels.assign(n, 1);
        result.k = 1;
        return result;
    }
    if (all_columns_identical(A)) {
        result.labels.assign(n, 1);
        result.k = 1;
        result.warnings.push_back("degenerate data: all columns identical");
        return result;
    }

    Rng rng(seed);
    const auto& kern = kernels::active();

    // seeding: first centroid uniform, then weighted by squared distance
    std::vector<double> centroids(static_cast<std::size_t>(k) * m);
    std::vector<double> dist2(n), best2(n, std::numeric_limits<double>::infinity());
    {
        const std::size_t first = rng.uniform_index(n);
        std::copy_n(A.column(first).data(), m, centroids.data());
        centroid_distances(A, centroids.data(), best2);
        for (int c = 1; c < k; ++c) {
            const double total = kern.sum(best2.data(), n);
            std::size_t pick = 0;
            if (total > 0.0) {
                const double u = rng.uniform01() * total;
                double acc = 0.0;
                pick = n - 1;
                for (std::size_t j = 0; j < n; ++j) {
                    acc += best2[j];
                    if (acc >= u) {
                        pick = j;
                        break;
                    }
                }
            } else {
                pick = rng.uniform_index(n);
            }
            std::copy_n(A.column(pick).data(), m, centroids.data() + c * m);
            centroid_distances(A, centroids.data() + c * m, dist2);
            for (std::size_t j = 0; j < n; ++j) best2[j] = std::min(best2[j], dist2[j]);
        }
    }

    std::vector<int> assign(n, 0), counts(k, 0);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::size_t j = 0; j < n; ++j) {
            int best = 0;
            double bd = kern.sq_dist(A.column(j).data(), centroids.data(), m);
            for (int c = 1; c < k; ++c) {
                const double d = kern.sq_dist(A.column(j).data(), centroids.data() + c * m, m);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            if (assign[j] != best) {
                assign[j] = best;
                changed = true;
            }
        }
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t j = 0; j < n; ++j) ++counts[assign[j]];

        // empty-cluster repair: reseed to the point farthest from its centroid
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t far = 0;
            double fd = -1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (counts[assign[j]] <= 1) continue;  // keep donor clusters nonempty
                const double d =
                    kern.sq_dist(A.column(j).data(), centroids.data() + assign[j] * m, m);
                if (d > fd) {
                    fd = d;
                    far = j;
                }
            }
            --counts[assign[far]];
            assign[far] = c;
            counts[c] = 1;
            std::copy_n(A.column(far).data(), m, centroids.data() + c * m);
            changed = true;
            result.warnings.push_back("empty cluster reseeded");
        }

        std::fill(centroids.begin(), centroids.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            kern.axpy(centroids.data() + assign[j] * m, 1.0, A.column(j).data(), m);
        for (int c = 0; c < k; ++c)
            if (counts[c] > 0) kern.scale(centroids.data() + c * m, 1.0 / counts[c], m);

        if (!changed) break;
    }

    // relabel to 1..k_used, dropping ids that ended up unused
    std::vector<int> remap(k, 0);
    int k_used = 0;
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t j = 0; j < n; ++j) ++counts[assign[j]];
    for (int c = 0; c < k; ++c)
        if (counts[c] > 0) remap[c] = ++k_used;
    if (k_used < k) result.warnings.push_back("fewer clusters than requested");
    result.labels.resize(n);
    for (std::size_t j = 0; j < n; ++j) result.labels[j] = remap[assign[j]];
    result.k = k_used;
    return result;
}

double wcss(const DataMatrix& A, const ClusteringResult& clustering) {
    if (clustering.size() != A.elements()) throw DimensionError("labels do not match data");
    const std::size_t m = A.attributes();
    const auto& kern = kernels::active();
    std::vector<double> centroids(static_cast<std::size_t>(clustering.k) * m, 0.0);
    std::vector<int> counts(clustering.k, 0);
    for (std::size_t j = 0; j < A.elements(); ++j) {
        const int c = clustering.labels[j] - 1;
        kern.axpy(centroids.data() + c * m, 1.0, A.column(j).data(), m);
        ++counts[c];
    }
    for (int c = 0; c < clustering.k; ++c)
        if (counts[c] > 0) kern.scale(centroids.data() + c * m, 1.0 / counts[c], m);
    double obj = 0.0;
    for (std::size_t j = 0; j < A.elements(); ++j)
        obj += kern.sq_dist(A.column(j).data(),
                            centroids.data() + (clustering.labels[j] - 1) * m, m);
    return obj;
}

namespace {

// row-major C(r x c) = A(r x inner) * B(inner x c)
void matmul(const double* A, const double* B, double* C, std::size_t r, std::size_t inner,
            std::size_t c) {
    const auto& kern = kernels::active();
    std::fill_n(C, r * c, 0.0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < inner; ++t) kern.axpy(C + i * c, A[i * inner + t], B + t * c, c);
}

// C(r x c) = A^T(r x inner) * B(inner x c) with A stored inner x r
void matmul_tn(const double* A, const double* B, double* C, std::size_t r, std::size_t inner,
               std::size_t c) {
    const auto& kern = kernels::active();
    std::fill_n(C, r * c, 0.0);
    for (std::size_t t = 0; t < inner; ++t)
        for (std::size_t i = 0; i < r; ++i) kern.axpy(C + i * c, A[t * r + i], B + t * c, c);
}

// C(r x c) = A(r x inner) * B^T(inner x c) with B stored c x inner
void matmul_nt(const double* A, const double* B, double* C, std::size_t r, std::size_t inner,
               std::size_t c) {
    const auto& kern = kernels::active();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            C[i * c + j] = kern.dot(A + i * inner, B + j * inner, inner);
}

}  // namespace

NmfFactors nmf_mu(const DataMatrix& A, int k, std::uint64_t seed, int max_iter, double tol) {
    const std::size_t m = A.attributes();
    const std::size_t n = A.elements();
    if (!A.all_nonnegative()) throw DomainError("nmf requires nonnegative data");
    if (k < 1 || static_cast<std::size_t>(k) >= std::min(m, n))
        throw DomainError("nmf requires k < min(attributes, elements)");
    constexpr double kEps = 1e-12;

    // dense row-major copy of A for the update products
    std::vector<double> Ar(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) Ar[i * n + j] = A(i, j);

    NmfFactors f;
    f.m = m;
    f.n = n;
    f.k = static_cast<std::size_t>(k);
    Rng rng(seed);
    f.W.resize(m * f.k);
    f.H.resize(f.k * n);
    for (double& w : f.W) w = rng.uniform01();
    for (double& h : f.H) h = rng.uniform01();

    const auto& kern = kernels::active();
    std::vector<double> WH(m * n), WtA(f.k * n), WtW(f.k * f.k), WtWH(f.k * n);
    std::vector<double> AHt(m * f.k), HHt(f.k * f.k), WHHt(m * f.k);

    auto residual = [&]() {
        matmul(f.W.data(), f.H.data(), WH.data(), m, f.k, n);
        double acc = 0.0;
        for (std::size_t i = 0; i < WH.size(); ++i) {
            const double d = Ar[i] - WH[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    };

    double prev = residual();
    f.residual_history.push_back(prev);
    for (int iter = 0; iter < max_iter; ++iter) {
        // H <- H .* (W^T A) ./ (W^T W H + eps)
        matmul_tn(f.W.data(), Ar.data(), WtA.data(), f.k, m, n);
        matmul_tn(f.W.data(), f.W.data(), WtW.data(), f.k, m, f.k);
        matmul(WtW.data(), f.H.data(), WtWH.data(), f.k, f.k, n);
        for (std::size_t i = 0; i < f.H.size(); ++i) f.H[i] *= WtA[i] / (WtWH[i] + kEps);

        // W <- W .* (A H^T) ./ (W H H^T + eps)
        matmul_nt(Ar.data(), f.H.data(), AHt.data(), m, n, f.k);
        matmul_nt(f.H.data(), f.H.data(), HHt.data(), f.k, n, f.k);
        matmul(f.W.data(), HHt.data(), WHHt.data(), m, f.k, f.k);
        for (std::size_t i = 0; i < f.W.size(); ++i) f.W[i] *= AHt[i] / (WHHt[i] + kEps);

        // rescale W columns to unit sum; WH is invariant under this
        for (std::size_t c = 0; c < f.k; ++c) {
            double colsum = 0.0;
            for (std::size_t i = 0; i < m; ++i) colsum += f.W[i * f.k + c];
            if (colsum < kEps) colsum = kEps;
            for (std::size_t i = 0; i < m; ++i) f.W[i * f.k + c] /= colsum;
            kern.scale(f.H.data() + c * n, colsum, n);
        }

        const double res = residual();
        f.residual_history.push_back(res);
        f.iterations = iter + 1;
        if (prev > 0.0 && std::fabs(prev - res) / prev < tol) {
            prev = res;
            break;
        }
        prev = res;
    }
    f.residual = prev;
    return f;
}

ClusteringResult assign_from_nmf(const NmfFactors& factors) {
    if (factors.H.empty()) throw DomainError("nmf factors missing H");
    ClusteringResult result;
    result.method = "nmf";
    result.k_requested = static_cast<int>(factors.k);
    result.labels.resize(factors.n);
    for (std::size_t j = 0; j < factors.n; ++j) {
        std::size_t best = 0;
        for (std::size_t r = 1; r < factors.k; ++r)
            if (factors.H[r * factors.n + j] > factors.H[best * factors.n + j]) best = r;
        result.labels[j] = static_cast<int>(best) + 1;
    }
    result.k = static_cast<int>(factors.k);
    return result;
}

int clustering_errors(const ClusteringResult& clustering, const ClusteringResult& truth) {
    const std::size_t n = truth.size();
    if (clustering.size() != n) throw DimensionError("clusterings have different lengths");
    const int kk = std::max(clustering.k, truth.k);
    if (kk > 12) throw DomainError("exhaustive matching supports at most 12 clusters");
    if (kk == 0) return 0;

    // contingency[a][b] = #elements with truth id a+1 and clustering id b+1
    std::vector<int> table(static_cast<std::size_t>(kk) * kk, 0);
    for (std::size_t j = 0; j < n; ++j)
        ++table[(truth.labels[j] - 1) * static_cast<std::size_t>(kk) + (clustering.labels[j] - 1)];

    std::vector<int> perm(kk);
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    do {
        int agree = 0;
        for (int b = 0; b < kk; ++b) agree += table[perm[b] * static_cast<std::size_t>(kk) + b];
        best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<int>(n) - best;
}

}  // namespace sca
