#include "rabi/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace rabi::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(double alpha, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

void band_symmv_avx2(const double* d, const double* e1, const double* e2,
                     const double* x, double* y, std::size_t n) {
    if (n < 8) {
        scalar_table().band_symmv(d, e1, e2, x, y, n);
        return;
    }
    // edge rows scalar, interior rows vectorized with shifted loads
    y[0] = d[0] * x[0] + e1[0] * x[1] + e2[0] * x[2];
    y[1] = d[1] * x[1] + e1[0] * x[0] + e1[1] * x[2] + e2[1] * x[3];
    std::size_t i = 2;
    for (; i + 4 <= n - 2; i += 4) {
        __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(x + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(e1 + i), _mm256_loadu_pd(x + i + 1), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(e1 + i - 1), _mm256_loadu_pd(x + i - 1), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(e2 + i), _mm256_loadu_pd(x + i + 2), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(e2 + i - 2), _mm256_loadu_pd(x + i - 2), acc);
        _mm256_storeu_pd(y + i, acc);
    }
    for (; i < n - 2; ++i)
        y[i] = d[i] * x[i] + e1[i] * x[i + 1] + e1[i - 1] * x[i - 1] +
               e2[i] * x[i + 2] + e2[i - 2] * x[i - 2];
    y[n - 2] = d[n - 2] * x[n - 2] + e1[n - 3] * x[n - 3] +
               e1[n - 2] * x[n - 1] + e2[n - 4] * x[n - 4];
    y[n - 1] = d[n - 1] * x[n - 1] + e1[n - 2] * x[n - 2] + e2[n - 3] * x[n - 3];
}

void hermite_synth_avx2(const double* xi, std::size_t npts, double psi0_prefac,
                        const double* cm, const double* cp, std::size_t nlev,
                        const double* an, const double* bn, double* phim,
                        double* phip) {
    const __m256d vpref = _mm256_set1_pd(psi0_prefac);
    const __m256d vhalf = _mm256_set1_pd(-0.5);
    std::size_t j = 0;
    for (; j + 4 <= npts; j += 4) {
        const __m256d z = _mm256_loadu_pd(xi + j);
        // exp has no AVX2 primitive; evaluate the 4 seeds scalar
        alignas(32) double z2[4], seed[4];
        _mm256_store_pd(z2, _mm256_mul_pd(_mm256_mul_pd(vhalf, z), z));
        for (int t = 0; t < 4; ++t) seed[t] = std::exp(z2[t]);
        __m256d cur = _mm256_mul_pd(vpref, _mm256_load_pd(seed));
        __m256d prev = _mm256_setzero_pd();
        __m256d sm = _mm256_mul_pd(_mm256_set1_pd(cm[0]), cur);
        __m256d sp = _mm256_mul_pd(_mm256_set1_pd(cp[0]), cur);
        for (std::size_t k = 0; k + 1 < nlev; ++k) {
            const __m256d va = _mm256_set1_pd(an[k]);
            const __m256d vb = _mm256_set1_pd(bn[k]);
            __m256d next = _mm256_fmsub_pd(_mm256_mul_pd(va, z), cur,
                                           _mm256_mul_pd(vb, prev));
            prev = cur;
            cur = next;
            sm = _mm256_fmadd_pd(_mm256_set1_pd(cm[k + 1]), cur, sm);
            sp = _mm256_fmadd_pd(_mm256_set1_pd(cp[k + 1]), cur, sp);
        }
        _mm256_storeu_pd(phim + j, sm);
        _mm256_storeu_pd(phip + j, sp);
    }
    if (j < npts)
        scalar_table().hermite_synth(xi + j, npts - j, psi0_prefac, cm, cp,
                                     nlev, an, bn, phim + j, phip + j);
}

} // namespace

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const KernelTable& avx2_table() {
    static const KernelTable t{dot_avx2, axpy_avx2, scal_avx2, band_symmv_avx2,
                               hermite_synth_avx2};
    return t;
}

} // namespace rabi::kernels::detail

#endif // x86_64
