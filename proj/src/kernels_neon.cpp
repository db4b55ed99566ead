#include "rabi/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace rabi::kernels::detail {

namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_neon(double alpha, double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

void band_symmv_neon(const double* d, const double* e1, const double* e2,
                     const double* x, double* y, std::size_t n) {
    if (n < 8) {
        scalar_table().band_symmv(d, e1, e2, x, y, n);
        return;
    }
    y[0] = d[0] * x[0] + e1[0] * x[1] + e2[0] * x[2];
    y[1] = d[1] * x[1] + e1[0] * x[0] + e1[1] * x[2] + e2[1] * x[3];
    std::size_t i = 2;
    for (; i + 2 <= n - 2; i += 2) {
        float64x2_t acc = vmulq_f64(vld1q_f64(d + i), vld1q_f64(x + i));
        acc = vfmaq_f64(acc, vld1q_f64(e1 + i), vld1q_f64(x + i + 1));
        acc = vfmaq_f64(acc, vld1q_f64(e1 + i - 1), vld1q_f64(x + i - 1));
        acc = vfmaq_f64(acc, vld1q_f64(e2 + i), vld1q_f64(x + i + 2));
        acc = vfmaq_f64(acc, vld1q_f64(e2 + i - 2), vld1q_f64(x + i - 2));
        vst1q_f64(y + i, acc);
    }
    for (; i < n - 2; ++i)
        y[i] = d[i] * x[i] + e1[i] * x[i + 1] + e1[i - 1] * x[i - 1] +
               e2[i] * x[i + 2] + e2[i - 2] * x[i - 2];
    y[n - 2] = d[n - 2] * x[n - 2] + e1[n - 3] * x[n - 3] +
               e1[n - 2] * x[n - 1] + e2[n - 4] * x[n - 4];
    y[n - 1] = d[n - 1] * x[n - 1] + e1[n - 2] * x[n - 2] + e2[n - 3] * x[n - 3];
}

void hermite_synth_neon(const double* xi, std::size_t npts, double psi0_prefac,
                        const double* cm, const double* cp, std::size_t nlev,
                        const double* an, const double* bn, double* phim,
                        double* phip) {
    std::size_t j = 0;
    for (; j + 2 <= npts; j += 2) {
        const float64x2_t z = vld1q_f64(xi + j);
        double seed[2] = {psi0_prefac * std::exp(-0.5 * xi[j] * xi[j]),
                          psi0_prefac * std::exp(-0.5 * xi[j + 1] * xi[j + 1])};
        float64x2_t cur = vld1q_f64(seed);
        float64x2_t prev = vdupq_n_f64(0.0);
        float64x2_t sm = vmulq_f64(vdupq_n_f64(cm[0]), cur);
        float64x2_t sp = vmulq_f64(vdupq_n_f64(cp[0]), cur);
        for (std::size_t k = 0; k + 1 < nlev; ++k) {
            float64x2_t next = vmulq_f64(vmulq_n_f64(z, an[k]), cur);
            next = vfmsq_f64(next, vdupq_n_f64(bn[k]), prev);
            prev = cur;
            cur = next;
            sm = vfmaq_f64(sm, vdupq_n_f64(cm[k + 1]), cur);
            sp = vfmaq_f64(sp, vdupq_n_f64(cp[k + 1]), cur);
        }
        vst1q_f64(phim + j, sm);
        vst1q_f64(phip + j, sp);
    }
    if (j < npts)
        scalar_table().hermite_synth(xi + j, npts - j, psi0_prefac, cm, cp,
                                     nlev, an, bn, phim + j, phip + j);
}

} // namespace

const KernelTable& neon_table() {
    static const KernelTable t{dot_neon, axpy_neon, scal_neon, band_symmv_neon,
                               hermite_synth_neon};
    return t;
}

} // namespace rabi::kernels::detail

#endif // aarch64
