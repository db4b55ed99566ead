#include "rabi/kernels.hpp"

#include <cmath>

namespace rabi::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void band_symmv_scalar(const double* d, const double* e1, const double* e2,
                       const double* x, double* y, std::size_t n) {
    if (n == 0) return;
    for (std::size_t i = 0; i < n; ++i) y[i] = d[i] * x[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        y[i] += e1[i] * x[i + 1];
        y[i + 1] += e1[i] * x[i];
    }
    for (std::size_t i = 0; i + 2 < n; ++i) {
        y[i] += e2[i] * x[i + 2];
        y[i + 2] += e2[i] * x[i];
    }
}

void hermite_synth_scalar(const double* xi, std::size_t npts,
                          double psi0_prefac, const double* cm,
                          const double* cp, std::size_t nlev, const double* an,
                          const double* bn, double* phim, double* phip) {
    for (std::size_t j = 0; j < npts; ++j) {
        const double z = xi[j];
        double prev = 0.0;
        double cur = psi0_prefac * std::exp(-0.5 * z * z);
        double sm = cm[0] * cur;
        double sp = cp[0] * cur;
        for (std::size_t k = 0; k + 1 < nlev; ++k) {
            const double next = an[k] * z * cur - bn[k] * prev;
            prev = cur;
            cur = next;
            sm += cm[k + 1] * cur;
            sp += cp[k + 1] * cur;
        }
        phim[j] = sm;
        phip[j] = sp;
    }
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{dot_scalar, axpy_scalar, scal_scalar,
                               band_symmv_scalar, hermite_synth_scalar};
    return t;
}

} // namespace rabi::kernels::detail
