#include "rabi/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace rabi::kernels {

namespace {

using detail::KernelTable;

Isa default_isa() {
    if (const char* env = std::getenv("RABI_KERNELS")) {
        const std::string s(env);
        if (s == "scalar") return Isa::scalar;
#if defined(__x86_64__) || defined(_M_X64)
        if (s == "avx2" && detail::avx2_supported()) return Isa::avx2;
#endif
#if defined(__aarch64__)
        if (s == "neon") return Isa::neon;
#endif
        if (s != "auto" && !s.empty()) return Isa::scalar;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (detail::avx2_supported()) return Isa::avx2;
#endif
#if defined(__aarch64__)
    return Isa::neon;
#endif
    return Isa::scalar;
}

struct State {
    Isa isa;
    const KernelTable* table;
};

State make_state(Isa isa) {
    switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
        case Isa::avx2:
            return {Isa::avx2, &detail::avx2_table()};
#endif
#if defined(__aarch64__)
        case Isa::neon:
            return {Isa::neon, &detail::neon_table()};
#endif
        default:
            return {Isa::scalar, &detail::scalar_table()};
    }
}

State& state() {
    static State s = make_state(default_isa());
    return s;
}

} // namespace

Isa active_isa() { return state().isa; }

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
        default: return "scalar";
    }
}

void force_isa(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            break;
        case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (detail::avx2_supported()) break;
#endif
            throw std::invalid_argument("avx2 kernels not supported on this CPU");
        case Isa::neon:
#if defined(__aarch64__)
            break;
#else
            throw std::invalid_argument("neon kernels not supported on this CPU");
#endif
    }
    state() = make_state(isa);
}

void force_isa(const std::string& name) {
    if (name == "scalar") force_isa(Isa::scalar);
    else if (name == "avx2") force_isa(Isa::avx2);
    else if (name == "neon") force_isa(Isa::neon);
    else if (name == "auto") state() = make_state(default_isa());
    else throw std::invalid_argument("unknown kernel ISA: " + name);
}

double dot(const double* a, const double* b, std::size_t n) {
    return state().table->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    state().table->axpy(alpha, x, y, n);
}

void scal(double alpha, double* x, std::size_t n) {
    state().table->scal(alpha, x, n);
}

double nrm2(const double* x, std::size_t n) {
    return std::sqrt(state().table->dot(x, x, n));
}

void band_symmv(const double* d, const double* e1, const double* e2,
                const double* x, double* y, std::size_t n) {
    state().table->band_symmv(d, e1, e2, x, y, n);
}

void hermite_synth(const double* xi, std::size_t npts, double psi0_prefac,
                   const double* cm, const double* cp, std::size_t nlev,
                   const double* an, const double* bn, double* phim,
                   double* phip) {
    state().table->hermite_synth(xi, npts, psi0_prefac, cm, cp, nlev, an, bn,
                                 phim, phip);
}

void hermite_level(const double* xi, std::size_t npts, double psi0_prefac,
                   std::size_t level, const double* an, const double* bn,
                   double* out) {
    for (std::size_t j = 0; j < npts; ++j) {
        const double z = xi[j];
        double prev = 0.0;
        double cur = psi0_prefac * std::exp(-0.5 * z * z);
        for (std::size_t k = 0; k < level; ++k) {
            const double next = an[k] * z * cur - bn[k] * prev;
            prev = cur;
            cur = next;
        }
        out[j] = cur;
    }
}

double trapz_sq(const double* f, std::size_t n, double h) {
    if (n < 2) return 0.0;
    double s = dot(f, f, n);
    s -= 0.5 * (f[0] * f[0] + f[n - 1] * f[n - 1]);
    return s * h;
}

} // namespace rabi::kernels
