#pragma once

#include <cstddef>
#include <string>

// Double-precision inner loops shared by the eigensolver and the wavefunction
// synthesis. Every kernel has a scalar reference implementation plus SIMD
// variants (AVX2+FMA on x86-64, NEON on aarch64) selected once at runtime.
// The scalar versions are the semantic definition; SIMD variants must agree
// within floating-point reassociation tolerance (see tests/test_kernels.cpp).

namespace rabi::kernels {

enum class Isa { scalar, avx2, neon };

// ISA chosen for this process (honours RABI_KERNELS=scalar|avx2|neon|auto).
Isa active_isa();
const char* isa_name(Isa isa);

// Force a specific ISA (throws std::invalid_argument if unsupported on this
// CPU). Used by tests and the --kernels CLI flag.
void force_isa(Isa isa);
void force_isa(const std::string& name);

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n); // y += alpha*x
void scal(double alpha, double* x, std::size_t n);
double nrm2(const double* x, std::size_t n);

// y = A x for the symmetric banded Hamiltonian: diagonal d[0..n), first
// off-diagonal e1[0..n-1) (entry (i,i+1)), second off-diagonal e2[0..n-2)
// (entry (i,i+2)).
void band_symmv(const double* d, const double* e1, const double* e2,
                const double* x, double* y, std::size_t n);

// phi_minus(x) = sum_n cm[n] psi_n(x), phi_plus(x) = sum_n cp[n] psi_n(x)
// with psi_n the unit-mass oscillator eigenfunctions evaluated through the
// normalized three-term recurrence in xi = sqrt(omega)*x:
//   psi_{n+1} = sqrt(2/(n+1)) xi psi_n - sqrt(n/(n+1)) psi_{n-1},
//   psi_0 = (omega/pi)^{1/4} exp(-xi^2/2).
// an[k] = sqrt(2/(k+1)), bn[k] = sqrt(k/(k+1)) are precomputed by the caller.
void hermite_synth(const double* xi, std::size_t npts, double psi0_prefac,
                   const double* cm, const double* cp, std::size_t nlev,
                   const double* an, const double* bn,
                   double* phim, double* phip);

// Single oscillator level on a grid (self-test helper): out[j] = psi_n(xi[j]).
void hermite_level(const double* xi, std::size_t npts, double psi0_prefac,
                   std::size_t level, const double* an, const double* bn,
                   double* out);

// sum_j w_j * f[j]^2 with trapezoid end weights over a uniform grid of
// spacing h (w = h except h/2 at both ends).
double trapz_sq(const double* f, std::size_t n, double h);

namespace detail {
struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
    void (*band_symmv)(const double*, const double*, const double*,
                       const double*, double*, std::size_t);
    void (*hermite_synth)(const double*, std::size_t, double, const double*,
                          const double*, std::size_t, const double*,
                          const double*, double*, double*);
};
const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
bool avx2_supported();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif
} // namespace detail

} // namespace rabi::kernels
