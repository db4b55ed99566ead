#pragma once

#include <cstddef>
#include <vector>

namespace rabi {

enum class Spin { down = 0, up = 1 }; // eigenstates of sigma_z, s = -1 / +1

inline int spin_sign(Spin s) { return s == Spin::up ? +1 : -1; }

// Couplings of H = omega a^+a + (Omega/2) sigma_x + (epsilon/2) sigma_z
//                 + g sigma_z (a + a^+), all in units of Omega.
struct ModelParams {
    double omega = 1.0;   // oscillator frequency
    double Omega = 1.0;   // tunneling rate (energy unit)
    double epsilon = 0.0; // asymmetry strength
    double g = 0.0;       // coupling strength

    // g_c = sqrt(omega*Omega)/2, scale of the superradiance-like transition
    double critical_coupling() const;
    // x0 = sqrt(2 g^2 / omega^3), displaced-well position
    double x0() const;
    // X0 = 2g/omega, saturation value of the conditional displacement
    double X0() const;

    void validate() const; // throws std::invalid_argument
};

// H_A = omega a^+a + g sigma_x (a+a^+) + Delta sigma_z + epsilonPrime sigma_x
struct AsymmetricParams {
    double omega = 1.0;
    double Delta = -0.5;        // qubit half-splitting, must be negative
    double epsilonPrime = 0.0;  // sigma_x asymmetry
    double g = 0.0;
};

// Spin rotation exp(i pi/4 sigma_y): epsilon = 2 epsilonPrime, Omega = -2 Delta.
ModelParams from_asymmetric_form(const AsymmetricParams& p);

double critical_coupling(const ModelParams& p);

// Symmetric matrix in the spin (x) Fock basis, interleaved ordering
// (down,n),(up,n) so index(s,n) = 2n + (s==up). Three stored bands:
//   diag[i]  = omega*n + s*epsilon/2
//   off1[i]  = entry (i,i+1): Omega/2 between (down,n) and (up,n), else 0
//   off2[i]  = entry (i,i+2): s*g*sqrt(n+1) within one spin stripe
struct HamiltonianMatrix {
    int nmax = 0; // Fock levels; dimension is 2*nmax
    ModelParams params;
    std::vector<double> diag, off1, off2;

    std::size_t dim() const { return diag.size(); }
    static std::size_t index(Spin s, int n) {
        return 2 * static_cast<std::size_t>(n) + (s == Spin::up ? 1 : 0);
    }
    double entry(std::size_t i, std::size_t j) const;

    // y = H x
    void apply(const double* x, double* y) const;

    // count of stored symmetric-pair slots: diagonal + both triangles of
    // the coupling and spin-flip bands
    std::size_t stored_slot_count() const;
};

HamiltonianMatrix build_hamiltonian(const ModelParams& p, int nmax);

} // namespace rabi
