#include "rabi/model.hpp"

#include <cmath>
#include <stdexcept>

#include "rabi/kernels.hpp"

namespace rabi {

double ModelParams::critical_coupling() const {
    return 0.5 * std::sqrt(omega * Omega);
}

double ModelParams::x0() const {
    return std::sqrt(2.0 * g * g / (omega * omega * omega));
}

double ModelParams::X0() const { return 2.0 * g / omega; }

void ModelParams::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(Omega >= 0.0)) throw std::invalid_argument("Omega must be non-negative");
    if (!(g >= 0.0)) throw std::invalid_argument("g must be non-negative");
    if (!(epsilon >= 0.0))
        throw std::invalid_argument(
            "epsilon must be non-negative (negative asymmetry is the mirrored "
            "spin convention and is rejected rather than silently mapped)");
}

ModelParams from_asymmetric_form(const AsymmetricParams& p) {
    if (!(p.Delta < 0.0))
        throw std::invalid_argument(
            "Delta must be negative so that Omega = -2*Delta > 0 under the "
            "spin rotation");
    ModelParams out;
    out.omega = p.omega;
    out.Omega = -2.0 * p.Delta;
    out.epsilon = 2.0 * p.epsilonPrime;
    out.g = p.g;
    out.validate();
    return out;
}

double critical_coupling(const ModelParams& p) { return p.critical_coupling(); }

double HamiltonianMatrix::entry(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    if (j >= dim()) throw std::out_of_range("HamiltonianMatrix::entry");
    if (i == j) return diag[i];
    if (j == i + 1) return off1[i];
    if (j == i + 2) return off2[i];
    return 0.0;
}

void HamiltonianMatrix::apply(const double* x, double* y) const {
    kernels::band_symmv(diag.data(), off1.data(), off2.data(), x, y, dim());
}

std::size_t HamiltonianMatrix::stored_slot_count() const {
    // diagonal + both triangles of the coupling band + both triangles of the
    // spin-flip band (off1 carries one structural slot per Fock level)
    return dim() + 2 * off2.size() + 2 * static_cast<std::size_t>(nmax);
}

HamiltonianMatrix build_hamiltonian(const ModelParams& p, int nmax) {
    p.validate();
    if (nmax < 2) throw std::invalid_argument("nmax must be >= 2");
    HamiltonianMatrix h;
    h.nmax = nmax;
    h.params = p;
    const std::size_t dim = 2 * static_cast<std::size_t>(nmax);
    h.diag.resize(dim);
    h.off1.assign(dim - 1, 0.0);
    h.off2.assign(dim - 2, 0.0);
    for (int n = 0; n < nmax; ++n) {
        h.diag[2 * n] = p.omega * n - 0.5 * p.epsilon;     // spin down
        h.diag[2 * n + 1] = p.omega * n + 0.5 * p.epsilon; // spin up
        h.off1[2 * n] = 0.5 * p.Omega;
        if (n + 1 < nmax) {
            const double c = p.g * std::sqrt(static_cast<double>(n + 1));
            h.off2[2 * n] = -c;    // spin down stripe
            h.off2[2 * n + 1] = c; // spin up stripe
        }
    }
    return h;
}

} // namespace rabi
