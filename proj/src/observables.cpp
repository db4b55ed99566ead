#include "rabi/observables.hpp"

#include <algorithm>
#include <cmath>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

} // namespace

double spin_weight(const GroundState& gs, Spin s) {
    double w = 0.0;
    for (int n = 0; n < gs.nmax; ++n) {
        const double c = gs.coeff(s, n);
        w += c * c;
    }
    return w;
}

double entanglement_entropy(const GroundState& gs) {
    // rho_q = [[<phi_+|phi_+>, <phi_+|phi_->], [., <phi_-|phi_->]]
    double a = 0.0, d = 0.0, b = 0.0;
    for (int n = 0; n < gs.nmax; ++n) {
        const double cu = gs.coeff(Spin::up, n);
        const double cd = gs.coeff(Spin::down, n);
        a += cu * cu;
        d += cd * cd;
        b += cu * cd;
    }
    const double mean = 0.5 * (a + d);
    const double delta = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    double p1 = mean + delta;
    double p2 = mean - delta;
    const double clamp = std::max({0.0, p1 - 1.0, -p2});
    if (clamp > 1e-12)
        throw SolverError("qubit density matrix eigenvalue clamp exceeds 1e-12");
    p1 = std::clamp(p1, 0.0, 1.0);
    p2 = std::clamp(p2, 0.0, 1.0);
    return -(xlog2x(p1) + xlog2x(p2));
}

double conditional_displacement(const GroundState& gs, Spin s) {
    const double w = spin_weight(gs, s);
    if (w < 1e-14)
        throw VanishingWeight(
            "conditional displacement undefined for a fully polarized spin "
            "component");
    double num = 0.0;
    for (int n = 0; n + 1 < gs.nmax; ++n)
        num += 2.0 * std::sqrt(n + 1.0) * gs.coeff(s, n) * gs.coeff(s, n + 1);
    return num / w;
}

double parity_expectation(const GroundState& gs) {
    return parity_of(gs.coeffs, gs.nmax);
}

ObservableSet observable_set(const GroundState& gs) {
    ObservableSet obs;
    obs.entropy = entanglement_entropy(gs);
    obs.weight_plus = spin_weight(gs, Spin::up);
    obs.weight_minus = spin_weight(gs, Spin::down);
    obs.x_plus = conditional_displacement(gs, Spin::up);
    obs.x_minus = conditional_displacement(gs, Spin::down);
    obs.parity = parity_expectation(gs);
    return obs;
}

} // namespace rabi
