#include "rabi/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

#include "rabi/kernels.hpp"

namespace rabi {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Highest level whose classical turning point (plus margin) the grid covers;
// used by the recurrence self-test. Levels occupied by an accepted ground
// state always fit by the tail-weight construction.
int highest_fitting_level(double xi_max, int nmax) {
    const int n = static_cast<int>(std::floor(0.5 * ((xi_max - 3.0) * (xi_max - 3.0) - 1.0)));
    return std::max(0, std::min(nmax - 1, n));
}

void recurrence_self_test(const std::vector<double>& xi, double prefac,
                          int nmax, const std::vector<double>& an,
                          const std::vector<double>& bn, double h_x) {
    const int level = highest_fitting_level(std::abs(xi.back()), nmax);
    std::vector<double> psi(xi.size());
    kernels::hermite_level(xi.data(), xi.size(), prefac, level, an.data(),
                           bn.data(), psi.data());
    double mx = 0.0;
    for (double v : psi) {
        if (!std::isfinite(v))
            throw std::runtime_error("oscillator eigenfunction recurrence overflowed");
        mx = std::max(mx, std::abs(v));
    }
    const double norm = kernels::trapz_sq(psi.data(), psi.size(), h_x);
    if (std::abs(norm - 1.0) > 1e-8 || mx > 10.0)
        throw std::runtime_error("oscillator eigenfunction self-test failed");
}

} // namespace

GridSpec GridSpec::default_for(const ModelParams& p) {
    GridSpec g;
    const double half = p.x0() + 10.0 / std::sqrt(p.omega);
    g.xmin = -half;
    g.xmax = half;
    g.points = 4096;
    return g;
}

PositionWaveFunction synthesize(const GroundState& gs, const ModelParams& p,
                                const GridSpec& grid) {
    const double need = p.x0() + 8.0 / std::sqrt(p.omega);
    if (grid.xmin > -need || grid.xmax < need)
        throw std::invalid_argument(
            "grid must cover [-x0-8/sqrt(omega), x0+8/sqrt(omega)]");
    if (grid.points < 512)
        throw std::invalid_argument("grid must have at least 512 points");

    PositionWaveFunction out;
    out.x0 = p.x0();
    const int npts = grid.points;
    out.grid.resize(npts);
    const double h = grid.spacing();
    for (int j = 0; j < npts; ++j) out.grid[j] = grid.xmin + h * j;

    const double sw = std::sqrt(p.omega);
    std::vector<double> xi(npts);
    for (int j = 0; j < npts; ++j) xi[j] = sw * out.grid[j];

    const int nlev = gs.nmax;
    std::vector<double> an(nlev), bn(nlev);
    for (int k = 0; k < nlev; ++k) {
        an[k] = std::sqrt(2.0 / (k + 1.0));
        bn[k] = std::sqrt(k / (k + 1.0));
    }
    const double prefac = std::pow(p.omega / kPi, 0.25);

    recurrence_self_test(xi, prefac, nlev, an, bn, h);

    const std::vector<double> cm = gs.stripe(Spin::down);
    const std::vector<double> cp = gs.stripe(Spin::up);
    out.phi_minus.resize(npts);
    out.phi_plus.resize(npts);
    // psi_n(x) = omega^{1/4} u_n(xi); the omega^{1/4} is folded into prefac
    kernels::hermite_synth(xi.data(), npts, prefac, cm.data(), cp.data(), nlev,
                           an.data(), bn.data(), out.phi_minus.data(),
                           out.phi_plus.data());
    return out;
}

PolaronWeights polaron_weights(const PositionWaveFunction& w) {
    const std::size_t n = w.grid.size();
    if (n < 2) throw std::invalid_argument("wavefunction grid too small");
    const double span = w.grid.back() - w.grid.front();
    if (std::abs(w.grid.front() + w.grid.back()) > 1e-9 * span)
        throw std::invalid_argument("polaron weights require a grid symmetric about 0");

    double left_up = 0.0, right_up = 0.0, left_dn = 0.0, right_dn = 0.0;
    const double h = w.spacing();
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double uu0 = w.phi_plus[j] * w.phi_plus[j];
        const double uu1 = w.phi_plus[j + 1] * w.phi_plus[j + 1];
        const double dd0 = w.phi_minus[j] * w.phi_minus[j];
        const double dd1 = w.phi_minus[j + 1] * w.phi_minus[j + 1];
        if (w.grid[j + 1] <= 0.0) {
            left_up += 0.5 * h * (uu0 + uu1);
            left_dn += 0.5 * h * (dd0 + dd1);
        } else if (w.grid[j] >= 0.0) {
            right_up += 0.5 * h * (uu0 + uu1);
            right_dn += 0.5 * h * (dd0 + dd1);
        } else {
            // cell straddles 0: split by linear interpolation of phi^2
            left_up += 0.125 * h * (3.0 * uu0 + uu1);
            right_up += 0.125 * h * (uu0 + 3.0 * uu1);
            left_dn += 0.125 * h * (3.0 * dd0 + dd1);
            right_dn += 0.125 * h * (dd0 + 3.0 * dd1);
        }
    }
    PolaronWeights pw;
    pw.polaron_up = left_up;  // spin-up well sits at -x0
    pw.anti_up = right_up;
    pw.polaron_down = right_dn; // spin-down well sits at +x0
    pw.anti_down = left_dn;
    return pw;
}

bool is_anti_polaron_overweighted(const PolaronWeights& pw, Spin s) {
    return pw.anti_polaron(s) > pw.polaron(s);
}

} // namespace rabi
