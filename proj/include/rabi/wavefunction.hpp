#pragma once

#include <vector>

#include "rabi/eigensolver.hpp"
#include "rabi/model.hpp"

namespace rabi {

struct GridSpec {
    double xmin = -10.0;
    double xmax = 10.0;
    int points = 4096;

    // symmetric grid of 4096 points over [-x0 - 10/sqrt(omega), +...]
    static GridSpec default_for(const ModelParams& p);

    double spacing() const { return (xmax - xmin) / (points - 1); }
};

struct PositionWaveFunction {
    std::vector<double> grid;      // monotone x values
    std::vector<double> phi_plus;  // spin-up oscillator component
    std::vector<double> phi_minus; // spin-down oscillator component
    double x0 = 0.0;

    double spacing() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
};

// phi_s(x) = sum_n c_{s,n} psi_n(x) with unit-mass oscillator eigenfunctions
// of frequency omega, via the stable normalized recurrence. Validates the
// grid coverage precondition [-x0-8/sqrt(w), x0+8/sqrt(w)], >= 512 points.
PositionWaveFunction synthesize(const GroundState& gs, const ModelParams& p,
                                const GridSpec& grid);

struct PolaronWeights {
    // probability mass of phi_s^2 on the polaron side (x<0 for spin up,
    // x>0 for spin down) and the anti-polaron side of x=0
    double polaron_up = 0.0, anti_up = 0.0;
    double polaron_down = 0.0, anti_down = 0.0;

    double polaron(Spin s) const { return s == Spin::up ? polaron_up : polaron_down; }
    double anti_polaron(Spin s) const { return s == Spin::up ? anti_up : anti_down; }
};

// Trapezoid integrals of phi_s^2 over the two half-lines; requires a grid
// symmetric about 0.
PolaronWeights polaron_weights(const PositionWaveFunction& w);

// true iff the anti-polaron carries more mass than the polaron for this
// spin; an exact tie is false
bool is_anti_polaron_overweighted(const PolaronWeights& pw, Spin s);

} // namespace rabi
