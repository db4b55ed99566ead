#pragma once

#include <string>
#include <vector>

#include "rabi/eigensolver.hpp"
#include "rabi/model.hpp"
#include "rabi/observables.hpp"

namespace rabi {

struct SweepRow {
    double g = 0.0;
    double g_over_gc = 0.0;
    double energy = 0.0;
    ObservableSet obs;
    bool overweighted_plus = false;
    bool ok = true;          // per-point solver failures are flagged, not fatal
    std::string error;
};

struct SweepResult {
    ModelParams base;        // swept axis value ignored
    SolverOptions options;
    std::vector<SweepRow> rows; // strictly ordered by the swept variable
};

// Uniform scan over g in [g_min, g_max] inclusive; rows go through
// ground_state -> observables -> polaron weights. Points are independent
// jobs; `workers` bounds the thread count (values are identical for any
// worker count, output is ordered by g).
SweepResult scan_g(const ModelParams& base, double g_min, double g_max,
                   int points, const SolverOptions& options = {},
                   int workers = 1);

struct TransitionPoint {
    enum class Kind { G0, EpsilonC };
    Kind kind = Kind::G0;
    double value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
};

// Coupling where X_+ flips sign, located by bisection from [g_c, 4 g_c]
// (expanded right, or left when the flip sits below g_c). Requires
// epsilon < omega; throws NoSignChange otherwise or when no bracket exists.
TransitionPoint find_g0(const ModelParams& base, double tol,
                        const SolverOptions& options = {});

// Asymmetry where the small-g displacement X_+ changes sign, probed at
// g = 1e-3 g_c, bisected over epsilon in [omega/2, 2 omega].
TransitionPoint find_epsilon_c(double omega, double Omega, double tol,
                               const SolverOptions& options = {});

} // namespace rabi
