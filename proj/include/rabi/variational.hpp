#pragma once

#include <array>
#include <map>
#include <string>

#include "rabi/model.hpp"

namespace rabi {

enum class Ansatz { FixedLambda, GVM, FourCoherent, SmallG };

const char* ansatz_name(Ansatz a);

struct VariationalSolution {
    Ansatz ansatz = Ansatz::GVM;
    std::map<std::string, double> params;
    double energy = 0.0;
    bool converged = false;
    int iterations = 0;
};

// E(lambda,theta) = w l^2 - 2 g l + (Omega e^{-2l^2} sin(theta)
//                   + epsilon cos(theta))/2
double energy_two_state(const ModelParams& p, double lambda, double theta);

// theta eliminated on the minimizing branch:
// E_G(l) = w l^2 - 2 g l - sqrt(Omega^2 e^{-4l^2} + epsilon^2)/2
double two_state_energy_lambda(const ModelParams& p, double lambda);

enum class TwoStateMode { FixedLambda, GVM };

// FixedLambda evaluates at lambda = g/omega; GVM minimizes E_G over
// lambda in [0, 2g/omega] (global scan + derivative bisection, |E'|<=1e-12).
VariationalSolution minimize_two_state(const ModelParams& p, TwoStateMode mode);

// |Psi> = sum over four coherent components:
//   index 0: spin down, polaron    1: spin down, anti-polaron
//   index 2: spin up,   polaron    3: spin up,   anti-polaron
struct FourCoherentParams {
    std::array<double, 4> amp{};  // raw amplitudes (C folded in)
    std::array<double, 4> disp{}; // coherent displacements
};

// <Psi|H|Psi>/<Psi|Psi> from the real coherent-state overlap rules.
// Throws DegenerateState when the norm underflows.
double energy_four_coherent(const ModelParams& p, const FourCoherentParams& q);

// Deterministic multi-start Nelder-Mead over the 8 raw parameters, with the
// amplitudes polished by an exact 4x4 generalized eigensolve at the final
// displacements. Never throws on non-convergence (flagged instead).
VariationalSolution minimize_four_coherent(const ModelParams& p);

// quadratic-order energy of the two-coherent-state ansatz
// (requires a1^2 + a2^2 = 1 within 1e-10)
double energy_small_g(const ModelParams& p, double a1, double a2, double l1,
                      double l2);

// closed-form critical-point solution of the quadratic-order ansatz;
// epsilon_c = omega exactly at g = 0. Documented validity g << g_c.
VariationalSolution small_g_solution(const ModelParams& p);

} // namespace rabi
