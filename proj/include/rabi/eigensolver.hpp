#pragma once

#include <optional>
#include <vector>

#include "rabi/model.hpp"

namespace rabi {

struct SolverOptions {
    std::optional<int> nmax;      // override adaptive truncation
    double tol_residual = 1e-10;  // ||Hv - Ev|| <= tol * max(1,|E|)
    double tail_weight = 1e-13;   // acceptance threshold for the top-1% window
    int max_nmax = 8192;          // adaptive cap
    int max_matvecs = 200000;     // IterationLimit guard
};

struct GroundState {
    double energy = 0.0;
    std::vector<double> coeffs; // c_{s,n}, interleaved (down,n),(up,n)
    int nmax = 0;
    double residual = 0.0;
    double tail_weight = 0.0;
    int iterations = 0; // matvec count spent

    double coeff(Spin s, int n) const {
        return coeffs[HamiltonianMatrix::index(s, n)];
    }
    // contiguous copy of one spin stripe, length nmax
    std::vector<double> stripe(Spin s) const;
};

// Fock-level count the adaptive scheme starts from.
int adaptive_start_nmax(const ModelParams& p);

// Weight in the top 1% of Fock levels (at least one level).
double tail_weight_of(const std::vector<double>& coeffs, int nmax);

// Ground state with adaptive truncation (start at max(64, ceil(4*(2g/w)^2)+64),
// double until the tail weight criterion holds, cap at options.max_nmax).
// Throws NonConvergence / IterationLimit.
GroundState ground_state(const ModelParams& p, const SolverOptions& options = {});

// Ground state of a fixed matrix via the iterative path.
GroundState ground_state_of(const HamiltonianMatrix& h, const SolverOptions& options = {});

// Independent verification path: full dense symmetric diagonalization
// (Eigen). Rejects dimensions above 2000. Same sign and parity conventions
// as the iterative solver.
GroundState dense_oracle_ground_state(const HamiltonianMatrix& h);

// <Pi> = 2 sum_n (-1)^n c_{+,n} c_{-,n} for a raw coefficient vector.
double parity_of(const std::vector<double>& coeffs, int nmax);

} // namespace rabi
