#pragma once

#include "rabi/eigensolver.hpp"
#include "rabi/model.hpp"

namespace rabi {

struct ObservableSet {
    double entropy = 0.0;      // S in bits
    double x_plus = 0.0;       // conditional displacement, spin up
    double x_minus = 0.0;      // conditional displacement, spin down
    double weight_plus = 0.0;  // <phi_+|phi_+>
    double weight_minus = 0.0; // <phi_-|phi_->
    double parity = 0.0;       // <Pi>
};

// von Neumann entropy of the qubit reduced density matrix, log base 2
double entanglement_entropy(const GroundState& gs);

// <a + a^+> in the weight-normalized conditional oscillator state.
// Throws VanishingWeight when the spin weight is below 1e-14.
double conditional_displacement(const GroundState& gs, Spin s);

// 2 sum_n (-1)^n c_{+,n} c_{-,n}
double parity_expectation(const GroundState& gs);

double spin_weight(const GroundState& gs, Spin s);

ObservableSet observable_set(const GroundState& gs);

} // namespace rabi
