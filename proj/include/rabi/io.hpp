#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rabi/sweep.hpp"
#include "rabi/variational.hpp"
#include "rabi/wavefunction.hpp"

namespace rabi::io {

// shortest representation that round-trips (<= 17 significant digits)
std::string format_double(double v);

// header: g,g_over_gc,energy,entropy,x_plus,x_minus,weight_plus,weight_minus,parity,overweighted_plus
void write_scan_csv(std::ostream& os, const SweepResult& result);
nlohmann::json scan_json(const SweepResult& result);

// header: x,phi_plus,phi_minus
void write_wavefunction_csv(std::ostream& os, const PositionWaveFunction& w);
nlohmann::json wavefunction_json(const PositionWaveFunction& w);

void write_ground_csv(std::ostream& os, const ModelParams& p,
                      const GroundState& gs, const ObservableSet& obs);
nlohmann::json ground_json(const ModelParams& p, const GroundState& gs,
                           const ObservableSet& obs);

void write_transition_csv(std::ostream& os, const TransitionPoint& t);
nlohmann::json transition_json(const TransitionPoint& t);

void write_variational_csv(std::ostream& os, const VariationalSolution& sol);
nlohmann::json variational_json(const ModelParams& p,
                                const VariationalSolution& sol);

nlohmann::json params_json(const ModelParams& p);
nlohmann::json options_json(const SolverOptions& o);

} // namespace rabi::io
