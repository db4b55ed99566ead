#include "rabi/io.hpp"

#include <charconv>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

namespace rabi::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

const char* bool_str(bool b) { return b ? "true" : "false"; }

} // namespace

void write_scan_csv(std::ostream& os, const SweepResult& result) {
    os << "g,g_over_gc,energy,entropy,x_plus,x_minus,weight_plus,"
          "weight_minus,parity,overweighted_plus\n";
    for (const SweepRow& r : result.rows) {
        os << format_double(r.g) << ',' << format_double(r.g_over_gc) << ','
           << format_double(r.energy) << ',' << format_double(r.obs.entropy)
           << ',' << format_double(r.obs.x_plus) << ','
           << format_double(r.obs.x_minus) << ','
           << format_double(r.obs.weight_plus) << ','
           << format_double(r.obs.weight_minus) << ','
           << format_double(r.obs.parity) << ',' << bool_str(r.overweighted_plus)
           << '\n';
    }
}

json params_json(const ModelParams& p) {
    return json{{"omega", p.omega},
                {"Omega", p.Omega},
                {"epsilon", p.epsilon},
                {"g", p.g},
                {"g_c", p.critical_coupling()},
                {"x0", p.x0()},
                {"X0", p.X0()}};
}

json options_json(const SolverOptions& o) {
    json j{{"tol_residual", o.tol_residual},
           {"tail_weight", o.tail_weight},
           {"max_nmax", o.max_nmax}};
    if (o.nmax) j["nmax"] = *o.nmax;
    return j;
}

json scan_json(const SweepResult& result) {
    json rows = json::array();
    for (const SweepRow& r : result.rows) {
        json row{{"g", r.g},
                 {"g_over_gc", r.g_over_gc},
                 {"energy", r.energy},
                 {"entropy", r.obs.entropy},
                 {"x_plus", r.obs.x_plus},
                 {"x_minus", r.obs.x_minus},
                 {"weight_plus", r.obs.weight_plus},
                 {"weight_minus", r.obs.weight_minus},
                 {"parity", r.obs.parity},
                 {"overweighted_plus", r.overweighted_plus},
                 {"ok", r.ok}};
        if (!r.ok) row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    ModelParams base = result.base;
    base.g = 0.0;
    return json{{"params", params_json(base)},
                {"options", options_json(result.options)},
                {"generator", "rabi 1.0.0"},
                {"rows", std::move(rows)}};
}

void write_wavefunction_csv(std::ostream& os, const PositionWaveFunction& w) {
    os << "x,phi_plus,phi_minus\n";
    for (std::size_t j = 0; j < w.grid.size(); ++j)
        os << format_double(w.grid[j]) << ',' << format_double(w.phi_plus[j])
           << ',' << format_double(w.phi_minus[j]) << '\n';
}

json wavefunction_json(const PositionWaveFunction& w) {
    return json{{"x0", w.x0},
                {"x", w.grid},
                {"phi_plus", w.phi_plus},
                {"phi_minus", w.phi_minus}};
}

void write_ground_csv(std::ostream& os, const ModelParams& p,
                      const GroundState& gs, const ObservableSet& obs) {
    os << "g,g_over_gc,energy,entropy,x_plus,x_minus,weight_plus,"
          "weight_minus,parity,nmax,residual,tail_weight\n";
    const double gc = p.critical_coupling();
    os << format_double(p.g) << ','
       << format_double(gc > 0.0 ? p.g / gc
                                 : std::numeric_limits<double>::quiet_NaN())
       << ',' << format_double(gs.energy) << ',' << format_double(obs.entropy)
       << ',' << format_double(obs.x_plus) << ',' << format_double(obs.x_minus)
       << ',' << format_double(obs.weight_plus) << ','
       << format_double(obs.weight_minus) << ',' << format_double(obs.parity)
       << ',' << gs.nmax << ',' << format_double(gs.residual) << ','
       << format_double(gs.tail_weight) << '\n';
}

json ground_json(const ModelParams& p, const GroundState& gs,
                 const ObservableSet& obs) {
    return json{{"params", params_json(p)},
                {"energy", gs.energy},
                {"nmax", gs.nmax},
                {"residual", gs.residual},
                {"tail_weight", gs.tail_weight},
                {"entropy", obs.entropy},
                {"x_plus", obs.x_plus},
                {"x_minus", obs.x_minus},
                {"weight_plus", obs.weight_plus},
                {"weight_minus", obs.weight_minus},
                {"parity", obs.parity}};
}

void write_transition_csv(std::ostream& os, const TransitionPoint& t) {
    os << "kind,value,bracket_lo,bracket_hi,iterations\n";
    os << (t.kind == TransitionPoint::Kind::G0 ? "g0" : "epsilon_c") << ','
       << format_double(t.value) << ',' << format_double(t.bracket_lo) << ','
       << format_double(t.bracket_hi) << ',' << t.iterations << '\n';
}

json transition_json(const TransitionPoint& t) {
    return json{{"kind", t.kind == TransitionPoint::Kind::G0 ? "g0" : "epsilon_c"},
                {"status", "found"},
                {"value", t.value},
                {"bracket", {t.bracket_lo, t.bracket_hi}},
                {"iterations", t.iterations}};
}

void write_variational_csv(std::ostream& os, const VariationalSolution& sol) {
    os << "key,value\n";
    os << "ansatz," << ansatz_name(sol.ansatz) << '\n';
    os << "energy," << format_double(sol.energy) << '\n';
    os << "converged," << bool_str(sol.converged) << '\n';
    os << "iterations," << sol.iterations << '\n';
    for (const auto& [k, v] : sol.params)
        os << k << ',' << format_double(v) << '\n';
}

json variational_json(const ModelParams& p, const VariationalSolution& sol) {
    return json{{"params", params_json(p)},
                {"ansatz", ansatz_name(sol.ansatz)},
                {"energy", sol.energy},
                {"converged", sol.converged},
                {"iterations", sol.iterations},
                {"optimized", sol.params}};
}

} // namespace rabi::io
