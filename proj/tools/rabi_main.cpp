// rabi: asymmetric quantum Rabi model ground-state toolkit
//
// Subcommands: ground, scan-g, wavefunction, find-g0, find-ec, variational.
// Exit codes: 0 success, 2 invalid arguments, 3 solver non-convergence.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "rabi/errors.hpp"
#include "rabi/io.hpp"
#include "rabi/kernels.hpp"
#include "rabi/observables.hpp"
#include "rabi/sweep.hpp"
#include "rabi/variational.hpp"
#include "rabi/wavefunction.hpp"

namespace {

using nlohmann::json;

struct Settings {
    double omega = 1.0;
    double Omega = 1.0;
    double epsilon = 0.0;
    double g = 0.0;
    int nmax = 0; // 0 = adaptive
    double tol_residual = 1e-10;
    double tail_weight = 1e-13;
    int max_nmax = 8192;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    std::string out;
    std::string format = "csv";
    std::string kernels = "auto";
    std::string config_path;

    // scan-g
    double g_min = 0.0;
    double g_max = 0.0;
    int points = 41;
    // find-g0 / find-ec
    double tol = 0.0; // 0 = subcommand default
    // wavefunction
    int grid_points = 4096;
    double grid_pad = 10.0;

    rabi::ModelParams params() const {
        rabi::ModelParams p;
        p.omega = omega;
        p.Omega = Omega;
        p.epsilon = epsilon;
        p.g = g;
        p.validate();
        return p;
    }
    rabi::SolverOptions solver() const {
        rabi::SolverOptions o;
        if (nmax > 0) o.nmax = nmax;
        o.tol_residual = tol_residual;
        o.tail_weight = tail_weight;
        o.max_nmax = max_nmax;
        return o;
    }
};

void load_config(int argc, char** argv, Settings& s) {
    std::string path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") path = argv[i + 1];
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    json j;
    in >> j;
    const auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("omega", s.omega);
    get("Omega", s.Omega);
    get("epsilon", s.epsilon);
    get("g", s.g);
    get("nmax", s.nmax);
    get("tol-residual", s.tol_residual);
    get("tail-weight", s.tail_weight);
    get("max-nmax", s.max_nmax);
    get("workers", s.workers);
    get("out", s.out);
    get("format", s.format);
    get("kernels", s.kernels);
    get("g-min", s.g_min);
    get("g-max", s.g_max);
    get("points", s.points);
    get("tol", s.tol);
    get("grid-points", s.grid_points);
    get("grid-pad", s.grid_pad);
}

void add_shared_flags(CLI::App* cmd, Settings& s) {
    cmd->add_option("--omega", s.omega, "oscillator frequency (units of Omega)")
        ->capture_default_str();
    cmd->add_option("--Omega", s.Omega, "tunneling rate (energy unit)")
        ->capture_default_str();
    cmd->add_option("--epsilon", s.epsilon, "asymmetry strength")
        ->capture_default_str();
    cmd->add_option("--g", s.g, "coupling strength")->capture_default_str();
    cmd->add_option("--nmax", s.nmax, "Fock truncation override (0 = adaptive)")
        ->capture_default_str();
    cmd->add_option("--tol-residual", s.tol_residual, "eigenpair residual tolerance")
        ->capture_default_str();
    cmd->add_option("--tail-weight", s.tail_weight,
                    "acceptance threshold for the top-1% Fock window")
        ->capture_default_str();
    cmd->add_option("--max-nmax", s.max_nmax, "adaptive truncation cap")
        ->capture_default_str();
    cmd->add_option("--workers", s.workers, "bounded worker count for sweeps")
        ->capture_default_str();
    cmd->add_option("--out", s.out, "output path (default: stdout)");
    cmd->add_option("--format", s.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--kernels", s.kernels, "scalar|avx2|neon|auto")
        ->capture_default_str();
    // loaded before parsing so explicit flags take precedence
    cmd->add_option("--config", s.config_path, "JSON config file (flags override)");
}

int emit(const Settings& s, const std::string& csv, const json& j) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!s.out.empty()) {
        file.open(s.out);
        if (!file) {
            std::cerr << "error: cannot open output file " << s.out << "\n";
            return 2;
        }
        os = &file;
    }
    if (s.format == "json")
        *os << j.dump(2) << "\n";
    else
        *os << csv;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymmetric quantum Rabi model ground-state toolkit"};
    app.require_subcommand(1);
    Settings s;

    try {
        load_config(argc, argv, s);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App* ground = app.add_subcommand("ground", "solve one parameter point");
    add_shared_flags(ground, s);

    CLI::App* scan = app.add_subcommand("scan-g", "sweep the coupling strength");
    add_shared_flags(scan, s);
    scan->add_option("--g-min", s.g_min, "lower end of the sweep")
        ->capture_default_str();
    scan->add_option("--g-max", s.g_max, "upper end of the sweep")->required();
    scan->add_option("--points", s.points, "number of sweep points")
        ->capture_default_str();

    CLI::App* wf = app.add_subcommand("wavefunction",
                                      "position-space ground-state components");
    add_shared_flags(wf, s);
    wf->add_option("--grid-points", s.grid_points, "grid size")
        ->capture_default_str();
    wf->add_option("--grid-pad", s.grid_pad,
                   "half-width padding beyond x0, in units of 1/sqrt(omega)")
        ->capture_default_str();

    CLI::App* g0 = app.add_subcommand("find-g0",
                                      "locate the X_+ sign-transition coupling");
    add_shared_flags(g0, s);
    g0->add_option("--tol", s.tol, "bisection bracket tolerance (default 1e-4)");

    CLI::App* ec = app.add_subcommand("find-ec",
                                      "locate the critical asymmetry strength");
    add_shared_flags(ec, s);
    ec->add_option("--tol", s.tol,
                   "bisection bracket tolerance (default 1e-3*omega)");

    CLI::App* var = app.add_subcommand("variational", "variational solvers");
    add_shared_flags(var, s);
    std::string method = "gvm";
    var->add_option("--method", method, "fixed|gvm|four|smallg")
        ->check(CLI::IsMember({"fixed", "gvm", "four", "smallg"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints help/error
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        rabi::kernels::force_isa(s.kernels);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*ground) {
            const rabi::ModelParams p = s.params();
            const rabi::GroundState gs = rabi::ground_state(p, s.solver());
            const rabi::ObservableSet obs = rabi::observable_set(gs);
            std::ostringstream csv;
            rabi::io::write_ground_csv(csv, p, gs, obs);
            return emit(s, csv.str(), rabi::io::ground_json(p, gs, obs));
        }
        if (*scan) {
            const rabi::SweepResult r =
                rabi::scan_g(s.params(), s.g_min, s.g_max, s.points, s.solver(),
                             s.workers);
            std::ostringstream csv;
            rabi::io::write_scan_csv(csv, r);
            return emit(s, csv.str(), rabi::io::scan_json(r));
        }
        if (*wf) {
            const rabi::ModelParams p = s.params();
            const rabi::GroundState gs = rabi::ground_state(p, s.solver());
            rabi::GridSpec spec;
            const double half = p.x0() + s.grid_pad / std::sqrt(p.omega);
            spec.xmin = -half;
            spec.xmax = half;
            spec.points = s.grid_points;
            const rabi::PositionWaveFunction w = rabi::synthesize(gs, p, spec);
            std::ostringstream csv;
            rabi::io::write_wavefunction_csv(csv, w);
            return emit(s, csv.str(), rabi::io::wavefunction_json(w));
        }
        if (*g0) {
            const double tol = s.tol > 0.0 ? s.tol : 1e-4;
            try {
                const rabi::TransitionPoint t =
                    rabi::find_g0(s.params(), tol, s.solver());
                std::ostringstream csv;
                rabi::io::write_transition_csv(csv, t);
                return emit(s, csv.str(), rabi::io::transition_json(t));
            } catch (const rabi::NoSignChange& e) {
                json j{{"kind", "g0"}, {"status", "no_sign_change"}, {"detail", e.what()}};
                return emit(s, std::string("kind,status\ng0,no_sign_change\n"), j);
            }
        }
        if (*ec) {
            const double tol = s.tol > 0.0 ? s.tol : 1e-3 * s.omega;
            const rabi::TransitionPoint t =
                rabi::find_epsilon_c(s.omega, s.Omega, tol, s.solver());
            std::ostringstream csv;
            rabi::io::write_transition_csv(csv, t);
            return emit(s, csv.str(), rabi::io::transition_json(t));
        }
        if (*var) {
            const rabi::ModelParams p = s.params();
            rabi::VariationalSolution sol;
            if (method == "fixed")
                sol = rabi::minimize_two_state(p, rabi::TwoStateMode::FixedLambda);
            else if (method == "gvm")
                sol = rabi::minimize_two_state(p, rabi::TwoStateMode::GVM);
            else if (method == "four")
                sol = rabi::minimize_four_coherent(p);
            else
                sol = rabi::small_g_solution(p);
            std::ostringstream csv;
            rabi::io::write_variational_csv(csv, sol);
            return emit(s, csv.str(), rabi::io::variational_json(p, sol));
        }
    } catch (const rabi::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rabi::IterationLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rabi::NoSignChange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
