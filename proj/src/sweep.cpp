#include "rabi/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "rabi/errors.hpp"
#include "rabi/wavefunction.hpp"

namespace rabi {

namespace {

SweepRow evaluate_point(const ModelParams& base, double g,
                        const SolverOptions& options) {
    SweepRow row;
    ModelParams p = base;
    p.g = g;
    const double gc = p.critical_coupling();
    row.g = g;
    row.g_over_gc = gc > 0.0 ? g / gc : std::numeric_limits<double>::quiet_NaN();
    try {
        const GroundState gs = ground_state(p, options);
        row.energy = gs.energy;
        row.obs = observable_set(gs);
        const PositionWaveFunction w = synthesize(gs, p, GridSpec::default_for(p));
        row.overweighted_plus =
            is_anti_polaron_overweighted(polaron_weights(w), Spin::up);
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.energy = nan;
        row.obs = ObservableSet{nan, nan, nan, nan, nan, nan};
        row.overweighted_plus = false;
    }
    return row;
}

double x_plus_at(const ModelParams& base, double g, const SolverOptions& options) {
    ModelParams p = base;
    p.g = g;
    return conditional_displacement(ground_state(p, options), Spin::up);
}

} // namespace

SweepResult scan_g(const ModelParams& base, double g_min, double g_max,
                   int points, const SolverOptions& options, int workers) {
    if (!(g_min >= 0.0) || !(g_min < g_max))
        throw std::invalid_argument("scan requires 0 <= g_min < g_max");
    if (points < 2) throw std::invalid_argument("scan requires points >= 2");

    SweepResult result;
    result.base = base;
    result.options = options;
    result.rows.resize(points);

    const auto job = [&](int i) {
        const double g = g_min + (g_max - g_min) * i / (points - 1);
        result.rows[i] = evaluate_point(base, g, options);
    };

    workers = std::max(1, workers);
    if (workers == 1) {
        for (int i = 0; i < points; ++i) job(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int nthreads = std::min(workers, points);
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < points; i = next.fetch_add(1))
                    job(i);
            });
        for (std::thread& t : pool) t.join();
    }
    return result;
}

TransitionPoint find_g0(const ModelParams& base, double tol,
                        const SolverOptions& options) {
    base.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(base.epsilon < base.omega))
        throw NoSignChange(
            "the displacement sign transition exists only for epsilon < omega");

    const double gc = base.critical_coupling();
    double lo = gc;
    double hi = 4.0 * gc;
    double f_lo = x_plus_at(base, lo, options);
    int iters = 0;

    if (f_lo > 0.0) {
        // transition sits below g_c (epsilon close to omega); expand left
        while (lo > 1e-9 * gc) {
            hi = lo;
            lo *= 0.5;
            ++iters;
            f_lo = x_plus_at(base, lo, options);
            if (f_lo < 0.0) break;
        }
        if (!(f_lo < 0.0))
            throw NoSignChange("X_+ is positive down to g ~ 0; no bracket");
    } else {
        double f_hi = x_plus_at(base, hi, options);
        while (!(f_hi > 0.0) && hi < 64.0 * gc) {
            lo = hi;
            f_lo = f_hi;
            hi *= 2.0;
            ++iters;
            f_hi = x_plus_at(base, hi, options);
        }
        if (!(f_hi > 0.0))
            throw NoSignChange("X_+ does not turn positive up to 64 g_c");
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        ++iters;
        if (x_plus_at(base, mid, options) < 0.0)
            lo = mid;
        else
            hi = mid;
    }

    TransitionPoint t;
    t.kind = TransitionPoint::Kind::G0;
    t.value = 0.5 * (lo + hi);
    t.bracket_lo = lo;
    t.bracket_hi = hi;
    t.iterations = iters;
    return t;
}

TransitionPoint find_epsilon_c(double omega, double Omega, double tol,
                               const SolverOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    ModelParams base;
    base.omega = omega;
    base.Omega = Omega;
    base.validate();
    const double g_probe = 1e-3 * base.critical_coupling();

    const auto probe = [&](double eps) {
        ModelParams p = base;
        p.epsilon = eps;
        p.g = g_probe;
        return conditional_displacement(ground_state(p, options), Spin::up);
    };

    double lo = 0.5 * omega, hi = 2.0 * omega;
    if (!(probe(lo) < 0.0) || !(probe(hi) > 0.0))
        throw NoSignChange("small-g displacement does not change sign in [w/2, 2w]");
    int iters = 2;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        ++iters;
        if (probe(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }

    TransitionPoint t;
    t.kind = TransitionPoint::Kind::EpsilonC;
    t.value = 0.5 * (lo + hi);
    t.bracket_lo = lo;
    t.bracket_hi = hi;
    t.iterations = iters;
    return t;
}

} // namespace rabi
