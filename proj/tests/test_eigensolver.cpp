#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rabi/eigensolver.hpp"
#include "rabi/errors.hpp"
#include "rabi/model.hpp"
#include "rabi/observables.hpp"

using namespace rabi;

namespace {

double norm_sq(const GroundState& gs) {
    double s = 0.0;
    for (double c : gs.coeffs) s += c * c;
    return s;
}

} // namespace

TEST_CASE("g=0 ground state: sigma_x eigenstate times vacuum") {
    const GroundState gs = ground_state({1.0, 1.0, 0.0, 0.0});
    CHECK(gs.energy == doctest::Approx(-0.5).epsilon(1e-12));
    const double c_dn = gs.coeff(Spin::down, 0);
    const double c_up = gs.coeff(Spin::up, 0);
    CHECK(c_dn == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(c_up == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-10));
    double rest = 0.0;
    for (int n = 1; n < gs.nmax; ++n)
        rest += gs.coeff(Spin::down, n) * gs.coeff(Spin::down, n) +
                gs.coeff(Spin::up, n) * gs.coeff(Spin::up, n);
    CHECK(rest <= 1e-20);
}

TEST_CASE("Omega=0 closed form: displaced oscillator") {
    const GroundState gs = ground_state({0.5, 0.0, 0.2, 0.3});
    CHECK(gs.energy == doctest::Approx(-0.28).epsilon(1e-12));
}

TEST_CASE("ground-state invariants hold on representative points") {
    const std::vector<ModelParams> pts = {
        {1.0, 1.0, 0.0, 0.0},    {0.5, 1.0, 0.1, 0.2},  {0.01, 1.0, 0.0, 0.05},
        {0.01, 1.0, 1e-5, 0.06}, {0.3, 1.0, 0.6, 0.45}, {0.5, 0.0, 0.2, 0.3},
    };
    for (const ModelParams& p : pts) {
        CAPTURE(p.omega);
        CAPTURE(p.g);
        const GroundState gs = ground_state(p);
        CHECK(std::abs(norm_sq(gs) - 1.0) <= 1e-12);
        CHECK(gs.residual <= 1e-10 * std::max(1.0, std::abs(gs.energy)));
        CHECK(gs.tail_weight <= 1e-13);
        // sign convention: largest-magnitude coefficient is positive
        double amax = 0.0, cmax = 0.0;
        for (double c : gs.coeffs)
            if (std::abs(c) > amax) {
                amax = std::abs(c);
                cmax = c;
            }
        CHECK(cmax > 0.0);
    }
}

TEST_CASE("iterative solve matches the dense oracle at omega=0.01, g=0.075") {
    const ModelParams p{0.01, 1.0, 0.0, 0.075};
    const GroundState iter = ground_state(p);
    const HamiltonianMatrix h = build_hamiltonian(p, iter.nmax);
    const GroundState dense = dense_oracle_ground_state(h);
    CHECK(std::abs(iter.energy - dense.energy) <= 1e-10);
}

TEST_CASE("dense oracle basics") {
    {
        const HamiltonianMatrix h = build_hamiltonian({1.0, 1.0, 0.0, 0.0}, 2);
        CHECK(dense_oracle_ground_state(h).energy ==
              doctest::Approx(-0.5).epsilon(1e-14));
    }
    {
        // pure number operator: ground energy 0
        const HamiltonianMatrix h = build_hamiltonian({1.0, 0.0, 0.0, 0.0}, 2);
        CHECK(dense_oracle_ground_state(h).energy ==
              doctest::Approx(0.0).epsilon(1e-14));
    }
    {
        const HamiltonianMatrix h = build_hamiltonian({0.5, 1.0, 0.1, 0.2}, 400);
        const GroundState dense = dense_oracle_ground_state(h);
        const GroundState iter = ground_state_of(h, {});
        CHECK(std::abs(dense.energy - iter.energy) <= 1e-10);
    }
    const HamiltonianMatrix big = build_hamiltonian({0.5, 1.0, 0.0, 0.1}, 1200);
    CHECK_THROWS_AS(dense_oracle_ground_state(big), std::invalid_argument);
}

TEST_CASE("energy is non-increasing over a truncation doubling ladder") {
    const ModelParams p{0.1, 1.0, 0.005, 0.4}; // g ~ 2.5 g_c
    double prev = 1e300;
    for (int nmax : {64, 128, 256, 512}) {
        SolverOptions opt;
        opt.nmax = nmax;
        const GroundState gs = ground_state(p, opt);
        CHECK(gs.energy <= prev + 1e-11);
        prev = gs.energy;
    }
}

TEST_CASE("degenerate pair at eps=0 resolves to the odd-parity member") {
    for (double r : {1.2, 1.5}) {
        ModelParams p{0.01, 1.0, 0.0, 0.0};
        p.g = r * p.critical_coupling();
        const GroundState gs = ground_state(p);
        CHECK(std::abs(parity_of(gs.coeffs, gs.nmax) + 1.0) <= 1e-8);
    }
}

TEST_CASE("tiny asymmetry polarizes once tunneling dies") {
    const ModelParams p{0.01, 1.0, 1e-6, 0.075};
    const GroundState gs = ground_state(p);
    CHECK(std::abs(parity_of(gs.coeffs, gs.nmax)) < 0.2);
    CHECK(spin_weight(gs, Spin::down) > 0.9);
}

TEST_CASE("adaptive start heuristic") {
    CHECK(adaptive_start_nmax({1.0, 1.0, 0.0, 0.0}) == 64);
    CHECK(adaptive_start_nmax({0.01, 1.0, 0.0, 0.075}) == 964);
}

TEST_CASE("NonConvergence when the cap cannot hold the state") {
    const ModelParams p{0.05, 1.0, 0.0, 1.0}; // coherent occupation ~ 400
    SolverOptions opt;
    opt.max_nmax = 256;
    CHECK_THROWS_AS(ground_state(p, opt), NonConvergence);
}

TEST_CASE("IterationLimit when the matvec budget is exhausted") {
    SolverOptions opt;
    opt.max_matvecs = 10;
    const ModelParams p{0.5, 1.0, 0.1, 0.3};
    CHECK_THROWS_AS(ground_state(p, opt), IterationLimit);
}

TEST_CASE("iterative vs dense oracle on random points") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        ModelParams p;
        p.omega = 0.1 + 1.2 * u(rng);
        p.epsilon = 1.5 * u(rng);
        p.g = (0.1 + 1.0 * u(rng)) * p.omega;
        SolverOptions opt;
        opt.nmax = 128 + static_cast<int>(400 * u(rng));
        CAPTURE(p.omega);
        CAPTURE(p.epsilon);
        CAPTURE(p.g);
        const HamiltonianMatrix h = build_hamiltonian(p, *opt.nmax);
        const GroundState iter = ground_state_of(h, opt);
        const GroundState dense = dense_oracle_ground_state(h);
        CHECK(std::abs(iter.energy - dense.energy) <= 1e-10);
    }
}
