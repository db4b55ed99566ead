#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "rabi/eigensolver.hpp"
#include "rabi/model.hpp"

using namespace rabi;

namespace {

Eigen::MatrixXd densify(const HamiltonianMatrix& h) {
    const std::size_t dim = h.dim();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) H(i, j) = h.entry(i, j);
    return H;
}

} // namespace

TEST_CASE("asymmetric-form conversion") {
    {
        const ModelParams p = from_asymmetric_form({0.01, -0.5, 0.0, 0.05});
        CHECK(p.omega == 0.01);
        CHECK(p.Omega == 1.0);
        CHECK(p.epsilon == 0.0);
        CHECK(p.g == 0.05);
    }
    {
        const ModelParams p = from_asymmetric_form({0.5, -0.5, 0.25, 0.1});
        CHECK(p.omega == 0.5);
        CHECK(p.Omega == 1.0);
        CHECK(p.epsilon == 0.5);
        CHECK(p.g == 0.1);
    }
    const AsymmetricParams bad_positive{0.5, +0.5, 0.0, 0.0};
    const AsymmetricParams bad_zero{0.5, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(from_asymmetric_form(bad_positive), std::invalid_argument);
    CHECK_THROWS_AS(from_asymmetric_form(bad_zero), std::invalid_argument);
}

TEST_CASE("critical coupling") {
    const ModelParams paper_point{0.01, 1.0, 0.0, 0.0};
    const ModelParams unit{1.0, 1.0, 0.0, 0.0};
    const ModelParams quarter{0.25, 1.0, 0.0, 0.0};
    CHECK(paper_point.critical_coupling() == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(unit.critical_coupling() == 0.5);
    CHECK(quarter.critical_coupling() == 0.25);
}

TEST_CASE("parameter validation") {
    const ModelParams bad_omega{-1.0, 1.0, 0.0, 0.0};
    const ModelParams bad_Omega{1.0, -1.0, 0.0, 0.0};
    const ModelParams bad_eps{1.0, 1.0, -0.1, 0.0};
    const ModelParams bad_g{1.0, 1.0, 0.0, -0.1};
    const ModelParams zero_Omega{1.0, 0.0, 0.2, 0.3};
    CHECK_THROWS_AS(bad_omega.validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad_Omega.validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad_eps.validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad_g.validate(), std::invalid_argument);
    CHECK_NOTHROW(zero_Omega.validate());
}

TEST_CASE("derived scales") {
    const ModelParams p{0.5, 1.0, 0.0, 0.3};
    CHECK(p.x0() == doctest::Approx(std::sqrt(2.0 * 0.09 / 0.125)).epsilon(1e-15));
    CHECK(p.X0() == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("nmax=2 decoupled spectrum") {
    const HamiltonianMatrix h = build_hamiltonian({1.0, 1.0, 0.0, 0.0}, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(densify(h));
    CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(es.eigenvalues()(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("stored structure count") {
    for (int nmax : {2, 3, 17, 400}) {
        const HamiltonianMatrix h =
            build_hamiltonian({0.7, 1.0, 0.3, 0.2}, nmax);
        const std::size_t expect = 2 * nmax + 2 * 2 * (nmax - 1) + 2 * nmax;
        CHECK(h.stored_slot_count() == expect);
    }
}

TEST_CASE("rejects nmax < 2") {
    CHECK_THROWS_AS(build_hamiltonian({1.0, 1.0, 0.0, 0.0}, 1),
                    std::invalid_argument);
}

TEST_CASE("matrix is exactly symmetric with the documented bands") {
    const HamiltonianMatrix h = build_hamiltonian({0.5, 1.0, 0.1, 0.2}, 40);
    const std::size_t dim = h.dim();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            CHECK(h.entry(i, j) == h.entry(j, i)); // bitwise
    for (int n = 0; n < 40; ++n) {
        CHECK(h.entry(HamiltonianMatrix::index(Spin::down, n),
                      HamiltonianMatrix::index(Spin::down, n)) ==
              0.5 * n - 0.05);
        CHECK(h.entry(HamiltonianMatrix::index(Spin::up, n),
                      HamiltonianMatrix::index(Spin::up, n)) == 0.5 * n + 0.05);
        CHECK(h.entry(HamiltonianMatrix::index(Spin::up, n),
                      HamiltonianMatrix::index(Spin::down, n)) == 0.5);
        if (n < 39) {
            const double c = 0.2 * std::sqrt(n + 1.0);
            CHECK(h.entry(HamiltonianMatrix::index(Spin::up, n),
                          HamiltonianMatrix::index(Spin::up, n + 1)) == c);
            CHECK(h.entry(HamiltonianMatrix::index(Spin::down, n),
                          HamiltonianMatrix::index(Spin::down, n + 1)) == -c);
            // no cross-spin coupling between neighbouring levels
            CHECK(h.entry(HamiltonianMatrix::index(Spin::down, n),
                          HamiltonianMatrix::index(Spin::up, n + 1)) == 0.0);
        }
    }
}

TEST_CASE("g=0 ground energy is -sqrt(Omega^2+eps^2)/2") {
    for (double eps : {0.0, 0.3, 1.7}) {
        const HamiltonianMatrix h = build_hamiltonian({0.8, 1.0, eps, 0.0}, 16);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(densify(h));
        const double expect = -0.5 * std::hypot(1.0, eps);
        CHECK(std::abs(es.eigenvalues()(0) - expect) <= 1e-12);
    }
}

TEST_CASE("entries are linear in g: doubling only rescales the coupling band") {
    const ModelParams p1{0.5, 1.0, 0.1, 0.2};
    ModelParams p2 = p1;
    p2.g = 0.4;
    const HamiltonianMatrix h1 = build_hamiltonian(p1, 30);
    const HamiltonianMatrix h2 = build_hamiltonian(p2, 30);
    const Eigen::MatrixXd diff = densify(h2) - densify(h1);
    for (std::size_t i = 0; i < h1.dim(); ++i)
        for (std::size_t j = 0; j < h1.dim(); ++j) {
            if (j == i + 2 || i == j + 2)
                CHECK(diff(i, j) == h1.entry(i, j)); // exactly one extra copy
            else
                CHECK(diff(i, j) == 0.0);
        }
}

TEST_CASE("apply() equals the dense product") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const HamiltonianMatrix h = build_hamiltonian({0.3, 1.0, 0.45, 0.37}, 75);
    const std::size_t dim = h.dim();
    Eigen::VectorXd x(dim);
    for (std::size_t i = 0; i < dim; ++i) x(i) = u(rng);
    const Eigen::VectorXd y_dense = densify(h) * x;
    std::vector<double> y(dim);
    h.apply(x.data(), y.data());
    for (std::size_t i = 0; i < dim; ++i)
        CHECK(std::abs(y[i] - y_dense(i)) <= 1e-13 * (1.0 + std::abs(y_dense(i))));
}

TEST_CASE("iterative ground energy matches a dense solve of the same matrix") {
    const HamiltonianMatrix h = build_hamiltonian({0.5, 1.0, 0.1, 0.2}, 400);
    const GroundState dense = dense_oracle_ground_state(h);
    const GroundState iter = ground_state_of(h, {});
    CHECK(std::abs(dense.energy - iter.energy) <= 1e-12);
}
