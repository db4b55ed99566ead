#include "rabi/eigensolver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rabi/errors.hpp"
#include "rabi/kernels.hpp"

namespace rabi {

namespace {

constexpr double kDegenerateGap = 1e-8; // in units of max(1, Omega)

// Omega=0 analytic ground state: spin-down coherent state with displacement
// g/omega, computed in log space to survive large displacements.
std::vector<double> coherent_start(const ModelParams& p, int nmax) {
    const std::size_t dim = 2 * static_cast<std::size_t>(nmax);
    std::vector<double> v(dim, 0.0);
    const double lam = p.g / p.omega;
    if (lam <= 0.0) {
        v[HamiltonianMatrix::index(Spin::down, 0)] = 1.0;
        return v;
    }
    const double loglam = std::log(lam);
    for (int n = 0; n < nmax; ++n) {
        const double logw =
            -0.5 * lam * lam + n * loglam - 0.5 * std::lgamma(n + 1.0);
        v[HamiltonianMatrix::index(Spin::down, n)] = std::exp(logw);
    }
    const double nrm = kernels::nrm2(v.data(), dim);
    if (nrm < 1e-300) {
        // coherent peak beyond the truncation; park on the top level
        std::fill(v.begin(), v.end(), 0.0);
        v[HamiltonianMatrix::index(Spin::down, nmax - 1)] = 1.0;
        return v;
    }
    kernels::scal(1.0 / nrm, v.data(), dim);
    return v;
}

void apply_parity(const std::vector<double>& x, std::vector<double>& y, int nmax) {
    // Pi = sigma_x (-1)^{a^+ a}
    y.resize(x.size());
    for (int n = 0; n < nmax; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        const std::size_t i_dn = HamiltonianMatrix::index(Spin::down, n);
        const std::size_t i_up = HamiltonianMatrix::index(Spin::up, n);
        y[i_dn] = sgn * x[i_up];
        y[i_up] = sgn * x[i_dn];
    }
}

double parity_expect_pair(const std::vector<double>& u,
                          const std::vector<double>& v, int nmax) {
    double s = 0.0;
    for (int n = 0; n < nmax; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        s += sgn * (u[HamiltonianMatrix::index(Spin::up, n)] *
                        v[HamiltonianMatrix::index(Spin::down, n)] +
                    u[HamiltonianMatrix::index(Spin::down, n)] *
                        v[HamiltonianMatrix::index(Spin::up, n)]);
    }
    return s;
}

void fix_sign(std::vector<double>& v) {
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > amax) {
            amax = a;
            imax = i;
        }
    }
    if (v[imax] < 0.0) kernels::scal(-1.0, v.data(), v.size());
}

struct RitzPair {
    double value = 0.0;
    std::vector<double> vector;
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Thick-restart Lanczos for the lowest eigenpair in the orthogonal
// complement of `locked`. Full reorthogonalization; the projected matrix T
// is kept as the exact projection V^T H V of the current basis, so restarts
// need no arrow bookkeeping. Deterministic throughout.
class ThickRestartLanczos {
public:
    ThickRestartLanczos(const HamiltonianMatrix& h,
                        std::vector<const std::vector<double>*> locked,
                        int* matvec_budget)
        : h_(h),
          locked_(std::move(locked)),
          budget_(matvec_budget),
          dim_(h.dim()) {}

    RitzPair solve(std::vector<double> start, double tol) {
        const std::size_t cap = dim_ - locked_.size();
        const std::size_t m_max = std::min<std::size_t>(cap, 260);
        const std::size_t keep = std::min<std::size_t>(12, m_max - 1);

        orthogonalize(start);
        double nrm = kernels::nrm2(start.data(), dim_);
        if (nrm < 1e-10) start = fallback_vector();
        nrm = kernels::nrm2(start.data(), dim_);
        kernels::scal(1.0 / nrm, start.data(), dim_);

        basis_.clear();
        basis_.push_back(std::move(start));
        T_ = Eigen::MatrixXd::Zero(m_max, m_max);
        ncols_ = 0;

        std::vector<double> w(dim_);
        bool exhausted = false;
        while (true) {
            // project and orthogonalize the image of the newest vector
            while (ncols_ < basis_.size()) {
                spend_matvec();
                h_.apply(basis_[ncols_].data(), w.data());
                for (std::size_t i = 0; i < basis_.size(); ++i) {
                    const double c = kernels::dot(basis_[i].data(), w.data(), dim_);
                    T_(i, ncols_) = T_(ncols_, i) = c;
                }
                subtract_projections(w);
                ++ncols_;
            }

            const bool check_now = ncols_ >= m_max || exhausted ||
                                   ncols_ < 8 || (ncols_ % 4 == 0);
            if (check_now) {
                RitzPair p = extract(tol);
                if (p.converged || exhausted) {
                    p.converged = true;
                    return p;
                }
            }

            if (ncols_ >= m_max) {
                restart(keep, w);
                exhausted = false;
                continue;
            }

            const double beta = kernels::nrm2(w.data(), dim_);
            if (beta > 1e-13) {
                std::vector<double> next(dim_);
                for (std::size_t i = 0; i < dim_; ++i) next[i] = w[i] / beta;
                basis_.push_back(std::move(next));
            } else if (basis_.size() < cap) {
                std::vector<double> next = fallback_vector();
                if (next.empty()) {
                    exhausted = true;
                } else {
                    basis_.push_back(std::move(next));
                }
            } else {
                exhausted = true;
            }
        }
    }

private:
    void spend_matvec() {
        if (--(*budget_) < 0)
            throw IterationLimit("eigensolver matvec budget exhausted");
    }

    // strips locked and basis components (two classical Gram-Schmidt rounds)
    void orthogonalize(std::vector<double>& w) const {
        for (int round = 0; round < 2; ++round) {
            for (const auto* l : locked_) {
                const double c = kernels::dot(l->data(), w.data(), dim_);
                kernels::axpy(-c, l->data(), w.data(), dim_);
            }
            for (const auto& q : basis_) {
                const double c = kernels::dot(q.data(), w.data(), dim_);
                kernels::axpy(-c, q.data(), w.data(), dim_);
            }
        }
    }

    // like orthogonalize, but the first-round basis coefficients were already
    // removed via the T column; run the cleanup passes only
    void subtract_projections(std::vector<double>& w) const {
        for (const auto* l : locked_) {
            const double c = kernels::dot(l->data(), w.data(), dim_);
            kernels::axpy(-c, l->data(), w.data(), dim_);
        }
        for (std::size_t i = 0; i < basis_.size(); ++i)
            kernels::axpy(-T_(i, ncols_), basis_[i].data(), w.data(), dim_);
        for (int round = 0; round < 2; ++round) {
            for (const auto* l : locked_) {
                const double c = kernels::dot(l->data(), w.data(), dim_);
                kernels::axpy(-c, l->data(), w.data(), dim_);
            }
            for (const auto& q : basis_) {
                const double c = kernels::dot(q.data(), w.data(), dim_);
                kernels::axpy(-c, q.data(), w.data(), dim_);
            }
        }
    }

    std::vector<double> fallback_vector() const {
        std::vector<double> v(dim_);
        for (std::size_t k = 0; k < dim_; ++k) {
            std::fill(v.begin(), v.end(), 0.0);
            v[k] = 1.0;
            orthogonalize(v);
            const double nrm = kernels::nrm2(v.data(), dim_);
            if (nrm > 0.5) {
                kernels::scal(1.0 / nrm, v.data(), dim_);
                return v;
            }
        }
        return {};
    }

    RitzPair extract(double tol) {
        const std::size_t m = ncols_;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T_.topLeftCorner(m, m));
        last_evecs_ = es.eigenvectors();
        RitzPair p;
        p.value = es.eigenvalues()(0);
        p.vector.assign(dim_, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            kernels::axpy(last_evecs_(i, 0), basis_[i].data(), p.vector.data(), dim_);
        const double nrm = kernels::nrm2(p.vector.data(), dim_);
        kernels::scal(1.0 / nrm, p.vector.data(), dim_);
        std::vector<double> r(dim_);
        spend_matvec();
        h_.apply(p.vector.data(), r.data());
        p.value = kernels::dot(p.vector.data(), r.data(), dim_);
        kernels::axpy(-p.value, p.vector.data(), r.data(), dim_);
        // residual must live in the complement of the locked space
        for (const auto* l : locked_) {
            const double c = kernels::dot(l->data(), r.data(), dim_);
            kernels::axpy(-c, l->data(), r.data(), dim_);
        }
        p.residual = kernels::nrm2(r.data(), dim_);
        p.converged = p.residual <= tol * std::max(1.0, std::abs(p.value));
        return p;
    }

    void restart(std::size_t keep, std::vector<double>& w_continuation) {
        const std::size_t m = ncols_;
        std::vector<std::vector<double>> fresh;
        fresh.reserve(keep + 1);
        for (std::size_t k = 0; k < keep; ++k) {
            std::vector<double> y(dim_, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                kernels::axpy(last_evecs_(i, k), basis_[i].data(), y.data(), dim_);
            fresh.push_back(std::move(y));
        }
        basis_.clear();
        T_.setZero();
        ncols_ = 0;
        for (auto& y : fresh) {
            orthogonalize(y);
            const double nrm = kernels::nrm2(y.data(), dim_);
            if (nrm < 1e-10) continue;
            kernels::scal(1.0 / nrm, y.data(), dim_);
            basis_.push_back(std::move(y));
        }
        // continuation direction: the pending Lanczos remainder
        orthogonalize(w_continuation);
        const double nrm = kernels::nrm2(w_continuation.data(), dim_);
        if (nrm > 1e-13) {
            std::vector<double> q(dim_);
            for (std::size_t i = 0; i < dim_; ++i) q[i] = w_continuation[i] / nrm;
            basis_.push_back(std::move(q));
        }
        if (basis_.empty()) {
            std::vector<double> f = fallback_vector();
            if (f.empty()) throw IterationLimit("restart produced no basis");
            basis_.push_back(std::move(f));
        }
    }

    const HamiltonianMatrix& h_;
    std::vector<const std::vector<double>*> locked_;
    int* budget_;
    std::size_t dim_;
    std::vector<std::vector<double>> basis_;
    std::size_t ncols_ = 0;
    Eigen::MatrixXd T_;
    Eigen::MatrixXd last_evecs_;
};

struct PairResult {
    double e1 = 0.0, e2 = 0.0;
    std::vector<double> v1, v2;
    double residual = 0.0;
    int matvecs = 0;
};

PairResult lowest_pair(const HamiltonianMatrix& h, const SolverOptions& opt) {
    int budget = opt.max_matvecs;
    const std::vector<double> start = coherent_start(h.params, h.nmax);
    const double tol = 0.5 * opt.tol_residual;

    ThickRestartLanczos run1(h, {}, &budget);
    RitzPair p1 = run1.solve(start, tol);

    // the second run starts from the parity image of the coherent state;
    // it is the mirrored polaron, i.e. the partner of every quasi-degenerate
    // pair this model produces, and a well-spread vector otherwise
    std::vector<double> start2;
    apply_parity(start, start2, h.nmax);
    ThickRestartLanczos run2(h, {&p1.vector}, &budget);
    RitzPair p2 = run2.solve(start2, tol);

    PairResult out;
    out.e1 = p1.value;
    out.e2 = p2.value;
    out.v1 = std::move(p1.vector);
    out.v2 = std::move(p2.vector);
    out.residual = p1.residual;
    out.matvecs = opt.max_matvecs - budget;
    return out;
}

// Resolve the returned state from the two lowest eigenvectors. Near
// degeneracy the direction inside span{v1,v2} is recomputed from the exact
// 2x2 projection of H (accurate far below the Lanczos gap resolution); at
// epsilon=0 the member is selected by parity and the result is projected
// onto its parity sector, which [H,Pi]=0 makes exact.
std::vector<double> resolve_pair(const HamiltonianMatrix& h, PairResult& pr) {
    const ModelParams& p = h.params;
    const std::size_t dim = h.dim();
    const double scale = std::max(1.0, p.Omega);
    std::vector<double> v;

    if (pr.e2 - pr.e1 < kDegenerateGap * scale) {
        double c = kernels::dot(pr.v1.data(), pr.v2.data(), dim);
        kernels::axpy(-c, pr.v1.data(), pr.v2.data(), dim);
        const double n2 = kernels::nrm2(pr.v2.data(), dim);
        kernels::scal(1.0 / n2, pr.v2.data(), dim);

        std::vector<double> hv2(dim);
        h.apply(pr.v2.data(), hv2.data());
        Eigen::Matrix2d hp;
        {
            std::vector<double> hv1(dim);
            h.apply(pr.v1.data(), hv1.data());
            hp(0, 0) = kernels::dot(pr.v1.data(), hv1.data(), dim);
            hp(0, 1) = hp(1, 0) = kernels::dot(pr.v1.data(), hv2.data(), dim);
            hp(1, 1) = kernels::dot(pr.v2.data(), hv2.data(), dim);
        }

        Eigen::Vector2d combo;
        if (p.epsilon == 0.0) {
            Eigen::Matrix2d pp;
            pp(0, 0) = parity_expect_pair(pr.v1, pr.v1, h.nmax);
            pp(0, 1) = pp(1, 0) = parity_expect_pair(pr.v1, pr.v2, h.nmax);
            pp(1, 1) = parity_expect_pair(pr.v2, pr.v2, h.nmax);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(pp);
            const int col = std::abs(es.eigenvalues()(0) + 1.0) <
                                    std::abs(es.eigenvalues()(1) + 1.0)
                                ? 0
                                : 1;
            combo = es.eigenvectors().col(col);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hp);
            combo = es.eigenvectors().col(0);
        }
        v.assign(dim, 0.0);
        kernels::axpy(combo(0), pr.v1.data(), v.data(), dim);
        kernels::axpy(combo(1), pr.v2.data(), v.data(), dim);
        pr.e1 = combo.dot(hp * combo);
    } else {
        v = pr.v1;
    }

    if (p.epsilon == 0.0) {
        std::vector<double> pv;
        apply_parity(v, pv, h.nmax);
        const double pi = parity_expect_pair(v, v, h.nmax) >= 0.0 ? 1.0 : -1.0;
        kernels::axpy(pi, pv.data(), v.data(), dim);
        const double nrm = kernels::nrm2(v.data(), dim);
        if (nrm > 1e-8)
            kernels::scal(1.0 / nrm, v.data(), dim);
        else
            v = pr.v1; // projection annihilated the state; keep the raw vector
    }

    const double nrm = kernels::nrm2(v.data(), dim);
    kernels::scal(1.0 / nrm, v.data(), dim);
    fix_sign(v);
    return v;
}

GroundState finalize_state(const HamiltonianMatrix& h, PairResult pr) {
    GroundState gs;
    gs.coeffs = resolve_pair(h, pr);
    gs.nmax = h.nmax;
    gs.iterations = pr.matvecs;

    const std::size_t dim = h.dim();
    std::vector<double> hv(dim);
    h.apply(gs.coeffs.data(), hv.data());
    gs.energy = kernels::dot(gs.coeffs.data(), hv.data(), dim);
    kernels::axpy(-gs.energy, gs.coeffs.data(), hv.data(), dim);
    gs.residual = kernels::nrm2(hv.data(), dim);
    gs.tail_weight = tail_weight_of(gs.coeffs, h.nmax);
    return gs;
}

} // namespace

std::vector<double> GroundState::stripe(Spin s) const {
    std::vector<double> out(nmax);
    for (int n = 0; n < nmax; ++n) out[n] = coeff(s, n);
    return out;
}

int adaptive_start_nmax(const ModelParams& p) {
    const double x = 2.0 * p.g / p.omega;
    const double guess = std::ceil(4.0 * x * x) + 64.0;
    return std::max(64, static_cast<int>(guess));
}

double tail_weight_of(const std::vector<double>& coeffs, int nmax) {
    const int window = std::max(1, nmax / 100);
    double s = 0.0;
    for (int n = nmax - window; n < nmax; ++n) {
        const double cd = coeffs[HamiltonianMatrix::index(Spin::down, n)];
        const double cu = coeffs[HamiltonianMatrix::index(Spin::up, n)];
        s += cd * cd + cu * cu;
    }
    return s;
}

double parity_of(const std::vector<double>& coeffs, int nmax) {
    double s = 0.0;
    for (int n = 0; n < nmax; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        s += sgn * coeffs[HamiltonianMatrix::index(Spin::up, n)] *
             coeffs[HamiltonianMatrix::index(Spin::down, n)];
    }
    return 2.0 * s;
}

GroundState ground_state_of(const HamiltonianMatrix& h, const SolverOptions& options) {
    return finalize_state(h, lowest_pair(h, options));
}

GroundState ground_state(const ModelParams& p, const SolverOptions& options) {
    p.validate();
    if (options.nmax) {
        const HamiltonianMatrix h = build_hamiltonian(p, *options.nmax);
        return ground_state_of(h, options);
    }
    int nmax = std::min(adaptive_start_nmax(p), options.max_nmax);
    while (true) {
        const HamiltonianMatrix h = build_hamiltonian(p, nmax);
        GroundState gs = ground_state_of(h, options);
        if (gs.tail_weight <= options.tail_weight) return gs;
        if (nmax >= options.max_nmax)
            throw NonConvergence(
                "tail weight above threshold at the truncation cap; "
                "parameters outside the validated regime");
        nmax = std::min(2 * nmax, options.max_nmax);
    }
}

GroundState dense_oracle_ground_state(const HamiltonianMatrix& h) {
    const std::size_t dim = h.dim();
    if (dim > 2000)
        throw std::invalid_argument("dense oracle restricted to dimension <= 2000");
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        H(i, i) = h.diag[i];
        if (i + 1 < dim) H(i, i + 1) = H(i + 1, i) = h.off1[i];
        if (i + 2 < dim) H(i, i + 2) = H(i + 2, i) = h.off2[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    PairResult pr;
    pr.e1 = es.eigenvalues()(0);
    pr.e2 = es.eigenvalues()(1);
    pr.v1.assign(dim, 0.0);
    pr.v2.assign(dim, 0.0);
    Eigen::Map<Eigen::VectorXd>(pr.v1.data(), dim) = es.eigenvectors().col(0);
    Eigen::Map<Eigen::VectorXd>(pr.v2.data(), dim) = es.eigenvectors().col(1);
    pr.matvecs = 0;
    return finalize_state(h, std::move(pr));
}

} // namespace rabi
