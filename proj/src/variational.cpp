#include "rabi/variational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "rabi/errors.hpp"

namespace rabi {

namespace {

constexpr double kPi = 3.14159265358979323846;

double eg_derivative(const ModelParams& p, double l) {
    const double e4 = std::exp(-4.0 * l * l);
    const double root = std::sqrt(p.Omega * p.Omega * e4 + p.epsilon * p.epsilon);
    const double dr = root > 0.0 ? 2.0 * l * p.Omega * p.Omega * e4 / root : 0.0;
    return 2.0 * p.omega * l - 2.0 * p.g + dr;
}

// minimizing-branch angle: sin(theta) = -Omega e^{-2l^2}/R, cos = -eps/R,
// reported in [0, 2pi)
double theta_branch(const ModelParams& p, double lambda) {
    const double a = p.Omega * std::exp(-2.0 * lambda * lambda);
    const double R = std::hypot(a, p.epsilon);
    if (R == 0.0) return 1.5 * kPi;
    double th = std::atan2(-a / R, -p.epsilon / R);
    if (th < 0.0) th += 2.0 * kPi;
    return th;
}

// --- Nelder-Mead (deterministic; standard reflection coefficients) -------

struct NelderMeadResult {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    int evals = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_evals) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> x(n + 1, x0);
    std::vector<double> fx(n + 1);
    for (std::size_t j = 0; j < n; ++j)
        x[j + 1][j] += step * std::max(1.0, std::abs(x0[j]));
    int evals = 0;
    for (std::size_t j = 0; j <= n; ++j) fx[j] = (++evals, f(x[j]));

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (evals < max_evals) {
        sort_simplex();
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(fx[worst] - fx[best]) <=
            1e-14 * (std::abs(fx[best]) + std::abs(fx[worst])) + 1e-15)
            break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += x[i][j];
        }
        for (std::size_t j = 0; j < n; ++j) centroid[j] /= n;

        for (std::size_t j = 0; j < n; ++j)
            xr[j] = centroid[j] + (centroid[j] - x[worst][j]);
        const double fr = (++evals, f(xr));
        if (fr < fx[best]) {
            for (std::size_t j = 0; j < n; ++j)
                xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
            const double fe = (++evals, f(xe));
            if (fe < fr) {
                x[worst] = xe;
                fx[worst] = fe;
            } else {
                x[worst] = xr;
                fx[worst] = fr;
            }
        } else if (fr < fx[second]) {
            x[worst] = xr;
            fx[worst] = fr;
        } else {
            const bool outside = fr < fx[worst];
            const std::vector<double>& base = outside ? xr : x[worst];
            for (std::size_t j = 0; j < n; ++j)
                xc[j] = centroid[j] + 0.5 * (base[j] - centroid[j]);
            const double fc = (++evals, f(xc));
            if (fc < std::min(fr, fx[worst])) {
                x[worst] = xc;
                fx[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        x[i][j] = x[best][j] + 0.5 * (x[i][j] - x[best][j]);
                    fx[i] = (++evals, f(x[i]));
                }
            }
        }
    }
    sort_simplex();
    return {x[order[0]], fx[order[0]], evals};
}

// restart cycles with shrinking simplex until a full cycle improves < 1e-12
NelderMeadResult polished_minimize(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> x0, double step0,
                                   bool* converged) {
    NelderMeadResult best;
    best.x = std::move(x0);
    best.f = f(best.x);
    best.evals = 1;
    double step = step0;
    *converged = false;
    for (int cycle = 0; cycle < 24; ++cycle) {
        NelderMeadResult r = nelder_mead(f, best.x, step, 4000);
        const double improvement = best.f - r.f;
        const int used = r.evals;
        if (r.f < best.f) best = std::move(r);
        best.evals += used;
        if (improvement < 1e-12) {
            *converged = true;
            break;
        }
        step = std::max(0.25 * step, 1e-7);
    }
    return best;
}

// --- four-coherent machinery ---------------------------------------------

constexpr std::array<int, 4> kSpinSign = {-1, -1, +1, +1};

void assemble_overlaps(const ModelParams& p, const FourCoherentParams& q,
                       Eigen::Matrix4d& M, Eigen::Matrix4d& N) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double dl = q.disp[i] - q.disp[j];
            const double O = std::exp(-0.5 * dl * dl);
            if (kSpinSign[i] == kSpinSign[j]) {
                const double s = kSpinSign[i];
                N(i, j) = O;
                M(i, j) = O * (p.omega * q.disp[i] * q.disp[j] +
                               0.5 * s * p.epsilon +
                               s * p.g * (q.disp[i] + q.disp[j]));
            } else {
                N(i, j) = 0.0;
                M(i, j) = O * 0.5 * p.Omega;
            }
        }
    }
}

double four_energy_raw(const ModelParams& p, const FourCoherentParams& q,
                       double* norm_out) {
    Eigen::Matrix4d M, N;
    assemble_overlaps(p, q, M, N);
    const Eigen::Map<const Eigen::Vector4d> a(q.amp.data());
    const double norm = a.dot(N * a);
    if (norm_out) *norm_out = norm;
    if (norm < 1e-12) return std::numeric_limits<double>::quiet_NaN();
    return a.dot(M * a) / norm;
}

// exact optimal amplitudes at fixed displacements: lowest eigenpair of the
// pencil (M, N), with N whitened through its well-conditioned subspace
bool polish_amplitudes(const ModelParams& p, FourCoherentParams& q, double* energy) {
    Eigen::Matrix4d M, N;
    assemble_overlaps(p, q, M, N);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> en(N);
    const double nmax_ev = en.eigenvalues().maxCoeff();
    if (!(nmax_ev > 0.0)) return false;
    std::vector<int> keep;
    for (int i = 0; i < 4; ++i)
        if (en.eigenvalues()(i) > 1e-10 * nmax_ev) keep.push_back(i);
    if (keep.empty()) return false;
    Eigen::MatrixXd W(4, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
        W.col(k) = en.eigenvectors().col(keep[k]) /
                   std::sqrt(en.eigenvalues()(keep[k]));
    Eigen::MatrixXd Mw = W.transpose() * M * W;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(Mw);
    Eigen::VectorXd a = W * em.eigenvectors().col(0);
    for (int i = 0; i < 4; ++i) q.amp[i] = a(i);
    *energy = em.eigenvalues()(0);
    return true;
}

FourCoherentParams gvm_embedding(const ModelParams& p, double lambda, double theta) {
    FourCoherentParams q;
    q.amp = {std::sin(0.5 * theta), 0.0, std::cos(0.5 * theta), 0.0};
    q.disp = {lambda, -lambda, -lambda, lambda};
    return q;
}

std::vector<double> pack(const FourCoherentParams& q) {
    return {q.amp[0], q.amp[1], q.amp[2], q.amp[3],
            q.disp[0], q.disp[1], q.disp[2], q.disp[3]};
}

FourCoherentParams unpack(const std::vector<double>& v) {
    FourCoherentParams q;
    for (int i = 0; i < 4; ++i) {
        q.amp[i] = v[i];
        q.disp[i] = v[4 + i];
    }
    return q;
}

void normalize_state(FourCoherentParams& q) {
    Eigen::Matrix4d M, N;
    ModelParams dummy; // overlaps only need the displacements
    assemble_overlaps(dummy, q, M, N);
    const Eigen::Map<const Eigen::Vector4d> a(q.amp.data());
    const double norm = a.dot(N * a);
    if (norm > 0.0)
        for (double& v : q.amp) v /= std::sqrt(norm);
}

} // namespace

const char* ansatz_name(Ansatz a) {
    switch (a) {
        case Ansatz::FixedLambda: return "fixed-lambda";
        case Ansatz::GVM: return "gvm";
        case Ansatz::FourCoherent: return "four-coherent";
        case Ansatz::SmallG: return "small-g";
    }
    return "?";
}

double energy_two_state(const ModelParams& p, double lambda, double theta) {
    return p.omega * lambda * lambda - 2.0 * p.g * lambda +
           0.5 * (p.Omega * std::exp(-2.0 * lambda * lambda) * std::sin(theta) +
                  p.epsilon * std::cos(theta));
}

double two_state_energy_lambda(const ModelParams& p, double lambda) {
    const double e = p.Omega * std::exp(-2.0 * lambda * lambda);
    return p.omega * lambda * lambda - 2.0 * p.g * lambda -
           0.5 * std::sqrt(e * e + p.epsilon * p.epsilon);
}

VariationalSolution minimize_two_state(const ModelParams& p, TwoStateMode mode) {
    p.validate();
    VariationalSolution sol;
    sol.ansatz = mode == TwoStateMode::FixedLambda ? Ansatz::FixedLambda : Ansatz::GVM;

    double lambda = 0.0;
    int iters = 0;
    bool converged = true;
    if (mode == TwoStateMode::FixedLambda) {
        lambda = p.g / p.omega;
    } else if (p.g > 0.0) {
        // global scan over [0, 2g/w]; E_G can carry two local minima around
        // g_c, so refine only inside the winning cell
        const double hi = 2.0 * p.g / p.omega;
        const int npts = 4097;
        double best_l = p.g / p.omega; // fixed-lambda candidate keeps
        double best_e = two_state_energy_lambda(p, best_l); // E_fixed >= E_gvm exact
        int best_i = -1;
        for (int i = 0; i < npts; ++i) {
            const double l = hi * i / (npts - 1);
            const double e = two_state_energy_lambda(p, l);
            if (e < best_e) {
                best_e = e;
                best_l = l;
                best_i = i;
            }
        }
        double lo_b = best_l, hi_b = best_l;
        if (best_i >= 0) {
            lo_b = hi * std::max(0, best_i - 1) / (npts - 1);
            hi_b = hi * std::min(npts - 1, best_i + 1) / (npts - 1);
        } else {
            lo_b = std::max(0.0, best_l - hi / (npts - 1));
            hi_b = std::min(hi, best_l + hi / (npts - 1));
        }
        double flo = eg_derivative(p, lo_b), fhi = eg_derivative(p, hi_b);
        if (flo <= 0.0 && fhi >= 0.0) {
            double a = lo_b, b = hi_b;
            for (iters = 0; iters < 200; ++iters) {
                const double mid = 0.5 * (a + b);
                const double fm = eg_derivative(p, mid);
                if (std::abs(fm) <= 1e-12 || (b - a) < 1e-18 * std::max(1.0, hi)) {
                    a = b = mid;
                    break;
                }
                (fm < 0.0 ? a : b) = mid;
            }
            lambda = 0.5 * (a + b);
        } else {
            // derivative has no bracketed root in the cell; golden-section
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = lo_b, b = hi_b;
            double c = b - gr * (b - a), d = a + gr * (b - a);
            double fc = two_state_energy_lambda(p, c);
            double fd = two_state_energy_lambda(p, d);
            for (iters = 0; iters < 300 && (b - a) > 1e-16 * std::max(1.0, hi); ++iters) {
                if (fc < fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - gr * (b - a);
                    fc = two_state_energy_lambda(p, c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + gr * (b - a);
                    fd = two_state_energy_lambda(p, d);
                }
            }
            lambda = 0.5 * (a + b);
        }
        converged = std::abs(eg_derivative(p, lambda)) <= 1e-12 ||
                    std::abs(lambda) < 1e-15;
        // keep the scan winner if refinement did not help
        if (two_state_energy_lambda(p, best_l) < two_state_energy_lambda(p, lambda))
            lambda = best_l;
    }

    sol.energy = two_state_energy_lambda(p, lambda);
    sol.converged = converged;
    sol.iterations = iters;
    sol.params["lambda"] = lambda;
    sol.params["theta"] = theta_branch(p, lambda);
    return sol;
}

double energy_four_coherent(const ModelParams& p, const FourCoherentParams& q) {
    double norm = 0.0;
    const double e = four_energy_raw(p, q, &norm);
    if (norm < 1e-12)
        throw DegenerateState("four-coherent state norm underflow");
    return e;
}

VariationalSolution minimize_four_coherent(const ModelParams& p) {
    p.validate();
    const VariationalSolution gvm = minimize_two_state(p, TwoStateMode::GVM);
    const double lam = gvm.params.at("lambda");
    const double th = gvm.params.at("theta");

    const auto objective = [&p](const std::vector<double>& v) {
        double norm = 0.0;
        const double e = four_energy_raw(p, unpack(v), &norm);
        if (!(norm >= 1e-12) || !std::isfinite(e)) return 1e6;
        return e;
    };

    // deterministic multi-start: polaron-only, two anti-polaron
    // perturbations at the mirrored displacements, symmetric-constraint
    std::vector<FourCoherentParams> starts;
    starts.push_back(gvm_embedding(p, lam, th));
    for (double amp : {+0.1, -0.1}) {
        FourCoherentParams q = gvm_embedding(p, lam, th);
        q.amp[1] = amp * (q.amp[0] != 0.0 ? std::copysign(1.0, q.amp[0]) : 1.0);
        q.amp[3] = amp * (q.amp[2] != 0.0 ? std::copysign(1.0, q.amp[2]) : 1.0);
        starts.push_back(q);
    }
    {
        // parity-constrained family: amp = (aP, aA, -aP, -aA)/sqrt(2),
        // disp = (lP, lA, -lP, -lA); minimized in the reduced coordinates
        const auto sym_obj = [&](const std::vector<double>& v) {
            FourCoherentParams q;
            const double s = 1.0 / std::sqrt(2.0);
            q.amp = {s * v[0], s * v[1], -s * v[0], -s * v[1]};
            q.disp = {v[2], v[3], -v[2], -v[3]};
            double norm = 0.0;
            const double e = four_energy_raw(p, q, &norm);
            if (!(norm >= 1e-12) || !std::isfinite(e)) return 1e6;
            return e;
        };
        bool conv = false;
        NelderMeadResult r = polished_minimize(
            sym_obj, {1.0, 0.05, std::max(lam, 0.02), -std::max(lam, 0.02)},
            0.1, &conv);
        FourCoherentParams q;
        const double s = 1.0 / std::sqrt(2.0);
        q.amp = {s * r.x[0], s * r.x[1], -s * r.x[0], -s * r.x[1]};
        q.disp = {r.x[2], r.x[3], -r.x[2], -r.x[3]};
        starts.push_back(q);
    }

    FourCoherentParams best_q = starts[0];
    double best_e = std::numeric_limits<double>::infinity();
    bool any_converged = false;
    int total_evals = 0;
    for (const FourCoherentParams& s : starts) {
        bool conv = false;
        NelderMeadResult r = polished_minimize(objective, pack(s), 0.1, &conv);
        total_evals += r.evals;
        FourCoherentParams q = unpack(r.x);
        double e = r.f;
        double polished = 0.0;
        if (polish_amplitudes(p, q, &polished) && polished <= e) e = polished;
        if (e < best_e) {
            best_e = e;
            best_q = q;
        }
        any_converged = any_converged || conv;
    }

    // the GVM point lies inside this ansatz; keep the sharper of the two
    // evaluations of the identical state so the upper-bound chain is exact
    {
        FourCoherentParams q = gvm_embedding(p, lam, th);
        double e = 0.0;
        bool ok = true;
        try {
            e = energy_four_coherent(p, q);
        } catch (const DegenerateState&) {
            ok = false;
        }
        if (ok) {
            const double e_embed = std::min(e, gvm.energy);
            if (e_embed < best_e) {
                best_e = e_embed;
                best_q = q;
            }
        }
    }
    if (best_e > gvm.energy && best_e - gvm.energy < 1e-12) {
        best_e = gvm.energy;
        best_q = gvm_embedding(p, lam, th);
    }

    normalize_state(best_q);
    VariationalSolution sol;
    sol.ansatz = Ansatz::FourCoherent;
    sol.energy = best_e;
    sol.converged = any_converged;
    sol.iterations = total_evals;
    // report C^{+-} with per-spin unit alpha vectors
    const double cdn = std::hypot(best_q.amp[0], best_q.amp[1]);
    const double cup = std::hypot(best_q.amp[2], best_q.amp[3]);
    sol.params["C_minus"] = cdn;
    sol.params["C_plus"] = cup;
    sol.params["alpha_minus_P"] = cdn > 0.0 ? best_q.amp[0] / cdn : 0.0;
    sol.params["alpha_minus_A"] = cdn > 0.0 ? best_q.amp[1] / cdn : 0.0;
    sol.params["alpha_plus_P"] = cup > 0.0 ? best_q.amp[2] / cup : 0.0;
    sol.params["alpha_plus_A"] = cup > 0.0 ? best_q.amp[3] / cup : 0.0;
    sol.params["lambda_minus_P"] = best_q.disp[0];
    sol.params["lambda_minus_A"] = best_q.disp[1];
    sol.params["lambda_plus_P"] = best_q.disp[2];
    sol.params["lambda_plus_A"] = best_q.disp[3];
    return sol;
}

double energy_small_g(const ModelParams& p, double a1, double a2, double l1,
                      double l2) {
    if (std::abs(a1 * a1 + a2 * a2 - 1.0) > 1e-10)
        throw std::invalid_argument("small-g amplitudes must satisfy a1^2+a2^2=1");
    const double dl = l1 - l2;
    return p.omega * (a1 * a1 * l1 * l1 + a2 * a2 * l2 * l2) +
           p.Omega * a1 * a2 * (1.0 - 0.5 * dl * dl) +
           2.0 * p.g * (a2 * a2 * l2 - a1 * a1 * l1) +
           0.5 * p.epsilon * (a2 * a2 - a1 * a1);
}

VariationalSolution small_g_solution(const ModelParams& p) {
    p.validate();
    if (!(p.Omega > 0.0))
        throw std::invalid_argument("small-g solution requires Omega > 0");
    const double R = std::hypot(p.Omega, p.omega);
    const double lambda1 = 2.0 * p.g * (R - p.omega) / (p.Omega * p.Omega);
    const double ratio = -(R - p.omega) / p.Omega; // alpha2/alpha1
    const double eps_c = 2.0 * p.g * lambda1 + p.omega * lambda1 * lambda1 -
                         0.5 * p.Omega * (1.0 / ratio - ratio);
    const double a1 = 1.0 / std::sqrt(1.0 + ratio * ratio);
    const double a2 = ratio * a1;

    VariationalSolution sol;
    sol.ansatz = Ansatz::SmallG;
    sol.converged = true;
    sol.iterations = 0;
    sol.params["alpha1"] = a1;
    sol.params["alpha2"] = a2;
    sol.params["alpha_ratio"] = ratio;
    sol.params["lambda1"] = lambda1;
    sol.params["lambda2"] = 0.0;
    sol.params["epsilon_c"] = eps_c;
    const double gc = p.critical_coupling();
    sol.params["within_validity"] = (gc == 0.0 || p.g <= 0.1 * gc) ? 1.0 : 0.0;
    sol.energy = energy_small_g(p, a1, a2, lambda1, 0.0);
    return sol;
}

} // namespace rabi
