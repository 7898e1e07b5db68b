#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "graph.hpp"
#include "vertex_set.hpp"

namespace vacant {

// Exact potential theory for the rate-1 continuous-time walk on a regular
// graph: generator Delta = P - I with P = A/d, stationary measure uniform.
// All solves are direct sparse factorizations with one refinement step;
// sizes are capped at 5*10^4 vertices.

namespace detail {
inline void check_solve_size(const RegularGraph& g) {
    if (g.n() > 50000)
        throw std::invalid_argument("exact solve refused: n exceeds 5*10^4");
}

// Maps A^c to contiguous indices; builds I - P restricted to A^c.
struct KilledSystem {
    std::vector<int> idx;   // vertex -> position in A^c (or -1)
    std::vector<int> vert;  // position -> vertex
    Eigen::SparseMatrix<double> M;

    KilledSystem(const RegularGraph& g, const VertexSet& A) {
        if (A.universe() != g.n())
            throw std::invalid_argument("killed system: universe mismatch");
        idx.assign(g.n(), -1);
        for (int v = 0; v < g.n(); ++v)
            if (!A.contains(v)) {
                idx[v] = static_cast<int>(vert.size());
                vert.push_back(v);
            }
        const int m = static_cast<int>(vert.size());
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(m) * (g.d() + 1));
        const double invd = 1.0 / g.d();
        for (int i = 0; i < m; ++i) {
            trip.emplace_back(i, i, 1.0);
            const int* nb = g.neighbors(vert[i]);
            for (int k = 0; k < g.d(); ++k)
                if (idx[nb[k]] >= 0) trip.emplace_back(i, idx[nb[k]], -invd);
        }
        M.resize(m, m);
        M.setFromTriplets(trip.begin(), trip.end());
    }
};

inline Eigen::VectorXd solve_refined(const Eigen::SparseMatrix<double>& M,
                                     const Eigen::VectorXd& b, double* residual_out) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(M);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("sparse factorization failed");
    Eigen::VectorXd x = lu.solve(b);
    Eigen::VectorXd r = b - M * x;
    x += lu.solve(r);
    r = b - M * x;
    if (residual_out) *residual_out = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    return x;
}
}  // namespace detail

// Expected hitting times of A: h(x) = E_x[H_A], zero on A, (I-P) h = 1 on A^c.
// f_star is the normalized minimizer 1 - h/E[H_A] of the inverse-hitting-time
// variational formula; stationary_mean is E[H_A] under the uniform start.
struct HittingSolution {
    std::vector<double> h;
    std::vector<double> f_star;
    double stationary_mean = 0;
    double max_residual = 0;
};

inline HittingSolution expected_hitting_time(const RegularGraph& g, const VertexSet& A) {
    detail::check_solve_size(g);
    if (A.empty()) throw std::invalid_argument("expected_hitting_time: empty target");
    detail::KilledSystem sys(g, A);
    const int m = static_cast<int>(sys.vert.size());
    HittingSolution sol;
    sol.h.assign(g.n(), 0.0);
    if (m > 0) {
        Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
        Eigen::VectorXd x = detail::solve_refined(sys.M, b, &sol.max_residual);
        for (int i = 0; i < m; ++i) sol.h[sys.vert[i]] = x(i);
    }
    double mean = 0;
    for (double v : sol.h) mean += v;
    mean /= g.n();
    sol.stationary_mean = mean;
    sol.f_star.assign(g.n(), 0.0);
    for (int v = 0; v < g.n(); ++v) sol.f_star[v] = 1.0 - sol.h[v] / mean;
    return sol;
}

// Equilibrium potential g*(x) = P_x[H_A <= H_C]: 1 on A, 0 on C, harmonic
// elsewhere. A and C must be disjoint and nonempty.
inline std::vector<double> equilibrium_potential(const RegularGraph& g, const VertexSet& A,
                                                 const VertexSet& C,
                                                 double* residual_out = nullptr) {
    detail::check_solve_size(g);
    if (A.empty() || C.empty())
        throw std::invalid_argument("equilibrium_potential: A and C must be nonempty");
    bool disjoint = true;
    A.for_each([&](int v) {
        if (C.contains(v)) disjoint = false;
    });
    if (!disjoint) throw std::invalid_argument("equilibrium_potential: A and C intersect");
    VertexSet frozen(g.n());
    A.for_each([&](int v) { frozen.insert(v); });
    C.for_each([&](int v) { frozen.insert(v); });
    detail::KilledSystem sys(g, frozen);
    const int m = static_cast<int>(sys.vert.size());
    std::vector<double> out(g.n(), 0.0);
    A.for_each([&](int v) { out[v] = 1.0; });
    if (m > 0) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
        const double invd = 1.0 / g.d();
        for (int i = 0; i < m; ++i) {
            const int* nb = g.neighbors(sys.vert[i]);
            for (int k = 0; k < g.d(); ++k)
                if (A.contains(nb[k])) b(i) += invd;
        }
        double res = 0;
        Eigen::VectorXd x = detail::solve_refined(sys.M, b, &res);
        if (residual_out) *residual_out = res;
        for (int i = 0; i < m; ++i) out[sys.vert[i]] = x(i);
    } else if (residual_out) {
        *residual_out = 0;
    }
    return out;
}

// Dirichlet form via the edge sum: D(f,h) = 1/2 sum_{x,y} (f(x)-f(y))(h(x)-h(y)) pi_x p_xy.
inline double dirichlet_form(const RegularGraph& g, const std::vector<double>& f,
                             const std::vector<double>& h) {
    if (static_cast<int>(f.size()) != g.n() || static_cast<int>(h.size()) != g.n())
        throw std::invalid_argument("dirichlet_form: size mismatch");
    double s = 0;
    const double w = 1.0 / (static_cast<double>(g.n()) * g.d());  // pi_x p_xy per ordered pair
    for (int x = 0; x < g.n(); ++x) {
        const int* nb = g.neighbors(x);
        for (int i = 0; i < g.d(); ++i) {
            int y = nb[i];
            s += (f[x] - f[y]) * (h[x] - h[y]) * w;
        }
    }
    return 0.5 * s;
}

// Same bilinear form via the generator: D(f,h) = -sum_x (Delta f)(x) h(x) pi_x.
inline double dirichlet_form_generator(const RegularGraph& g, const std::vector<double>& f,
                                       const std::vector<double>& h) {
    if (static_cast<int>(f.size()) != g.n() || static_cast<int>(h.size()) != g.n())
        throw std::invalid_argument("dirichlet_form: size mismatch");
    double s = 0;
    const double pi = 1.0 / g.n();
    for (int x = 0; x < g.n(); ++x) {
        const int* nb = g.neighbors(x);
        double lap = -f[x] * g.d();
        for (int i = 0; i < g.d(); ++i) lap += f[nb[i]];
        s -= lap / g.d() * h[x] * pi;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Survival probability P_nu[H_A > T] by uniformization: with rate-1 jumps,
// P[H_A > T] = sum_k Poisson(T)(k) * nu^T (P_{A^c})^k 1. Truncation at
// mean + 12 sqrt(mean) keeps the Poisson tail below 1e-12.

namespace detail {
inline double survival_series(const RegularGraph& g, const VertexSet& A,
                              std::vector<double> v, double T) {
    if (T > 1e7) throw std::invalid_argument("survival_probability: T above 10^7 refused");
    if (T < 0) throw std::invalid_argument("survival_probability: negative T");
    const int n = g.n();
    double s0 = 0;
    for (int x = 0; x < n; ++x) {
        if (A.contains(x)) v[x] = 0;
        s0 += v[x];
    }
    if (T == 0) return s0;
    const int K = static_cast<int>(std::ceil(T + 12.0 * std::sqrt(T))) + 4;
    const double logT = std::log(T);
    const double invd = 1.0 / g.d();
    std::vector<double> w(n);
    double total = s0 * std::exp(-T);  // k = 0 term
    for (int k = 1; k <= K; ++k) {
        for (int x = 0; x < n; ++x) {
            if (A.contains(x)) {
                w[x] = 0;
                continue;
            }
            const int* nb = g.neighbors(x);
            double acc = 0;
            for (int i = 0; i < g.d(); ++i) acc += v[nb[i]];
            w[x] = acc * invd;
        }
        std::swap(v, w);
        double sk = 0;
        for (int x = 0; x < n; ++x) sk += v[x];
        if (sk <= 0) break;  // A^c mass exhausted (e.g. A = V)
        double logw = -T + k * logT - std::lgamma(static_cast<double>(k) + 1);
        if (logw > -745.0) total += std::exp(logw) * sk;
        if (k > T && logw < -745.0) break;
    }
    return total;
}
}  // namespace detail

// Stationary start.
inline double survival_probability(const RegularGraph& g, const VertexSet& A, double T) {
    detail::check_solve_size(g);
    std::vector<double> nu(g.n(), 1.0 / g.n());
    return detail::survival_series(g, A, std::move(nu), T);
}

// Point start.
inline double survival_probability_from(const RegularGraph& g, const VertexSet& A, int start,
                                        double T) {
    detail::check_solve_size(g);
    if (start < 0 || start >= g.n())
        throw std::invalid_argument("survival_probability_from: bad start");
    std::vector<double> nu(g.n(), 0.0);
    nu[start] = 1.0;
    return detail::survival_series(g, A, std::move(nu), T);
}

// Arbitrary start distribution.
inline double survival_probability_nu(const RegularGraph& g, const VertexSet& A,
                                      const std::vector<double>& nu, double T) {
    detail::check_solve_size(g);
    if (static_cast<int>(nu.size()) != g.n())
        throw std::invalid_argument("survival_probability_nu: size mismatch");
    return detail::survival_series(g, A, nu, T);
}

// F_A^y(T) = P[H_y > T | walk avoids A up to T] under the stationary start.
inline double conditional_avoid_probability(const RegularGraph& g, const VertexSet& A, int y,
                                            double T) {
    if (y < 0 || y >= g.n())
        throw std::invalid_argument("conditional_avoid_probability: bad y");
    if (A.contains(y))
        throw std::invalid_argument("conditional_avoid_probability: y inside A");
    double denom = survival_probability(g, A, T);
    if (denom < 1e-300)
        throw std::runtime_error("conditional_avoid_probability: conditioning event too rare");
    VertexSet Ay = A;
    Ay.insert(y);
    return survival_probability(g, Ay, T) / denom;
}

// ---------------------------------------------------------------------------
// Quasi-stationary distribution on A^c: principal eigenvector alpha of the
// killed kernel P_{A^c}. With rate-1 jumps, survival from alpha is exactly
// exponential and E_alpha[H_A] = 1/(1 - eigenvalue).

struct QuasiStationary {
    std::vector<double> alpha;  // probability vector on V, zero on A
    double eigenvalue = 0;
    double expected_hitting = 0;  // E_alpha[H_A]
    long iterations = 0;
};

inline QuasiStationary quasi_stationary(const RegularGraph& g, const VertexSet& A,
                                        double tol = 1e-12, long max_iters = 1000000) {
    detail::check_solve_size(g);
    if (A.empty()) throw std::invalid_argument("quasi_stationary: empty A");
    if (A.count() == g.n()) throw std::invalid_argument("quasi_stationary: A^c empty");
    const int n = g.n();
    const double invd = 1.0 / g.d();
    std::vector<double> v(n, 0.0), w(n, 0.0);
    for (int x = 0; x < n; ++x)
        if (!A.contains(x)) v[x] = 1.0;
    double lam_prev = 2.0;
    QuasiStationary out;
    for (long it = 1; it <= max_iters; ++it) {
        double norm2 = 0;
        for (int x = 0; x < n; ++x) {
            if (A.contains(x)) {
                w[x] = 0;
                continue;
            }
            const int* nb = g.neighbors(x);
            double acc = 0;
            for (int i = 0; i < g.d(); ++i) acc += v[nb[i]];
            w[x] = acc * invd;
        }
        double ray_num = 0, ray_den = 0;
        for (int x = 0; x < n; ++x) {
            ray_num += v[x] * w[x];
            ray_den += v[x] * v[x];
        }
        double lam = ray_num / ray_den;
        for (int x = 0; x < n; ++x) norm2 += w[x] * w[x];
        double inv = 1.0 / std::sqrt(norm2);
        for (int x = 0; x < n; ++x) v[x] = w[x] * inv;
        if (std::abs(lam - lam_prev) < tol) {
            out.eigenvalue = lam;
            out.iterations = it;
            break;
        }
        lam_prev = lam;
        if (it == max_iters)
            throw std::runtime_error("quasi_stationary: power iteration did not converge");
    }
    double sum = 0;
    for (int x = 0; x < n; ++x) {
        v[x] = std::max(v[x], 0.0);
        sum += v[x];
    }
    out.alpha.assign(n, 0.0);
    for (int x = 0; x < n; ++x) out.alpha[x] = v[x] / sum;
    out.expected_hitting = 1.0 / (1.0 - out.eigenvalue);
    return out;
}

// ---------------------------------------------------------------------------
// Verification records for the potential-theory sandwiches.

// Two-sided bound linking 1/E[H_A] to the Dirichlet energy of the
// equilibrium potential g*_{A,C}:
//   D(g*,g*) (1 - 2 sup_C |f*|)  <=  1/E[H_A]  <=  D(g*,g*) / pi(C)^2.
struct EHBoundsReport {
    double inv_expected_hitting = 0;
    double dirichlet_energy = 0;
    double sup_fstar_on_C = 0;
    double pi_C = 0;
    double lower = 0, upper = 0;
    bool lower_ok = false, upper_ok = false;
    bool lower_vacuous = false;  // sup_C |f*| >= 1/2 makes the lower bound <= 0
    bool ok() const { return lower_ok && upper_ok; }
};

inline EHBoundsReport verify_EH_bounds(const RegularGraph& g, const VertexSet& A,
                                       const VertexSet& C, double slack = 1e-9) {
    EHBoundsReport rep;
    HittingSolution hit = expected_hitting_time(g, A);
    rep.inv_expected_hitting = 1.0 / hit.stationary_mean;
    std::vector<double> gs = equilibrium_potential(g, A, C);
    rep.dirichlet_energy = dirichlet_form(g, gs, gs);
    double sup = 0;
    C.for_each([&](int v) { sup = std::max(sup, std::abs(hit.f_star[v])); });
    rep.sup_fstar_on_C = sup;
    rep.pi_C = static_cast<double>(C.count()) / g.n();
    rep.lower = rep.dirichlet_energy * (1.0 - 2.0 * sup);
    rep.upper = rep.dirichlet_energy / (rep.pi_C * rep.pi_C);
    rep.lower_vacuous = sup >= 0.5;
    rep.lower_ok = rep.lower <= rep.inv_expected_hitting + slack;
    rep.upper_ok = rep.inv_expected_hitting <= rep.upper + slack;
    return rep;
}

// Quasi-stationary sandwich on E[H_A] and the exponential approximation of
// the survival function:
//   (1-pi(A)) / (sum_{x in A, y notin A} pi_x p_xy)  <=  E[H_A]/(1-pi(A))
//      <=  E_alpha[H_A]  <=  E[H_A] + 1/lambda_G
//   (1 - 1/(lambda_G E_alpha)) e^{-t/E_alpha}  <=  P[H_A > t]  <=  (1-pi(A)) e^{-t/E_alpha}.
struct SurvivalBoundsReport {
    double expected_hitting = 0;        // E[H_A], stationary start
    double qs_expected_hitting = 0;     // E_alpha[H_A]
    double pi_A = 0;
    double boundary_flow = 0;           // sum_{x in A, y notin A} pi_x p_xy
    double lambda = 0;                  // spectral gap
    bool chain_ok = false;              // the three-link chain above
    std::vector<double> t_values;
    std::vector<double> survival;       // P[H_A > t]
    std::vector<double> lower, upper;   // exponential bounds at each t
    bool survival_ok = false;
    bool ok() const { return chain_ok && survival_ok; }
};

inline SurvivalBoundsReport verify_survival_bounds(const RegularGraph& g, const VertexSet& A,
                                                   const std::vector<double>& ts,
                                                   double slack = 1e-9) {
    SurvivalBoundsReport rep;
    HittingSolution hit = expected_hitting_time(g, A);
    QuasiStationary qs = quasi_stationary(g, A);
    rep.expected_hitting = hit.stationary_mean;
    rep.qs_expected_hitting = qs.expected_hitting;
    rep.pi_A = static_cast<double>(A.count()) / g.n();
    rep.boundary_flow = static_cast<double>(edge_boundary(g, A)) /
                        (static_cast<double>(g.n()) * g.d());
    rep.lambda = spectral_gap(g);
    double lhs = (1.0 - rep.pi_A) / rep.boundary_flow;
    double mid = rep.expected_hitting / (1.0 - rep.pi_A);
    rep.chain_ok = lhs <= mid + slack && mid <= rep.qs_expected_hitting + slack &&
                   rep.qs_expected_hitting <= rep.expected_hitting + 1.0 / rep.lambda + slack;
    rep.survival_ok = true;
    rep.t_values = ts;
    for (double t : ts) {
        double surv = survival_probability(g, A, t);
        double decay = std::exp(-t / rep.qs_expected_hitting);
        double lo = (1.0 - 1.0 / (rep.lambda * rep.qs_expected_hitting)) * decay;
        double hi = (1.0 - rep.pi_A) * decay;
        rep.survival.push_back(surv);
        rep.lower.push_back(lo);
        rep.upper.push_back(hi);
        if (!(lo <= surv + slack && surv <= hi + slack)) rep.survival_ok = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Boundary hitting check: exact P_y[H_{B(x,r)} < H_{B(x,r+s)^c}] for every y
// on the interior boundary of B(x,r+s). When B(x,r+s) is a tree the value is
// the birth-death closed form (d-2)/((d-1)^{s+1} - 1), independent of y.

inline double gamblers_ruin(double q, int x, int R) {
    if (x < 0 || R < x) throw std::invalid_argument("gamblers_ruin: need 0 <= x <= R");
    if (q == 1.0) return static_cast<double>(x) / R;
    return (std::pow(q, x) - 1.0) / (std::pow(q, R) - 1.0);
}

struct BoundaryHittingReport {
    long tx = 0;
    double tree_value = 0;
    double max_prob = 0;
    double min_prob = 0;
    bool exact_match = false;  // only asserted when tx == 0
    std::vector<int> boundary;
    std::vector<double> probs;
};

inline BoundaryHittingReport verify_boundary_hitting(const RegularGraph& g, int x, int r, int s,
                                                     double tol = 1e-12) {
    if (r < 0 || s < 1) throw std::invalid_argument("verify_boundary_hitting: need r >= 0, s >= 1");
    VertexSet inner = ball(g, x, r);
    VertexSet outer = ball(g, x, r + s);
    if (outer.count() == g.n())
        throw std::invalid_argument("verify_boundary_hitting: outer ball covers the graph");
    BoundaryHittingReport rep;
    rep.tx = tree_excess(g, outer);
    // gamblers_ruin with q = d-1 on the reflected coordinate; start one level
    // inside the absorbing exterior, target s+1 levels down at the inner ball.
    rep.tree_value = gamblers_ruin(static_cast<double>(g.d() - 1), 1, s + 1);
    std::vector<double> pot = equilibrium_potential(g, inner, outer.complement());
    rep.boundary = interior_boundary(g, outer);
    rep.min_prob = std::numeric_limits<double>::infinity();
    for (int y : rep.boundary) {
        rep.probs.push_back(pot[y]);
        rep.max_prob = std::max(rep.max_prob, pot[y]);
        rep.min_prob = std::min(rep.min_prob, pot[y]);
    }
    rep.exact_match = rep.tx == 0 && std::abs(rep.max_prob - rep.tree_value) <= tol &&
                      std::abs(rep.min_prob - rep.tree_value) <= tol;
    return rep;
}

}  // namespace vacant
