#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "vacant/potential.hpp"

using namespace vacant;

namespace {
VertexSet single(int n, int v) {
    VertexSet s(n);
    s.insert(v);
    return s;
}
}  // namespace

TEST_CASE("hitting times on complete graphs match the geometric-jump value") {
    // From x != y the jump chain needs Geometric(1/(m-1)) steps, each Exp(1):
    // E_x[H_y] = m - 1 on K_m.
    auto k4 = fixtures::k4();
    auto sol = expected_hitting_time(k4, single(4, 3));
    CHECK(sol.max_residual <= 1e-10);
    CHECK(sol.h[3] == 0.0);
    for (int x = 0; x < 3; ++x) CHECK_THAT(sol.h[x], Catch::Matchers::WithinAbs(3.0, 1e-10));
    CHECK_THAT(sol.stationary_mean, Catch::Matchers::WithinAbs(9.0 / 4.0, 1e-10));
    // f_star = 1 - h / E[H]: 1 at the target, -1/3 elsewhere
    CHECK_THAT(sol.f_star[3], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(sol.f_star[0], Catch::Matchers::WithinAbs(-1.0 / 3.0, 1e-10));

    auto k8 = fixtures::complete(7);
    auto sol8 = expected_hitting_time(k8, single(8, 0));
    CHECK_THAT(sol8.h[5], Catch::Matchers::WithinAbs(7.0, 1e-10));
    CHECK_THAT(sol8.stationary_mean, Catch::Matchers::WithinAbs(49.0 / 8.0, 1e-10));

    CHECK_THROWS_AS(expected_hitting_time(k4, VertexSet(4)), std::invalid_argument);
}

TEST_CASE("stationary hitting means obey the eigentime identity") {
    // For a vertex-transitive graph, sum_x pi_x E_x[H_y] equals the sum of
    // inverse nonzero generator eigenvalues. Petersen: 5/(2/3) + 4/(5/3) = 99/10.
    // Heawood: 1/2 + 6/(1 - sqrt2/3) + 6/(1 + sqrt2/3) = 223/14.
    auto pt = fixtures::petersen();
    auto sp = expected_hitting_time(pt, single(10, 0));
    CHECK_THAT(sp.stationary_mean, Catch::Matchers::WithinAbs(9.9, 1e-10));

    auto hw = fixtures::heawood();
    auto sh = expected_hitting_time(hw, single(14, 3));
    CHECK_THAT(sh.stationary_mean, Catch::Matchers::WithinAbs(223.0 / 14.0, 1e-10));
}

TEST_CASE("equilibrium potential interpolates between target and sink") {
    auto k4 = fixtures::k4();
    double res = 0;
    auto pot = equilibrium_potential(k4, single(4, 0), single(4, 3), &res);
    CHECK(res <= 1e-12);
    CHECK(pot[0] == 1.0);
    CHECK(pot[3] == 0.0);
    CHECK_THAT(pot[1], Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THAT(pot[2], Catch::Matchers::WithinAbs(0.5, 1e-12));

    VertexSet overlap(4);
    overlap.insert(0);
    CHECK_THROWS_AS(equilibrium_potential(k4, overlap, overlap), std::invalid_argument);
    CHECK_THROWS_AS(equilibrium_potential(k4, VertexSet(4), single(4, 1)),
                    std::invalid_argument);

    // harmonicity away from A and C on a bigger graph
    auto g = generate_random_regular(128, 3, 21);
    VertexSet A = ball(g, 0, 1);
    VertexSet C = ball(g, 64, 1);
    bool disjoint = true;
    A.for_each([&](int v) {
        if (C.contains(v)) disjoint = false;
    });
    REQUIRE(disjoint);
    auto gp = equilibrium_potential(g, A, C, &res);
    CHECK(res <= 1e-10);
    for (int v = 0; v < g.n(); ++v) {
        if (A.contains(v) || C.contains(v)) continue;
        double avg = 0;
        const int* nb = g.neighbors(v);
        for (int i = 0; i < 3; ++i) avg += gp[nb[i]];
        CHECK_THAT(gp[v], Catch::Matchers::WithinAbs(avg / 3.0, 1e-9));
        CHECK(gp[v] >= -1e-12);
        CHECK(gp[v] <= 1.0 + 1e-12);
    }
}

TEST_CASE("edge-sum and generator Dirichlet forms agree") {
    auto g = generate_random_regular(200, 4, 8);
    RngStream rng(17, 0);
    std::vector<double> f(200), h(200);
    for (int i = 0; i < 200; ++i) {
        f[i] = rng.uniform() * 2 - 1;
        h[i] = rng.uniform() * 2 - 1;
    }
    double a = dirichlet_form(g, f, h);
    double b = dirichlet_form_generator(g, f, h);
    CHECK_THAT(a, Catch::Matchers::WithinAbs(b, 1e-10));
    CHECK_THAT(dirichlet_form(g, f, h), Catch::Matchers::WithinAbs(dirichlet_form(g, h, f), 1e-14));
    // constant functions carry no energy
    std::vector<double> c(200, 3.7);
    CHECK_THAT(dirichlet_form(g, c, c), Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("survival probability matches the K4 closed form") {
    // Killed kernel on the 3 non-target states has Perron value 2/3, and the
    // uniform vector is its eigenvector: P_pi[H_y > T] = (3/4) exp(-T/3).
    auto k4 = fixtures::k4();
    auto A = single(4, 1);
    for (double T : {0.0, 0.7, 3.0, 12.0, 40.0}) {
        double expect = 0.75 * std::exp(-T / 3.0);
        CHECK_THAT(survival_probability(k4, A, T), Catch::Matchers::WithinAbs(expect, 1e-12));
    }
    for (double T : {0.5, 4.0}) {
        CHECK_THAT(survival_probability_from(k4, A, 3, T),
                   Catch::Matchers::WithinAbs(std::exp(-T / 3.0), 1e-12));
    }
    CHECK(survival_probability_from(k4, A, 1, 5.0) == 0.0);  // start inside A
    CHECK(survival_probability(k4, VertexSet::full(4), 2.0) == 0.0);
    CHECK_THROWS_AS(survival_probability(k4, A, 2e7), std::invalid_argument);
    CHECK_THROWS_AS(survival_probability(k4, A, -1.0), std::invalid_argument);
}

TEST_CASE("conditional avoidance probability reduces to a survival ratio") {
    // On K4 with A = {1}, y = 2: P[H_{1,2} > T] = (1/2) exp(-2T/3), so the
    // conditional value is (2/3) exp(-T/3).
    auto k4 = fixtures::k4();
    auto A = single(4, 1);
    for (double T : {1.0, 3.0, 9.0}) {
        double expect = (2.0 / 3.0) * std::exp(-T / 3.0);
        CHECK_THAT(conditional_avoid_probability(k4, A, 2, T),
                   Catch::Matchers::WithinAbs(expect, 1e-12));
    }
    CHECK_THROWS_AS(conditional_avoid_probability(k4, A, 1, 1.0), std::invalid_argument);
}

TEST_CASE("quasi-stationary law on K4 is uniform with eigenvalue 2/3") {
    auto k4 = fixtures::k4();
    auto A = single(4, 3);
    auto qs = quasi_stationary(k4, A);
    CHECK_THAT(qs.eigenvalue, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-10));
    CHECK_THAT(qs.expected_hitting, Catch::Matchers::WithinAbs(3.0, 1e-9));
    CHECK(qs.alpha[3] == 0.0);
    for (int v = 0; v < 3; ++v)
        CHECK_THAT(qs.alpha[v], Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-10));

    // survival from alpha is exactly exponential: two independent code paths
    for (double t : {0.5, 2.0, 6.0}) {
        double series = survival_probability_nu(k4, A, qs.alpha, t);
        CHECK_THAT(series, Catch::Matchers::WithinAbs(std::exp(-t / 3.0), 1e-10));
    }

    CHECK_THROWS_AS(quasi_stationary(k4, VertexSet(4)), std::invalid_argument);
    CHECK_THROWS_AS(quasi_stationary(k4, VertexSet::full(4)), std::invalid_argument);

    // exponentiality also holds on an asymmetric target (ball in a random graph)
    // power iteration stops on step-to-step change, so alpha keeps a residual
    // subdominant component; 2e-7 is far below any non-exponential signal
    auto g = generate_random_regular(100, 3, 13);
    auto B = ball(g, 17, 1);
    auto q2 = quasi_stationary(g, B);
    for (double t : {1.0, 10.0}) {
        double series = survival_probability_nu(g, B, q2.alpha, t);
        double rate = 1.0 - q2.eigenvalue;
        CHECK_THAT(series, Catch::Matchers::WithinAbs(std::exp(-t * rate), 2e-7));
    }
}

TEST_CASE("inverse-hitting-time sandwich holds and is tight on K4") {
    auto k4 = fixtures::k4();
    auto rep = verify_EH_bounds(k4, single(4, 0), single(4, 3));
    CHECK(rep.ok());
    CHECK_FALSE(rep.lower_vacuous);
    CHECK_THAT(rep.inv_expected_hitting, Catch::Matchers::WithinAbs(4.0 / 9.0, 1e-10));
    CHECK_THAT(rep.dirichlet_energy, Catch::Matchers::WithinAbs(1.0 / 6.0, 1e-12));
    CHECK_THAT(rep.sup_fstar_on_C, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-10));
    CHECK_THAT(rep.lower, Catch::Matchers::WithinAbs(1.0 / 18.0, 1e-10));
    CHECK_THAT(rep.upper, Catch::Matchers::WithinAbs(8.0 / 3.0, 1e-10));

    // centre the zero-potential set on a farthest vertex so the two balls are
    // disjoint by construction (eccentricity of 0 exceeds 3 at this size)
    auto g = generate_random_regular(256, 3, 23);
    auto dist = distances_from(g, 0, g.n());
    int far = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
    auto rep2 = verify_EH_bounds(g, ball(g, 0, 1), ball(g, far, 2));
    CHECK(rep2.ok());
}

TEST_CASE("survival sandwich chain is an equality chain on K4") {
    auto k4 = fixtures::k4();
    std::vector<double> ts{0.5, 2.0, 5.0};
    auto rep = verify_survival_bounds(k4, single(4, 3), ts);
    CHECK(rep.ok());
    CHECK_THAT(rep.expected_hitting, Catch::Matchers::WithinAbs(9.0 / 4.0, 1e-10));
    CHECK_THAT(rep.qs_expected_hitting, Catch::Matchers::WithinAbs(3.0, 1e-9));
    CHECK_THAT(rep.boundary_flow, Catch::Matchers::WithinAbs(0.25, 1e-14));
    // on K4 all three links and both exponential envelopes collapse to equality
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK_THAT(rep.survival[i], Catch::Matchers::WithinAbs(rep.lower[i], 1e-8));
        CHECK_THAT(rep.survival[i], Catch::Matchers::WithinAbs(rep.upper[i], 1e-8));
    }

    auto g = generate_random_regular(256, 3, 29);
    auto rep2 = verify_survival_bounds(g, ball(g, 5, 1), {1.0, 50.0, 400.0});
    CHECK(rep2.ok());
    CHECK(rep2.qs_expected_hitting >= rep2.expected_hitting / (1.0 - rep2.pi_A) - 1e-9);
}

TEST_CASE("gambler's ruin closed form") {
    CHECK_THAT(gamblers_ruin(2.0, 1, 3), Catch::Matchers::WithinAbs(1.0 / 7.0, 1e-15));
    CHECK_THAT(gamblers_ruin(3.0, 2, 4), Catch::Matchers::WithinAbs(0.1, 1e-15));
    CHECK(gamblers_ruin(1.0, 2, 5) == 0.4);
    CHECK(gamblers_ruin(2.0, 0, 3) == 0.0);
    CHECK(gamblers_ruin(2.0, 3, 3) == 1.0);
    CHECK_THROWS_AS(gamblers_ruin(2.0, 4, 3), std::invalid_argument);
}

TEST_CASE("boundary hitting probability equals the birth-death value on tree balls") {
    auto hw = fixtures::heawood();  // girth 6: radius-2 balls are trees
    auto rep = verify_boundary_hitting(hw, 0, 0, 2);
    CHECK(rep.tx == 0);
    CHECK(rep.exact_match);
    CHECK_THAT(rep.tree_value, Catch::Matchers::WithinAbs(1.0 / 7.0, 1e-15));
    CHECK(rep.boundary.size() == 6);  // sphere of radius 2
    for (double p : rep.probs) CHECK_THAT(p, Catch::Matchers::WithinAbs(1.0 / 7.0, 1e-12));

    auto r11 = verify_boundary_hitting(hw, 0, 1, 1);
    CHECK(r11.exact_match);
    CHECK_THAT(r11.tree_value, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));

    // Petersen radius-1 balls are stars; the value only depends on the ball
    auto pt = fixtures::petersen();
    auto rp = verify_boundary_hitting(pt, 0, 0, 1);
    CHECK(rp.exact_match);
    CHECK_THAT(rp.tree_value, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));

    // outer ball covering the graph is refused
    CHECK_THROWS_AS(verify_boundary_hitting(fixtures::k4(), 0, 0, 1), std::invalid_argument);

    // cyclic outer ball: no exactness claim, probabilities stay in [0, 1]
    auto g = generate_random_regular(64, 3, 3);
    int cyc = -1;
    for (int x = 0; x < 64 && cyc < 0; ++x)
        if (tree_excess(g, ball(g, x, 2)) > 0 && ball(g, x, 2).count() < 64) cyc = x;
    REQUIRE(cyc >= 0);
    auto rc = verify_boundary_hitting(g, cyc, 0, 2);
    CHECK(rc.tx > 0);
    CHECK_FALSE(rc.exact_match);
    CHECK(rc.max_prob <= 1.0 + 1e-12);
    CHECK(rc.min_prob >= -1e-12);
}
