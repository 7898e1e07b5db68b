#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fixtures.hpp"
#include "vacant/pim.hpp"

using namespace vacant;

TEST_CASE("epsilon recipe returns the largest admissible dyadic value") {
    // d = 3, u = 2: the binding constraint is 1/4 + 11/4 eps < u*/(2(u+u*)),
    // i.e. eps < ~0.0319, so the answer is 2^-5.
    double eps = derive_epsilon(3, 2.0);
    CHECK(eps == std::ldexp(1.0, -5));
    double us = u_star(3);
    CHECK(2.0 * (1 + eps) < (2.0 + us) / 2);
    CHECK(0.25 + 2.75 * eps < us / (2 * (2.0 + us)));
    // doubling eps must violate one of the two constraints
    double eps2 = 2 * eps;
    bool c1 = 2.0 * (1 + eps2) < (2.0 + us) / 2;
    bool c2 = 0.25 + 2.75 * eps2 < us / (2 * (2.0 + us));
    CHECK_FALSE((c1 && c2));

    CHECK_THROWS_AS(derive_epsilon(3, u_star(3)), std::invalid_argument);
    CHECK_THROWS_AS(derive_epsilon(3, 99.0), std::invalid_argument);
}

TEST_CASE("parameter derivation: recipes, overrides, rejection") {
    auto p = derive_params(16384, 3, 2.0, 0.25);
    CHECK(p.eps == std::ldexp(1.0, -5));
    CHECK_THAT(p.beta, Catch::Matchers::WithinAbs(0.002, 1e-15));
    double v_plus = interlacement_params(3, 2.0 * (1 + p.eps)).v_u;
    CHECK_THAT(p.gamma, Catch::Matchers::WithinAbs(v_plus * 0.001, 1e-15));
    CHECK(p.L >= 1.0);
    CHECK(p.L < 1.1);  // the asymptotic recipe collapses L at desk scale
    double ln_n = std::log(16384.0);
    CHECK_THAT(p.ell, Catch::Matchers::WithinAbs(ln_n * ln_n, 1e-12));
    CHECK(p.J == 9);
    CHECK_THAT(p.q_sprinkle, Catch::Matchers::WithinAbs(std::pow(16384.0, -0.5), 1e-15));

    auto p2 = derive_params(16384, 3, 2.0, 0.25, GammaRecipe::subcritical, 0.5);
    CHECK(p2.gamma == 0.5);
    CHECK_THAT(p2.L, Catch::Matchers::WithinAbs(128.0, 1e-9));
    CHECK(p2.eps == 0.0);

    auto p3 = derive_params(16384, 3, 6.0, 0.25, GammaRecipe::plain);
    CHECK(p3.gamma == 0.001);  // beta/2 works above the critical level too

    CHECK_THROWS_AS(derive_params(16384, 3, 0.0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(derive_params(16384, 3, 2.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(derive_params(16384, 3, 2.0, 0.25, GammaRecipe::plain, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(derive_params(4, 3, 2.0, 0.25), std::invalid_argument);
    // subcritical recipe refuses u above the critical level
    CHECK_THROWS_AS(derive_params(16384, 3, 6.0, 0.25, GammaRecipe::subcritical),
                    std::invalid_argument);
}

TEST_CASE("segment counts floor and ceil the covering number") {
    PimParams p;
    p.n = 30;
    p.L = 10;
    p.ell = 5;
    CHECK(p.count_floor(1.0) == 2);
    CHECK(p.count_ceil(1.0) == 2);
    CHECK(p.count_floor(1.1) == 2);
    CHECK(p.count_ceil(1.1) == 3);
}

TEST_CASE("concatenated bundle is a seamless trajectory") {
    auto g = generate_random_regular(64, 3, 12345);
    auto par = derive_params(64, 3, 1.0, 0.25, GammaRecipe::subcritical, 0.5);
    RngStream rng(2026, 0);
    auto b = sample_segments(g, 5, par, rng);
    REQUIRE(b.segments.size() == 5);
    for (const auto& s : b.segments) {
        s.validate();
        CHECK(s.horizon == par.L);
    }
    CHECK_THROWS_AS(concatenate(b), std::invalid_argument);  // bridges missing

    attach_bridges(g, b, rng);
    REQUIRE(b.bridges.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(b.bridges[i].states.front() == b.seg_end(i));
        CHECK(b.bridges[i].states.back() == b.seg_start(i + 1));
    }
    auto glued = concatenate(b);
    glued.validate();
    CHECK_THAT(glued.horizon, Catch::Matchers::WithinAbs(4 * (par.L + par.ell) + par.L, 1e-12));
    CHECK(glued.states.front() == b.seg_start(0));
    CHECK(glued.states.back() == b.seg_end(4));
    for (std::size_t i = 0; i + 1 < glued.states.size(); ++i)
        REQUIRE(g.has_edge(glued.states[i], glued.states[i + 1]));
    // the state at each segment-start offset matches that segment's start
    for (int i = 0; i < 5; ++i) {
        double off = i * (par.L + par.ell);
        CHECK(glued.state_at(off + 1e-9) == b.segments[i].state_at(1e-9));
    }

    // determinism from the parent stream
    RngStream rng2(2026, 0);
    auto b2 = sample_segments(g, 5, par, rng2);
    attach_bridges(g, b2, rng2);
    CHECK(concatenate(b2).states == glued.states);

    // junction corruption is caught
    b.bridges[0].states.front() = (b.bridges[0].states.front() + 1) % 64;
    CHECK_THROWS_AS(concatenate(b), std::logic_error);
}

TEST_CASE("vacant fields from segments are nested by removal volume") {
    auto g = generate_random_regular(64, 3, 777);
    auto par = derive_params(64, 3, 1.0, 0.25, GammaRecipe::subcritical, 0.5);
    RngStream rng(55, 0);
    // u = 1: floor count 2, ceil count 3 at L + ell ~ 25.3
    long need = par.count_ceil(1.0) + par.J;
    auto b = sample_segments(g, need, par, rng);
    attach_longrange(g, b, rng);
    CHECK(b.lr_rows == need - par.J);
    REQUIRE(b.lr_rows >= par.count_ceil(1.0));

    auto flo = xi_segments(g, b, 1.0, CountVariant::floor_count);
    auto cei = xi_segments(g, b, 1.0, CountVariant::ceil_count);
    auto pri = xi_prime(g, b, 1.0);
    CHECK(flo.provenance == Provenance::segments);
    CHECK(pri.provenance == Provenance::segments_longrange);
    CHECK(cei.vacant.is_subset_of(flo.vacant));
    CHECK(pri.vacant.is_subset_of(cei.vacant));
    CHECK(flo.vacant.count() > 0);

    // long-range bridges respect their endpoints
    for (long i = 0; i < b.lr_rows; ++i)
        for (int j = 1; j <= par.J; ++j) {
            CHECK(b.lr(i, j).states.front() == b.seg_end(i));
            CHECK(b.lr(i, j).states.back() == b.seg_start(i + j));
        }
    CHECK_THROWS_AS(b.lr(b.lr_rows, 1), std::out_of_range);
    CHECK_THROWS_AS(b.lr(0, par.J + 1), std::out_of_range);

    auto small = sample_segments(g, 2, par, rng);
    CHECK_THROWS_AS(xi_segments(g, small, 9.0), std::invalid_argument);
    CHECK_THROWS_AS(xi_prime(g, small, 1.0), std::invalid_argument);
}

TEST_CASE("sprinkling covers the base level on the good event") {
    auto g = generate_random_regular(64, 3, 424);
    auto par = derive_params(64, 3, 1.0, 0.25, GammaRecipe::subcritical, 0.5);
    const double u = 1.0;
    double un = sprinkle_level(64, 3, u, 0.25);
    CHECK(un > u);
    CHECK(un <= (u + u_star(3)) / 2 + 1e-15);
    CHECK_THROWS_AS(sprinkle_level(64, 3, 9.0, 0.25), std::invalid_argument);

    long M_un = par.count_ceil(un);
    long need = M_un + par.J;
    RngStream srng(90, 0);
    auto b = sample_segments(g, need, par, srng);
    attach_longrange(g, b, srng);
    auto reference = xi_prime(g, b, un);

    int good_seen = 0, bad_seen = 0;
    for (int seed = 0; seed < 40; ++seed) {
        RngStream thin(7000 + seed, 0);
        auto res = sprinkle(g, b, u, thin);
        CHECK(res.u_n == un);
        CHECK(res.M_un == M_un);
        CHECK(res.config.provenance == Provenance::sprinkled);
        if (res.good_event) {
            ++good_seen;
            CHECK(res.kept_count >= res.M_u + 1);
            // deletions only ever grow the vacant set relative to xi'
            CHECK(reference.vacant.is_subset_of(res.config.vacant));
        } else {
            ++bad_seen;
            // placeholder configuration: everything vacant except vertex 0
            CHECK(res.config.vacant.count() == 63);
            CHECK_FALSE(res.config.vacant.contains(0));
        }
    }
    // q_sprinkle = 1/8 at n = 64: both branches occur within 40 seeds
    CHECK(good_seen > 0);
    CHECK(bad_seen > 0);

    auto tiny = sample_segments(g, 2, par, srng);
    RngStream t(1, 0);
    CHECK_THROWS_AS(sprinkle(g, tiny, u, t), std::invalid_argument);
}

TEST_CASE("walk-vs-glued frequency report is deterministic and well-formed") {
    auto g = generate_random_regular(32, 3, 5);
    auto par = derive_params(32, 3, 0.5, 0.25, GammaRecipe::subcritical, 0.5);
    RngStream rng(61, 0);
    auto rep = radon_nikodym_check(g, 0.5, par, 200, rng, 1e9);
    CHECK(rep.n == 32);
    CHECK(rep.replicas == 200);
    CHECK(rep.flagged == 0);  // threshold astronomically high
    CHECK(rep.ok());
    CHECK(rep.max_abs_z >= 0);
    CHECK(rep.worst_vertex >= 0);
    for (int v = 0; v < 32; ++v) {
        CHECK(rep.freq_walk[v] >= 0.0);
        CHECK(rep.freq_walk[v] <= 1.0);
        CHECK(rep.freq_glued[v] >= 0.0);
        CHECK(rep.freq_glued[v] <= 1.0);
    }
    RngStream rng2(61, 0);
    auto rep2 = radon_nikodym_check(g, 0.5, par, 200, rng2, 1e9);
    CHECK(rep2.max_abs_z == rep.max_abs_z);
    CHECK(rep2.freq_glued == rep.freq_glued);
}
