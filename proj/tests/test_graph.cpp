#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fixtures.hpp"
#include "vacant/constants.hpp"
#include "vacant/graph.hpp"

using namespace vacant;

TEST_CASE("vertex set maintains cardinality and set algebra") {
    VertexSet s(130);
    for (int v : {0, 1, 63, 64, 65, 128, 129}) s.insert(v);
    s.insert(63);  // duplicate
    CHECK(s.count() == 7);
    CHECK(s.count() == s.recount());
    s.erase(64);
    s.erase(64);
    CHECK(s.count() == 6);
    CHECK(s.count() == s.recount());
    VertexSet c = s.complement();
    CHECK(c.count() == 130 - 6);
    CHECK_FALSE(c.contains(129));
    CHECK(c.contains(64));
    VertexSet all = VertexSet::full(130);
    CHECK(s.is_subset_of(all));
    CHECK_FALSE(all.is_subset_of(s));
    CHECK_THROWS_AS(s.contains(130), std::out_of_range);
}

TEST_CASE("regular graph construction validates structure") {
    CHECK_THROWS_AS(RegularGraph(5, 3, {}), std::invalid_argument);  // odd n*d
    // self-loop
    CHECK_THROWS_AS(RegularGraph(4, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}),
                    std::invalid_argument);
    // parallel edge
    CHECK_THROWS_AS(RegularGraph(4, 3, {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}}),
                    std::invalid_argument);
    // disconnected: two K4 blocks need 8 vertices, d=3
    std::vector<std::pair<int, int>> two_blocks;
    for (int off : {0, 4})
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) two_blocks.emplace_back(off + i, off + j);
    CHECK_THROWS_AS(RegularGraph(8, 3, two_blocks), std::invalid_argument);

    auto g = fixtures::k4();
    CHECK(g.n() == 4);
    CHECK(g.d() == 3);
    CHECK(g.has_edge(2, 3));
    CHECK_FALSE(g.has_edge(1, 1));
}

TEST_CASE("configuration model: determinism, validity, K4 forced at n=4") {
    GenerationStats st;
    auto g = generate_random_regular(64, 3, 12345, &st);
    CHECK(st.attempts >= 1);
    CHECK(st.attempts <= st.budget);
    auto g2 = generate_random_regular(64, 3, 12345);
    CHECK(g.edge_list() == g2.edge_list());
    auto g3 = generate_random_regular(64, 3, 54321);
    CHECK(g.edge_list() != g3.edge_list());

    // any simple 3-regular graph on 4 vertices is K4
    auto k = generate_random_regular(4, 3, 7);
    CHECK(k.edge_list() == fixtures::k4().edge_list());

    CHECK_THROWS_AS(generate_random_regular(5, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_random_regular(3, 3, 1), std::invalid_argument);
}

TEST_CASE("graph text format round-trips and rejects malformed input") {
    auto g = generate_random_regular(32, 4, 99);
    std::ostringstream os;
    save_graph(g, os);
    std::istringstream is(os.str());
    auto h = load_graph(is);
    CHECK(h.n() == g.n());
    CHECK(h.edge_list() == g.edge_list());

    // determinism: same seed gives byte-identical text
    std::ostringstream os2;
    save_graph(generate_random_regular(32, 4, 99), os2);
    CHECK(os.str() == os2.str());

    auto expect_fail = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            load_graph(in);
            FAIL("expected load_graph to throw");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_fail("", "line 1");
    expect_fail("4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n", "line 7");           // missing edge
    expect_fail("4 3\n0 1\n0 2\n0 3\n1 2\n3 1\n2 3\n", "line 6");      // u >= v
    expect_fail("4 3\n0 1\n0 3\n0 2\n1 2\n1 3\n2 3\n", "line 4");      // not ascending
    expect_fail("4 3\n0 1\n0 2\n0 9\n1 2\n1 3\n2 3\n", "line 4");      // out of range
}

TEST_CASE("balls, distances, tree excess on fixed graphs") {
    auto hw = fixtures::heawood();
    CHECK(girth(hw) == 6);
    CHECK(ball(hw, 0, 0).count() == 1);
    CHECK(ball(hw, 0, 1).count() == 4);
    CHECK(ball(hw, 0, 2).count() == 10);  // 1 + 3 + 6 on a tree-like ball
    CHECK(tree_excess(hw, ball(hw, 0, 2)) == 0);
    CHECK(tree_excess(hw, VertexSet::full(14)) == 21 - 14 + 1);

    auto k4 = fixtures::k4();
    CHECK(girth(k4) == 3);
    CHECK(tree_excess(k4, VertexSet::full(4)) == 3);
    VertexSet pair(4);
    pair.insert(0);
    pair.insert(1);
    CHECK(tree_excess(k4, pair) == 0);
    CHECK_THROWS_AS(tree_excess(k4, VertexSet(4)), std::invalid_argument);  // empty

    auto pt = fixtures::petersen();
    CHECK(girth(pt) == 5);
    // radius-2 ball on Petersen covers the whole graph (diameter 2)
    CHECK(ball(pt, 0, 2).count() == 10);

    // disconnected set rejected
    VertexSet far(14);
    far.insert(0);
    far.insert(7);
    CHECK_THROWS_AS(tree_excess(hw, far), std::invalid_argument);
}

TEST_CASE("edge boundary and sampled isoperimetric profile") {
    auto k4 = fixtures::k4();
    VertexSet one(4);
    one.insert(2);
    CHECK(edge_boundary(k4, one) == 3);
    VertexSet two(4);
    two.insert(0);
    two.insert(1);
    CHECK(edge_boundary(k4, two) == 4);

    auto pt = fixtures::petersen();
    VertexSet outer(10);
    for (int i = 0; i < 5; ++i) outer.insert(i);
    CHECK(edge_boundary(pt, outer) == 5);

    RngStream rng(2024, 1);
    auto iso = isoperimetric_profile(k4, 200, rng);
    CHECK(iso.min_ratio == 2.0);  // best cut is |A| = 2 with 4 crossing edges
}

TEST_CASE("bottleneck join produces a two-edge cut") {
    auto a = generate_random_regular(16, 3, 5);
    auto b = generate_random_regular(20, 3, 6);
    auto e1 = a.edge_list().front();
    auto e2 = b.edge_list().back();
    auto j = join_with_bottleneck(a, b, e1, e2);
    CHECK(j.n() == 36);
    CHECK(j.d() == 3);
    CHECK(j.has_edge(e1.first, e2.first + 16));
    CHECK(j.has_edge(e1.second, e2.second + 16));
    VertexSet left(36);
    for (int v = 0; v < 16; ++v) left.insert(v);
    CHECK(edge_boundary(j, left) == 2);

    CHECK_THROWS_AS(join_with_bottleneck(a, b, {0, 9999}, e2), std::invalid_argument);

    // the bottleneck drags the sampled isoperimetric ratio to 2/16
    RngStream rng(7, 7);
    auto iso = isoperimetric_profile(j, 500, rng);
    CHECK(iso.min_ratio <= 2.0 / 16.0 + 1e-12);
}

TEST_CASE("spectral gap: dense oracle values and iterative agreement") {
    auto k4 = fixtures::k4();
    CHECK_THAT(spectral_gap(k4), Catch::Matchers::WithinAbs(4.0 / 3.0, 1e-9));
    auto pt = fixtures::petersen();
    CHECK_THAT(spectral_gap(pt), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-9));
    auto k8 = fixtures::complete(7);
    CHECK_THAT(spectral_gap(k8), Catch::Matchers::WithinAbs(8.0 / 7.0, 1e-9));

    // iterative path (forced) agrees with the dense solver on small graphs
    long iters = 0;
    double it_k4 = spectral_gap(k4, /*dense_limit=*/0, 1e-12, 100000, &iters);
    CHECK_THAT(it_k4, Catch::Matchers::WithinAbs(4.0 / 3.0, 1e-9));
    double it_pt = spectral_gap(pt, 0, 1e-12, 100000);
    CHECK_THAT(it_pt, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-9));

    auto g = generate_random_regular(256, 3, 31);
    double dense = spectral_gap(g);
    double iter = spectral_gap(g, 0, 1e-13, 1000000);
    CHECK_THAT(iter, Catch::Matchers::WithinAbs(dense, 1e-8));
}

TEST_CASE("assumption report on fixed and generated graphs") {
    auto k4 = fixtures::k4();
    auto rep = check_assumptions(k4, constants::alpha1, constants::alpha2);
    CHECK(rep.a0_ok);
    CHECK(rep.a1_radius == 0);  // floor(0.2 * ld 4) with ld base 2
    CHECK(rep.a1_ok);           // radius-0 balls are trees
    CHECK(rep.a2_ok);
    CHECK(rep.girth == 3);

    auto g = generate_random_regular(1024, 3, 11);
    auto r2 = check_assumptions(g, constants::alpha1, constants::alpha2);
    CHECK(r2.a1_radius == 2);
    // d = 3 expanders sit near the 1 - 2*sqrt(2)/3 ~ 0.057 ceiling
    CHECK(r2.lambda > constants::alpha2);
    CHECK(r2.lambda < 0.12);
    CHECK(r2.girth >= 3);
}

TEST_CASE("tree-like ball count meets the guaranteed lower bound") {
    auto g = generate_random_regular(4096, 3, 17);
    auto c1 = count_treelike_balls(g, 1);
    CHECK(c1.satisfies_bound);
    CHECK(c1.count <= 4096);
    auto c2 = count_treelike_balls(g, 2);
    CHECK(c2.satisfies_bound);
    CHECK(c2.count <= c1.count);  // larger balls can only lose tree-ness
    CHECK_THROWS_AS(count_treelike_balls(g, 3), std::invalid_argument);  // r > R
}
