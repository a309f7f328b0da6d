#include <doctest.h>

#include "support.hpp"

using namespace coarsekit;
using namespace testsupport;

TEST_CASE("closed ball on an interval") {
    auto X = make_interval(10);
    CHECK(ball(*X, PointSet::of(10, {3}), 1.5) == PointSet::of(10, {2, 3, 4}));
    CHECK(ball(*X, PointSet::of(10, {0}), 0.0) == PointSet::of(10, {0}));
    CHECK(ball(*X, PointSet(10), 2.0).empty());
    CHECK(ball(*X, PointSet::of(10, {5}), kInfinity) == PointSet::full(10));
}

TEST_CASE("ball agrees with the definition on random spaces") {
    std::mt19937 g(21);
    for (int t = 0; t < 80; ++t) {
        auto X = random_space(g);
        PointSet src = random_subset(g, X->n(), 0.3);
        double r = std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0, 3.0,
                                       kInfinity}[pick(g, 0, 6)];
        CAPTURE(X->name());
        CAPTURE(r);
        PointSet expect = naive_ball(X, src, r);
        CHECK(ball(*X, src, r) == expect);
        CHECK(ball(*X, src, r, Exec::Parallel) == expect);
        PointSet out(X->n());
        ball_into_generic_serial(*X, src, r, out);
        CHECK(out == expect);
        ball_into_generic_parallel(*X, src, r, out);
        CHECK(out == expect);
    }
}

TEST_CASE("fast grid path equals generic on larger boxes") {
    std::mt19937 g(22);
    auto X = make_grid({17, 23}, Norm::L1);
    for (int t = 0; t < 20; ++t) {
        PointSet src = random_subset(g, X->n(), 0.02);
        double r = pick(g, 0, 9) / 2.0;
        PointSet fast(X->n()), slow(X->n());
        ball_into(*X, src, r, fast);
        ball_into_generic_serial(*X, src, r, slow);
        CHECK(fast == slow);
    }
}

TEST_CASE("chain metric on intervals follows the ceiling formula") {
    auto X = make_interval(10);
    CHECK(chain_metric(X, 1.0, 0, 5) == ExtReal(3.0));
    CHECK(chain_metric(X, 1.0, 0, 0) == ExtReal(0.0));
    std::mt19937 g(23);
    for (int t = 0; t < 60; ++t) {
        int n = pick(g, 2, 30);
        auto I = make_interval(n);
        int x = pick(g, 0, n - 1), y = pick(g, 0, n - 1);
        double r = pick(g, 1, 3);
        double expect = std::ceil(std::abs(x - y) / (2.0 * r));
        CHECK(chain_metric(I, r, x, y) == ExtReal(expect));
    }
}

TEST_CASE("chain metric equals breadth-first oracle; larger scales shorten chains") {
    std::mt19937 g(24);
    for (int t = 0; t < 40; ++t) {
        auto X = random_space(g, 10);
        int n = X->n();
        int x = pick(g, 0, n - 1), y = pick(g, 0, n - 1);
        double r = std::vector<double>{0.5, 1.0, 2.0}[pick(g, 0, 2)];
        double naive = naive_chain_metric(X, r, x, y);
        ExtReal got = chain_metric(X, r, x, y);
        CAPTURE(X->name());
        if (std::isinf(naive))
            CHECK(got.is_inf());
        else
            CHECK(got == ExtReal(naive));
        ExtReal coarser = chain_metric(X, r + 1.0, x, y);
        CHECK(coarser <= got);
    }
}

TEST_CASE("distance-zero distinct points are one chain step apart") {
    auto Z = make_graph({"a", "b"}, {{0, 1, 0.0}});
    CHECK(Z->dist(0, 1) == 0.0);
    CHECK(chain_metric(Z, 1.0, 0, 1) == ExtReal(1.0));
}

TEST_CASE("components partition a subset by chain connectivity") {
    auto X = make_interval(10);
    auto cls = components(X, PointSet::of(10, {0, 1, 2, 6, 7}), 1.0).classes;
    REQUIRE(cls.size() == 2);
    CHECK(cls[0] == PointSet::of(10, {0, 1, 2}));
    CHECK(cls[1] == PointSet::of(10, {6, 7}));
    auto one = components(X, PointSet::of(10, {4, 5}), 1.0).classes;
    REQUIRE(one.size() == 1);
    CHECK(one[0] == PointSet::of(10, {4, 5}));
    CHECK(components(X, PointSet(10), 1.0).classes.empty());
}

TEST_CASE("components match the brute-force partition on random spaces") {
    std::mt19937 g(25);
    for (int t = 0; t < 50; ++t) {
        auto X = random_space(g);
        PointSet A = random_subset(g, X->n(), 0.5);
        double r = std::vector<double>{0.5, 1.0, 2.0}[pick(g, 0, 2)];
        CAPTURE(X->name());
        auto expect = naive_components(X, A, r);
        auto got = components(X, A, r).classes;
        CHECK(got == expect);
        CHECK(components(X, A, r, Exec::Parallel).classes == expect);
    }
}

TEST_CASE("witnesses outside the subset can merge components") {
    // {0,2} inside I3 at scale 1: the ambient point 1 joins the two.
    auto X = make_interval(3);
    auto cls = components(X, PointSet::of(3, {0, 2}), 1.0).classes;
    REQUIRE(cls.size() == 1);
    CHECK(cls[0] == PointSet::of(3, {0, 2}));
}

TEST_CASE("set diameter with fast paths and infinity") {
    auto X = make_interval(10);
    CHECK(set_diameter(*X, PointSet::full(10)) == 9.0);
    CHECK(set_diameter(*X, PointSet(10)) == 0.0);
    CHECK(set_diameter(*X, PointSet::of(10, {4})) == 0.0);
    auto U = make_disjoint_union({make_interval(2), make_interval(2)});
    CHECK(std::isinf(set_diameter(*U, PointSet::full(4))));
    auto G1 = make_grid({4, 6}, Norm::L1);
    auto Gs = make_grid({4, 6}, Norm::Sup);
    CHECK(set_diameter(*G1, PointSet::full(24)) == 8.0);
    CHECK(set_diameter(*Gs, PointSet::full(24)) == 5.0);
    std::mt19937 g(26);
    for (int t = 0; t < 40; ++t) {
        auto S = random_space(g);
        PointSet pts = random_subset(g, S->n(), 0.5);
        double a = set_diameter(*S, pts);
        double b = set_diameter_generic_serial(*S, pts);
        double c = set_diameter_generic_parallel(*S, pts);
        CAPTURE(S->name());
        CHECK((a == b || (std::isinf(a) && std::isinf(b))));
        CHECK((b == c || (std::isinf(b) && std::isinf(c))));
    }
}

TEST_CASE("component norms and certificates") {
    auto X = make_interval(10);
    CHECK(components_norm(X, PointSet::full(10), 1.0) == ExtReal(9.0));
    CHECK(components_norm(X, PointSet(10), 1.0) == ExtReal(0.0));
    auto A = PointSet::of(10, {0, 1, 2, 6, 7});
    CHECK(components_norm(X, A, 1.0) == ExtReal(2.0));
    Dim0Certificate cert = dim0_certificate(X, A, 1.0);
    CHECK(cert.scale == 1.0);
    CHECK(cert.bound == ExtReal(2.0));
    CHECK(check_dim0(X, A, cert));
    Dim0Certificate weak{1.0, ExtReal(1.0)};
    CHECK(!check_dim0(X, A, weak));
}

TEST_CASE("component norm is monotone in the scale") {
    std::mt19937 g(27);
    for (int t = 0; t < 30; ++t) {
        auto X = random_space(g);
        PointSet A = random_subset(g, X->n(), 0.6);
        double r = 0.5 + pick(g, 0, 2);
        ExtReal lo = components_norm(X, A, r);
        ExtReal hi = components_norm(X, A, r + 1.5);
        CHECK(lo <= hi);
    }
}
