#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "popproto/stats.hpp"

using namespace popproto;

TEST_CASE("hitting times on small multigraphs") {
    SUBCASE("doubled edge behaves like a single edge") {
        auto m = to_undirected_multigraph(generate(GraphKind::complete, 2));
        auto t = hitting_times(m);
        CHECK(t.at(0, 1) == doctest::Approx(1.0));
        CHECK(t.at(0, 0) == doctest::Approx(0.0));
        CHECK(t.max_hitting == doctest::Approx(1.0));
    }
    SUBCASE("triangle") {
        auto m = to_undirected_multigraph(generate(GraphKind::directed_ring, 3));
        auto t = hitting_times(m);
        for (NodeId s = 0; s < 3; ++s)
            for (NodeId u = 0; u < 3; ++u)
                CHECK(t.at(s, u) == doctest::Approx(s == u ? 0.0 : 2.0));
        CHECK(t.max_hitting == doctest::Approx(2.0));
    }
    SUBCASE("four cycle: h = d(4 - d) for distance d") {
        auto m = to_undirected_multigraph(generate(GraphKind::directed_ring, 4));
        auto t = hitting_times(m);
        CHECK(t.at(0, 1) == doctest::Approx(3.0));
        CHECK(t.at(0, 2) == doctest::Approx(4.0));
        CHECK(t.at(1, 3) == doctest::Approx(4.0));
        CHECK(t.max_hitting == doctest::Approx(4.0));
    }
    SUBCASE("complete graph on 4 nodes") {
        auto m = to_undirected_multigraph(generate(GraphKind::complete, 4));
        auto t = hitting_times(m);
        CHECK(t.at(0, 3) == doctest::Approx(3.0));
    }
}

TEST_CASE("monte carlo walks agree with the linear solver") {
    for (GraphKind kind : {GraphKind::directed_ring, GraphKind::star_bidir,
                           GraphKind::directed_line}) {
        auto g = generate(kind, 5);
        auto m = to_undirected_multigraph(g);
        auto t = hitting_times(m);
        double est = hitting_time_monte_carlo(m, 0, 4, 40000, 23);
        CHECK(est == doctest::Approx(t.at(0, 4)).epsilon(0.05));
    }
}

TEST_CASE("coupon collector expectation") {
    CHECK(coupon_collector_expect(1) == doctest::Approx(1.0));
    CHECK(coupon_collector_expect(2) == doctest::Approx(3.0));
    CHECK(coupon_collector_expect(6) == doctest::Approx(14.7));
    CHECK_THROWS_AS(coupon_collector_expect(0), std::invalid_argument);
}

TEST_CASE("log-log slope") {
    SUBCASE("exact cubic") {
        std::vector<std::pair<double, double>> pts;
        for (double n : {8.0, 16.0, 32.0, 64.0}) pts.emplace_back(n, n * n * n);
        CHECK(loglog_slope(pts) == doctest::Approx(3.0).epsilon(1e-9));
    }
    SUBCASE("cubic with a log factor lands a bit above 3") {
        std::vector<std::pair<double, double>> pts;
        for (double n : {8.0, 16.0, 32.0, 64.0})
            pts.emplace_back(n, n * n * n * std::log(n));
        double slope = loglog_slope(pts);
        CHECK(slope > 3.1);
        CHECK(slope < 3.5);
    }
    SUBCASE("rejects degenerate input") {
        CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {2.0, 8.0}}), std::invalid_argument);
        CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {2.0, 8.0}, {3.0, -1.0}}),
                        std::invalid_argument);
    }
}
