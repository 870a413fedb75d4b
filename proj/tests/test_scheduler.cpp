#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "popproto/scheduler.hpp"
#include "popproto/stats.hpp"

using namespace popproto;

TEST_CASE("round robin with seed 0 cycles the lexicographic arc order") {
    auto k3 = generate(GraphKind::complete, 3);
    Schedule s(ScheduleKind::round_robin, k3, 0);
    const auto& arcs = k3.arcs();
    for (int rep = 0; rep < 3; ++rep)
        for (const Arc& a : arcs) CHECK(s.next() == a);
}

TEST_CASE("round robin with a nonzero seed repeats one fixed permutation") {
    auto k3 = generate(GraphKind::complete, 3);
    Schedule s(ScheduleKind::round_robin, k3, 42);
    const std::size_t m = k3.arc_count();
    std::vector<Arc> first;
    for (std::size_t i = 0; i < m; ++i) first.push_back(s.next());

    auto sorted = first;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == k3.arcs());

    for (int rep = 0; rep < 3; ++rep)
        for (std::size_t i = 0; i < m; ++i) CHECK(s.next() == first[i]);
}

TEST_CASE("shuffled rounds emits a fresh permutation per block") {
    auto k3 = generate(GraphKind::complete, 3);
    Schedule s(ScheduleKind::shuffled_rounds, k3, 7);
    const std::size_t m = k3.arc_count();
    std::vector<std::vector<Arc>> blocks;
    for (int b = 0; b < 20; ++b) {
        std::vector<Arc> block;
        for (std::size_t i = 0; i < m; ++i) block.push_back(s.next());
        auto sorted = block;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == k3.arcs());
        blocks.push_back(block);
    }
    bool any_diff = false;
    for (std::size_t b = 1; b < blocks.size(); ++b)
        if (blocks[b] != blocks[0]) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("uniform random hits each arc with its nominal frequency") {
    auto k2 = generate(GraphKind::complete, 2);
    Schedule s(ScheduleKind::uniform_random, k2, 3);
    std::map<Arc, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++counts[s.next()];
    CHECK(counts.size() == 2);
    for (const auto& [arc, c] : counts)
        CHECK(std::abs(c / static_cast<double>(draws) - 0.5) < 0.02);
}

TEST_CASE("schedules replay deterministically from the same seed") {
    auto g = generate(GraphKind::random_weakly_connected, 6, 17);
    for (ScheduleKind kind : {ScheduleKind::uniform_random, ScheduleKind::round_robin,
                              ScheduleKind::shuffled_rounds}) {
        Schedule a(kind, g, 99);
        Schedule b(kind, g, 99);
        for (int i = 0; i < 500; ++i) CHECK(a.next() == b.next());
    }
}

TEST_CASE("round counter parses shortest covering prefixes greedily") {
    auto k2 = generate(GraphKind::complete, 2);
    RoundCounter rc(k2);
    CHECK(rc.completed_rounds() == 0);
    CHECK_FALSE(rc.round_in_progress());

    rc.advance({0, 1});
    rc.advance({0, 1});
    CHECK(rc.completed_rounds() == 0);
    CHECK(rc.round_in_progress());
    rc.advance({1, 0});
    CHECK(rc.completed_rounds() == 1);
    CHECK_FALSE(rc.round_in_progress());
    CHECK(rc.lengths() == std::vector<std::uint64_t>{3});

    rc.advance({1, 0});
    rc.advance({0, 1});
    CHECK(rc.completed_rounds() == 2);
    CHECK(rc.lengths() == std::vector<std::uint64_t>{3, 2});
}

TEST_CASE("every round robin block is exactly one round") {
    auto k3 = generate(GraphKind::complete, 3);
    Schedule s(ScheduleKind::round_robin, k3, 5);
    RoundCounter rc(k3);
    for (int i = 0; i < 60; ++i) rc.advance(s.next());
    CHECK(rc.completed_rounds() == 10);
    for (auto len : rc.lengths()) CHECK(len == k3.arc_count());
}

TEST_CASE("uniform random mean round length matches the coupon collector") {
    auto k2 = generate(GraphKind::complete, 2);
    CHECK(mean_round_length(k2, 20000, 11) ==
          doctest::Approx(coupon_collector_expect(2)).epsilon(0.05));

    auto k3 = generate(GraphKind::complete, 3);
    CHECK(mean_round_length(k3, 20000, 12) ==
          doctest::Approx(coupon_collector_expect(6)).epsilon(0.05));
}

TEST_CASE("schedule kind names round trip") {
    for (ScheduleKind kind : {ScheduleKind::uniform_random, ScheduleKind::round_robin,
                              ScheduleKind::shuffled_rounds}) {
        ScheduleKind back;
        CHECK(parse_schedule_kind(schedule_kind_name(kind), back));
        CHECK(back == kind);
    }
    ScheduleKind out;
    CHECK_FALSE(parse_schedule_kind("adversarial", out));
}
