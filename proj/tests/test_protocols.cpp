#include <doctest.h>

#include "popproto/config.hpp"
#include "popproto/protocols.hpp"
#include "popproto/rng.hpp"

using namespace popproto;

namespace {

CiwState ciw(bool leader, int phase, int mode, int cnt) {
    return {leader, static_cast<std::uint8_t>(phase), static_cast<std::uint8_t>(mode), cnt};
}

}  // namespace

TEST_CASE("ciw_n transition rules") {
    SUBCASE("two leaders merge counts; reaching n enters phase 2") {
        CiwProtocol p(2);
        auto [a, b] = p.step(p.initial(), p.initial());
        CHECK(a == ciw(true, 2, 0, 0));
        CHECK(b == ciw(false, 1, 0, 0));
    }
    SUBCASE("leader merge below n stays in phase 1") {
        CiwProtocol p(3);
        auto [a, b] = p.step(ciw(true, 1, 0, 2), ciw(true, 1, 0, 1));
        CHECK(a == ciw(true, 2, 0, 0));
        CHECK(b == ciw(false, 1, 0, 0));
    }
    SUBCASE("no matching guard leaves both unchanged") {
        CiwProtocol p(3);
        const auto ai = ciw(true, 2, 0, 0);
        const auto bi = ciw(false, 1, 1, 0);
        auto [a, b] = p.step(ai, bi);
        CHECK(a == ai);
        CHECK(b == bi);
    }
    SUBCASE("degree counting completes at n-1 and toggles modes") {
        CiwProtocol p(3);
        auto [a, b] = p.step(ciw(true, 2, 0, 1), ciw(false, 1, 0, 0));
        CHECK(a == ciw(true, 3, 1, 1));
        CHECK(b == ciw(false, 1, 1, 0));
    }
    SUBCASE("phase-3 merge reaching n enters phase 4") {
        CiwProtocol p(3);
        auto [a, b] = p.step(ciw(false, 3, 1, 2), ciw(false, 3, 1, 1));
        CHECK(a == ciw(false, 4, 1, 3));
        CHECK(b == ciw(false, 3, 1, 0));
    }
    SUBCASE("phase 4 spreads initiator to responder") {
        CiwProtocol p(3);
        auto [a, b] = p.step(ciw(false, 4, 0, 1), ciw(false, 3, 0, 0));
        CHECK(a.phase == 4);
        CHECK(b.phase == 4);
    }
}

TEST_CASE("ciw_nk group assignment") {
    CiwkProtocol p(4, 2);

    SUBCASE("leader in phase 1.5 hands out groups by cnt mod k") {
        CiwkState lead = p.initial();
        lead.phase = CiwkPhase::p1_5;
        lead.cnt = 4;
        CiwkState follower = p.initial();
        follower.leader = false;
        follower.cnt = 0;
        auto [a, b] = p.step(lead, follower);
        CHECK(a.cnt == 3);
        CHECK(b.group == 1);
        CHECK_FALSE(b.leader);
        CHECK(b.phase == CiwkPhase::p1);
    }
    SUBCASE("last assignment promotes both to group leaders") {
        CiwkState lead = p.initial();
        lead.phase = CiwkPhase::p1_5;
        lead.cnt = 2;
        CiwkState follower = p.initial();
        follower.leader = false;
        follower.cnt = 0;
        auto [a, b] = p.step(lead, follower);
        CHECK(b.group == 1);
        CHECK(b.leader);
        CHECK(b.phase == CiwkPhase::p2);
        CHECK(a.leader);
        CHECK(a.phase == CiwkPhase::p2);
        CHECK(a.cnt == 0);
        CHECK(a.group == 0);
    }
    SUBCASE("k out of range is rejected") {
        CHECK_THROWS_AS(CiwkProtocol(4, 0), std::invalid_argument);
        CHECK_THROWS_AS(CiwkProtocol(4, 5), std::invalid_argument);
    }
    SUBCASE("leader election sets phase 1.5 keeping cnt = n") {
        auto [a, b] = p.step(p.initial(), p.initial());
        CHECK(a.cnt == 2);
        CHECK(a.phase == CiwkPhase::p1);
        CiwkState big = p.initial();
        big.cnt = 3;
        auto [c, d] = p.step(big, p.initial());
        CHECK(c.phase == CiwkPhase::p1_5);
        CHECK(c.cnt == 4);
        CHECK_FALSE(d.leader);
    }
}

TEST_CASE("cig token and size rules") {
    CigProtocol p;

    SUBCASE("token merge sums sizes, resets, then runs the equal-size step") {
        CigState a0 = p.initial();
        CigState b0 = p.initial();
        a0.size = 2;
        b0.size = 3;
        auto [a, b] = p.step(a0, b0);
        CHECK(a.size == 5);
        CHECK(b.size == 5);
        CHECK(a.token);
        CHECK_FALSE(b.token);
        // after the reset, the trailing CIW_5 step merges the two fresh leaders
        CHECK(a.ciw == ciw(true, 1, 0, 2));
        CHECK(b.ciw == ciw(false, 1, 0, 0));
    }
    SUBCASE("merge at total size 2 immediately elects the phase-2 leader") {
        auto [a, b] = p.step(p.initial(), p.initial());
        CHECK(a.size == 2);
        CHECK(b.size == 2);
        CHECK(a.ciw == ciw(true, 2, 0, 0));
        CHECK(b.ciw == ciw(false, 1, 0, 0));
    }
    SUBCASE("larger token overruns a smaller agent and resets it") {
        CigState a0 = p.initial();
        a0.token = false;
        a0.size = 1;
        CigState b0 = p.initial();
        b0.size = 3;
        b0.ciw = ciw(false, 1, 1, 0);
        auto [a, b] = p.step(a0, b0);
        CHECK(a.token);
        CHECK_FALSE(b.token);
        CHECK(a.size == 3);
        CHECK(b.size == 3);
        // a was reset to (L,1,0,1); the CIW_3 step then fires on (a, b)
        CHECK(a.ciw.leader);
        CHECK(a.ciw.phase == 1);
    }
    SUBCASE("token of equal size swaps without resets") {
        CigState a0 = p.initial();
        a0.size = 2;
        a0.ciw = ciw(true, 1, 0, 1);
        CigState b0 = p.initial();
        b0.token = false;
        b0.size = 2;
        b0.ciw = ciw(true, 1, 0, 1);
        auto [a, b] = p.step(a0, b0);
        CHECK_FALSE(a.token);
        CHECK(b.token);
        CHECK(a.size == 2);
        CHECK(b.size == 2);
        // the equal-size CIW_2 step elected a leader in the same interaction
        CHECK(a.ciw == ciw(true, 2, 0, 0));
        CHECK(b.ciw == ciw(false, 1, 0, 0));
    }
    SUBCASE("unequal swap resets the grower, keeps the new holder's vars") {
        CigState a0 = p.initial();
        a0.size = 1;
        a0.ciw = ciw(false, 1, 1, 0);
        CigState b0 = p.initial();
        b0.token = false;
        b0.size = 3;
        b0.ciw = ciw(true, 2, 0, 2);
        auto [a, b] = p.step(a0, b0);
        CHECK_FALSE(a.token);
        CHECK(b.token);
        CHECK(a.size == 3);
        CHECK(b.size == 1);
        CHECK(a.ciw == CiwState{});
        CHECK(b.ciw == ciw(true, 2, 0, 2));
    }
    SUBCASE("cnt is clamped to size") {
        CigState a0 = p.initial();
        a0.token = false;
        a0.size = 2;
        a0.ciw = ciw(true, 1, 0, 2);
        CigState b0 = p.initial();
        b0.token = false;
        b0.size = 2;
        b0.ciw = ciw(true, 1, 0, 2);
        auto [a, b] = p.step(a0, b0);
        CHECK(a.ciw.cnt <= a.size);
        CHECK(b.ciw.cnt <= b.size);
    }
}

TEST_CASE("frame property: interactions touch only the arc endpoints") {
    CiwProtocol p(4);
    auto g = generate(GraphKind::complete, 4);
    auto c = initial_config(p, 4);
    SplitMix64 rng(5);
    for (int step = 0; step < 200; ++step) {
        Arc arc = g.arcs()[rng.below(g.arc_count())];
        auto before = c;
        apply_interaction(p, c, arc);
        for (NodeId v = 0; v < 4; ++v)
            if (v != arc.initiator && v != arc.responder) CHECK(c[v] == before[v]);
    }
}

TEST_CASE("state encodings stay below the nominal bounds") {
    CiwProtocol p(5);
    SplitMix64 rng(9);
    for (int i = 0; i < 500; ++i) {
        CiwState s{rng.below(2) == 1, static_cast<std::uint8_t>(1 + rng.below(4)),
                   static_cast<std::uint8_t>(rng.below(2)),
                   static_cast<std::int32_t>(rng.below(6))};
        CHECK(p.encode(s) < p.state_bound());
    }

    CiwkProtocol q(5, 3);
    for (int i = 0; i < 500; ++i) {
        CiwkState s{rng.below(2) == 1, static_cast<CiwkPhase>(rng.below(5)),
                    static_cast<std::uint32_t>(rng.below(8)),
                    static_cast<std::int32_t>(rng.below(4)),
                    static_cast<std::int32_t>(rng.below(6))};
        CHECK(q.encode(s) < q.state_bound());
    }
}
