#include <doctest.h>

#include "popproto/modelcheck.hpp"

using namespace popproto;

namespace {

// Direct forward-closure stability check used to cross-validate the
// condensation-based one.
template <class P>
std::vector<bool> stable_by_forward_closure(const ConfigGraph<P>& cg) {
    const std::size_t m = cg.configs.size();
    std::vector<bool> stable(m, true);
    for (std::uint32_t start = 0; start < m; ++start) {
        std::vector<bool> seen(m, false);
        std::vector<std::uint32_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            if (cg.outputs[cur] != cg.outputs[start]) {
                stable[start] = false;
                break;
            }
            for (auto next : cg.succ[cur])
                if (!seen[next]) {
                    seen[next] = true;
                    stack.push_back(next);
                }
        }
    }
    return stable;
}

template <class P>
ConfigOf<P> replay(const P& p, NodeId n, const std::vector<Arc>& path) {
    auto c = initial_config(p, n);
    for (Arc a : path) apply_interaction(p, c, a);
    return c;
}

}  // namespace

TEST_CASE("ciw_n solves yes exactly on complete graphs") {
    for (NodeId n : {2, 3}) {
        CiwProtocol p(n);
        auto cg = explore(p, generate(GraphKind::complete, n));
        REQUIRE(cg.status == ExploreStatus::ok);
        auto v = check_global_fairness(cg, Output::yes);
        CAPTURE(n);
        CHECK(v.solves);
        CHECK(v.stable_count > 0);
    }

    for (GraphKind kind : {GraphKind::directed_ring, GraphKind::directed_line,
                           GraphKind::near_complete_minus_one_arc}) {
        CiwProtocol p(3);
        auto g = generate(kind, 3);
        auto cg = explore(p, g);
        REQUIRE(cg.status == ExploreStatus::ok);
        CAPTURE(graph_kind_name(kind));
        CHECK(check_global_fairness(cg, Output::no).solves);
        // soundness is schedule-independent: no reachable yes at all
        CHECK(check_weak_fairness_negative(cg));
    }
}

TEST_CASE("ciw_nk solves yes on complete graphs for boundary k") {
    for (NodeId n : {2, 3}) {
        for (std::int32_t k : {1, n}) {
            CiwkProtocol p(n, k);
            auto cg = explore(p, generate(GraphKind::complete, n));
            REQUIRE(cg.status == ExploreStatus::ok);
            CAPTURE(n);
            CAPTURE(k);
            CHECK(check_global_fairness(cg, Output::yes).solves);
        }
    }
    CiwkProtocol p(3, 3);
    auto cg = explore(p, generate(GraphKind::directed_ring, 3));
    REQUIRE(cg.status == ExploreStatus::ok);
    CHECK(check_global_fairness(cg, Output::no).solves);
    CHECK(check_weak_fairness_negative(cg));
}

TEST_CASE("cig solves yes on K_2 and no on the 3-ring") {
    CigProtocol p;
    auto cg = explore(p, generate(GraphKind::complete, 2));
    REQUIRE(cg.status == ExploreStatus::ok);
    CHECK(check_global_fairness(cg, Output::yes).solves);

    auto ring = explore(p, generate(GraphKind::directed_ring, 3));
    REQUIRE(ring.status == ExploreStatus::ok);
    CHECK(check_global_fairness(ring, Output::no).solves);
}

TEST_CASE("a mis-parameterized protocol fails with a replayable witness") {
    // n = 3 machine on a 2-agent complete graph can never count to 3
    CiwProtocol p(3);
    auto g = generate(GraphKind::complete, 2);
    auto cg = explore(p, g);
    REQUIRE(cg.status == ExploreStatus::ok);
    auto v = check_global_fairness(cg, Output::yes);
    REQUIRE_FALSE(v.solves);
    REQUIRE(v.witness_config < cg.configs.size());
    CHECK_FALSE(v.failure.empty());

    auto c = replay(p, 2, v.witness_path);
    CHECK(c == cg.configs[v.witness_config]);
    bool all_yes = true;
    for (Output o : all_outputs(p, c))
        if (o != Output::yes) all_yes = false;
    CHECK_FALSE(all_yes);
}

TEST_CASE("bfs parents reconstruct a path to every configuration") {
    CiwProtocol p(2);
    auto cg = explore(p, generate(GraphKind::complete, 2));
    REQUIRE(cg.status == ExploreStatus::ok);
    for (std::uint32_t i = 0; i < cg.configs.size(); ++i) {
        auto path = path_from_initial(cg, i);
        CHECK(replay(p, 2, path) == cg.configs[i]);
    }
}

TEST_CASE("condensation stability agrees with direct forward closure") {
    {
        CiwProtocol p(2);
        auto cg = explore(p, generate(GraphKind::complete, 2));
        CHECK(output_stable_flags(cg) == stable_by_forward_closure(cg));
    }
    {
        CigProtocol p;
        auto cg = explore(p, generate(GraphKind::complete, 2));
        CHECK(output_stable_flags(cg) == stable_by_forward_closure(cg));
    }
    {
        CiwProtocol p(3);
        auto cg = explore(p, generate(GraphKind::directed_ring, 3));
        CHECK(output_stable_flags(cg) == stable_by_forward_closure(cg));
    }
}

TEST_CASE("exploration caps report instance too large") {
    CiwProtocol p(3);
    auto cg = explore(p, generate(GraphKind::complete, 3), 10);
    CHECK(cg.status == ExploreStatus::capped);
    auto v = check_global_fairness(cg, Output::yes);
    CHECK_FALSE(v.solves);
    CHECK(v.failure == "instance too large");
}

TEST_CASE("verdicts serialize to json") {
    CiwProtocol p(2);
    auto cg = explore(p, generate(GraphKind::complete, 2));
    auto v = check_global_fairness(cg, Output::yes);
    auto json = verdict_to_json(v, "ciw_n", "complete", 2, 0);
    CHECK(json.find("\"solves\":true") != std::string::npos);
    CHECK(json.find("\"reachable_count\"") != std::string::npos);
}
