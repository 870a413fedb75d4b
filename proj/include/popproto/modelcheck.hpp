#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "popproto/config.hpp"
#include "popproto/engine.hpp"
#include "popproto/graph.hpp"

namespace popproto {

enum class ExploreStatus { ok, capped, bound_violated };

// Reachable configuration graph, closed under apply_interaction for
// every arc. Config 0 is the all-initial configuration.
template <class P>
struct ConfigGraph {
    ExploreStatus status = ExploreStatus::ok;
    const Digraph* graph = nullptr;
    std::vector<ConfigOf<P>> configs;
    std::vector<std::vector<std::uint32_t>> succ;   // succ[c][arc_index]
    std::vector<std::uint32_t> parent;              // BFS tree, parent[0] unused
    std::vector<Arc> parent_arc;
    std::vector<std::vector<Output>> outputs;
};

namespace detail {

inline bool state_in_bounds(const CiwProtocol& p, const CiwState& s, NodeId) {
    return s.cnt >= 0 && s.cnt <= p.n;
}
inline bool state_in_bounds(const CiwkProtocol& p, const CiwkState& s, NodeId) {
    return s.cnt >= 0 && s.cnt <= p.n;
}
inline bool state_in_bounds(const CigProtocol&, const CigState& s, NodeId n) {
    return s.size <= n && s.ciw.cnt >= 0 && s.ciw.cnt <= n;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : v) h = h * 0x100000001b3ULL ^ x;
        return h;
    }
};

}  // namespace detail

template <class P>
ConfigGraph<P> explore(const P& p, const Digraph& g, std::size_t cap = 1u << 22) {
    const NodeId n = g.node_count();
    ConfigGraph<P> cg;
    cg.graph = &g;

    auto encode = [&](const ConfigOf<P>& c) {
        std::vector<std::uint64_t> key;
        key.reserve(c.size());
        for (const auto& s : c) key.push_back(census_encode(p, s, n));
        return key;
    };

    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, detail::VecHash> index;
    auto initial = initial_config(p, n);
    cg.configs.push_back(initial);
    cg.outputs.push_back(all_outputs(p, initial));
    cg.parent.push_back(0);
    cg.parent_arc.push_back({});
    index.emplace(encode(initial), 0);

    for (std::uint32_t i = 0; i < cg.configs.size(); ++i) {
        cg.succ.emplace_back();
        cg.succ.back().reserve(g.arc_count());
        for (const Arc& arc : g.arcs()) {
            auto next = cg.configs[i];
            apply_interaction(p, next, arc);
            for (NodeId v : {arc.initiator, arc.responder}) {
                if (!detail::state_in_bounds(p, next[v], n)) {
                    cg.status = ExploreStatus::bound_violated;
                    return cg;
                }
            }
            auto key = encode(next);
            auto [it, fresh] = index.emplace(std::move(key), cg.configs.size());
            if (fresh) {
                if (cg.configs.size() >= cap) {
                    cg.status = ExploreStatus::capped;
                    return cg;
                }
                cg.configs.push_back(std::move(next));
                cg.outputs.push_back(all_outputs(p, cg.configs.back()));
                cg.parent.push_back(i);
                cg.parent_arc.push_back(arc);
            }
            cg.succ[i].push_back(it->second);
        }
    }
    return cg;
}

struct Verdict {
    bool solves = false;
    ExploreStatus status = ExploreStatus::ok;
    std::size_t reachable_count = 0;
    std::size_t stable_count = 0;
    std::string failure;
    std::size_t witness_config = std::numeric_limits<std::size_t>::max();
    std::vector<Arc> witness_path;  // from the initial configuration
};

std::string verdict_to_json(const Verdict& v, const std::string& protocol,
                            const std::string& graph, std::int32_t n, std::int32_t k);

namespace detail {

// Tarjan emits SCCs children-first, which is exactly the order needed
// to propagate the uniform-reachable-output vector.
std::vector<std::vector<std::uint32_t>> tarjan_sccs(
    const std::vector<std::vector<std::uint32_t>>& succ);

}  // namespace detail

// A configuration is output-stable iff every configuration reachable
// from it (itself included) has the same output vector.
template <class P>
std::vector<bool> output_stable_flags(const ConfigGraph<P>& cg) {
    const std::size_t m = cg.configs.size();
    const auto sccs = detail::tarjan_sccs(cg.succ);
    std::vector<std::uint32_t> scc_of(m);
    for (std::uint32_t s = 0; s < sccs.size(); ++s)
        for (auto node : sccs[s]) scc_of[node] = s;

    // uniform[s]: the single output vector of everything reachable from
    // SCC s, or "none" (flagged by has_uniform).
    std::vector<bool> has_uniform(sccs.size(), false);
    std::vector<const std::vector<Output>*> uniform(sccs.size(), nullptr);
    for (std::uint32_t s = 0; s < sccs.size(); ++s) {
        const auto& members = sccs[s];
        const std::vector<Output>* vec = &cg.outputs[members[0]];
        bool ok = true;
        for (auto node : members)
            if (cg.outputs[node] != *vec) { ok = false; break; }
        for (auto node : members) {
            if (!ok) break;
            for (auto next : cg.succ[node]) {
                if (scc_of[next] == s) continue;
                if (!has_uniform[scc_of[next]] || *uniform[scc_of[next]] != *vec) {
                    ok = false;
                    break;
                }
            }
        }
        has_uniform[s] = ok;
        uniform[s] = vec;
    }

    std::vector<bool> stable(m);
    for (std::size_t i = 0; i < m; ++i) stable[i] = has_uniform[scc_of[i]];
    return stable;
}

template <class P>
std::vector<Arc> path_from_initial(const ConfigGraph<P>& cg, std::uint32_t target) {
    std::vector<Arc> path;
    for (std::uint32_t cur = target; cur != 0; cur = cg.parent[cur])
        path.push_back(cg.parent_arc[cur]);
    std::reverse(path.begin(), path.end());
    return path;
}

// The solvability criterion on the finite reachable space: every
// reachable output-stable configuration outputs `expected` everywhere,
// and every reachable configuration can reach such a stable one.
template <class P>
Verdict check_global_fairness(const ConfigGraph<P>& cg, Output expected) {
    Verdict v;
    v.status = cg.status;
    v.reachable_count = cg.configs.size();
    if (cg.status != ExploreStatus::ok) {
        v.failure = cg.status == ExploreStatus::capped ? "instance too large"
                                                       : "state bound violated";
        return v;
    }

    const auto stable = output_stable_flags(cg);
    const std::size_t m = cg.configs.size();
    std::vector<bool> good(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (!stable[i]) continue;
        ++v.stable_count;
        bool all_expected = true;
        for (Output o : cg.outputs[i])
            if (o != expected) { all_expected = false; break; }
        if (all_expected) {
            good[i] = true;
        } else {
            v.failure = "output-stable configuration with wrong output";
            v.witness_config = i;
            v.witness_path = path_from_initial(cg, static_cast<std::uint32_t>(i));
            return v;
        }
    }

    // backward closure from the good stable set must cover everything
    std::vector<std::vector<std::uint32_t>> pred(m);
    for (std::uint32_t i = 0; i < m; ++i)
        for (auto next : cg.succ[i])
            if (next != i) pred[next].push_back(i);
    std::vector<bool> can_reach_good = good;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t i = 0; i < m; ++i)
        if (good[i]) stack.push_back(i);
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (auto prev : pred[cur]) {
            if (!can_reach_good[prev]) {
                can_reach_good[prev] = true;
                stack.push_back(prev);
            }
        }
    }
    for (std::uint32_t i = 0; i < m; ++i) {
        if (!can_reach_good[i]) {
            v.failure = "configuration cannot reach a correct stable configuration";
            v.witness_config = i;
            v.witness_path = path_from_initial(cg, i);
            return v;
        }
    }
    v.solves = true;
    return v;
}

// Schedule-independent negative check: no reachable configuration
// contains a yes-outputting agent.
template <class P>
bool check_weak_fairness_negative(const ConfigGraph<P>& cg) {
    if (cg.status != ExploreStatus::ok) return false;
    for (const auto& out : cg.outputs)
        for (Output o : out)
            if (o == Output::yes) return false;
    return true;
}

}  // namespace popproto
