#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "popproto/graph.hpp"
#include "popproto/protocols.hpp"

namespace popproto {

// A configuration is the vector of all agent states, indexed by NodeId.
template <class P>
using ConfigOf = std::vector<typename P::State>;

template <class P>
ConfigOf<P> initial_config(const P& p, NodeId n) {
    return ConfigOf<P>(static_cast<std::size_t>(n), p.initial());
}

// Applies one interaction in place; only the arc's endpoints change.
template <class P>
void apply_interaction(const P& p, ConfigOf<P>& c, Arc arc) {
    auto [sa, sb] = p.step(c[arc.initiator], c[arc.responder]);
    c[arc.initiator] = sa;
    c[arc.responder] = sb;
}

template <class P>
std::vector<Output> all_outputs(const P& p, const ConfigOf<P>& c) {
    std::vector<Output> out;
    out.reserve(c.size());
    for (const auto& s : c) out.push_back(p.output(s));
    return out;
}

// True iff no agent that was in phase 4 before the interaction left
// phase 4 after it. For CIG the check is scoped to agents whose size
// did not change (a size update legitimately resets the phase).
inline bool yes_is_absorbing(const CiwProtocol& p, const ConfigOf<CiwProtocol>& c, Arc arc) {
    auto after = c;
    apply_interaction(p, after, arc);
    for (NodeId v : {arc.initiator, arc.responder})
        if (c[v].phase == 4 && after[v].phase != 4) return false;
    return true;
}

inline bool yes_is_absorbing(const CiwkProtocol& p, const ConfigOf<CiwkProtocol>& c, Arc arc) {
    auto after = c;
    apply_interaction(p, after, arc);
    for (NodeId v : {arc.initiator, arc.responder})
        if (c[v].phase == CiwkPhase::p4 && after[v].phase != CiwkPhase::p4) return false;
    return true;
}

inline bool yes_is_absorbing(const CigProtocol& p, const ConfigOf<CigProtocol>& c, Arc arc) {
    auto after = c;
    apply_interaction(p, after, arc);
    for (NodeId v : {arc.initiator, arc.responder})
        if (c[v].ciw.phase == 4 && after[v].ciw.phase != 4 && after[v].size == c[v].size)
            return false;
    return true;
}

// Census encoding: protocol state to dense index. CIG needs the
// population bound to pack its integer fields.
inline std::uint64_t census_encode(const CiwProtocol& p, const CiwState& s, NodeId) {
    return p.encode(s);
}
inline std::uint64_t census_encode(const CiwkProtocol& p, const CiwkState& s, NodeId) {
    return p.encode(s);
}
inline std::uint64_t census_encode(const CigProtocol& p, const CigState& s, NodeId n) {
    return p.encode(s, n);
}

// ---------------------------------------------------------------------------
// Per-step invariants from the protocols' correctness arguments. Each
// returns the first violated invariant's description, or nullopt.

inline std::optional<std::string> check_invariants(const CiwProtocol&,
                                                   const ConfigOf<CiwProtocol>&,
                                                   const ConfigOf<CiwProtocol>& cur,
                                                   NodeId n) {
    std::int64_t sum34 = 0, n34 = 0, sum_all = 0, leaders = 0;
    bool all_phase1 = true, any_phase2plus = false;
    for (const auto& s : cur) {
        sum_all += s.cnt;
        if (s.leader) ++leaders;
        if (s.phase != 1) all_phase1 = false;
        if (s.phase >= 2) any_phase2plus = true;
        if (s.phase >= 3) {
            sum34 += s.cnt;
            ++n34;
        }
        if (s.cnt < 0 || s.cnt > n) return "ciw_n: cnt out of [0, n]";
    }
    if (all_phase1 && sum_all != n) return "ciw_n: phase-1 cnt sum != n";
    if (sum34 != n34) return "ciw_n: sum of cnt over V3+V4 != |V3+V4|";
    if (any_phase2plus && leaders != 1) return "ciw_n: leader count != 1 after phase 2";
    return std::nullopt;
}

inline std::optional<std::string> check_invariants(const CiwkProtocol& p,
                                                   const ConfigOf<CiwkProtocol>&,
                                                   const ConfigOf<CiwkProtocol>& cur,
                                                   NodeId n) {
    std::int64_t sum34 = 0, n34 = 0, sum_all = 0;
    bool all_phase1 = true, any_assigned_all = true;
    std::vector<std::int32_t> leaders_per_group(p.k + 1, 0);
    std::vector<std::int32_t> group_sizes(p.k + 1, 0);
    for (const auto& s : cur) {
        sum_all += s.cnt;
        if (s.phase != CiwkPhase::p1) all_phase1 = false;
        if (s.group == p.k) any_assigned_all = false;
        if (s.leader) ++leaders_per_group[s.group];
        ++group_sizes[s.group];
        if (s.phase == CiwkPhase::p3 || s.phase == CiwkPhase::p4) {
            sum34 += s.cnt;
            ++n34;
        }
        if (s.cnt < 0 || s.cnt > n) return "ciw_nk: cnt out of [0, n]";
    }
    if (all_phase1 && sum_all != n) return "ciw_nk: phase-1 cnt sum != n";
    if (sum34 != n34) return "ciw_nk: sum of cnt over V3+V4 != |V3+V4|";
    for (std::int32_t g = 0; g < p.k; ++g)
        if (leaders_per_group[g] > 1) return "ciw_nk: more than one leader in a group";
    if (any_assigned_all) {
        const std::int32_t lo = n / p.k, hi = (n + p.k - 1) / p.k;
        for (std::int32_t g = 0; g < p.k; ++g)
            if (group_sizes[g] != lo && group_sizes[g] != hi)
                return "ciw_nk: group size outside floor/ceil(n/k)";
    }
    return std::nullopt;
}

inline std::optional<std::string> check_invariants(const CigProtocol&,
                                                   const ConfigOf<CigProtocol>& prev,
                                                   const ConfigOf<CigProtocol>& cur,
                                                   NodeId n) {
    std::int64_t token_size_sum = 0;
    for (std::size_t v = 0; v < cur.size(); ++v) {
        const auto& s = cur[v];
        if (s.token) token_size_sum += s.size;
        if (s.size > n) return "cig: size exceeds n";
        // cnt may transiently exceed size right after a token swap, but
        // never the population size
        if (s.ciw.cnt > n) return "cig: cnt exceeds n";
        // the token-swap rule exchanges sizes, so an agent's stored size
        // may drop exactly when it takes over a smaller token
        if (!prev.empty() && s.size < prev[v].size && !(s.token && !prev[v].token))
            return "cig: size decreased";
    }
    if (token_size_sum != n) return "cig: token size sum != n";
    return std::nullopt;
}

}  // namespace popproto
