#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "popproto/config.hpp"
#include "popproto/graph.hpp"
#include "popproto/protocols.hpp"
#include "popproto/scheduler.hpp"

namespace popproto {

struct RunOptions {
    std::uint64_t max_steps = 0;   // 0 -> protocol-scale default
    bool invariant_checks = true;  // O(n) per step
    bool census = false;
    bool negative_mode = false;    // fixed horizon, count wrong-yes sightings
};

struct StateCensus {
    std::uint64_t distinct_states = 0;
    std::uint64_t nominal_bound = 0;
};

struct RunRecord {
    std::string protocol;
    std::string graph;
    std::string schedule;
    std::int32_t n = 0;
    std::int32_t k = 0;
    std::uint64_t seed = 0;
    bool stabilized = false;
    std::uint64_t steps_to_stabilize = 0;
    std::uint64_t rounds_to_stabilize = 0;
    std::uint64_t total_steps = 0;
    std::uint64_t wrong_yes_sightings = 0;
    std::vector<std::string> invariant_violations;
    std::uint64_t violation_step = 0;
    StateCensus census;
    std::vector<int> final_outputs;  // 0 = no, 1 = yes
};

std::string run_record_to_json(const RunRecord& rec);

// Default horizons: 100 n^3 ceil(ln n) for positive runs, half that
// for negative falsification runs.
inline std::uint64_t default_max_steps(NodeId n, bool negative) {
    const auto cube = static_cast<std::uint64_t>(n) * n * n;
    const auto lg = static_cast<std::uint64_t>(std::ceil(std::log(static_cast<double>(n))));
    return (negative ? 50 : 100) * cube * std::max<std::uint64_t>(lg, 1);
}

inline std::uint64_t nominal_state_bound(const CiwProtocol& p, NodeId) { return p.state_bound(); }
inline std::uint64_t nominal_state_bound(const CiwkProtocol& p, NodeId) { return p.state_bound(); }
inline std::uint64_t nominal_state_bound(const CigProtocol& p, NodeId n) { return p.state_bound(n); }

inline std::int32_t protocol_k(const CiwProtocol&) { return 0; }
inline std::int32_t protocol_k(const CiwkProtocol& p) { return p.k; }
inline std::int32_t protocol_k(const CigProtocol&) { return 0; }

// Size-monotonicity needs the pre-step configuration; only CIG has a
// cross-step invariant.
inline std::optional<std::string> check_monotone(const CiwProtocol&, const ConfigOf<CiwProtocol>&,
                                                 const ConfigOf<CiwProtocol>&, NodeId) {
    return std::nullopt;
}
inline std::optional<std::string> check_monotone(const CiwkProtocol&, const ConfigOf<CiwkProtocol>&,
                                                 const ConfigOf<CiwkProtocol>&, NodeId) {
    return std::nullopt;
}
inline std::optional<std::string> check_monotone(const CigProtocol&,
                                                 const ConfigOf<CigProtocol>& prev,
                                                 const ConfigOf<CigProtocol>& cur, NodeId) {
    for (std::size_t v = 0; v < cur.size(); ++v)
        if (cur[v].size < prev[v].size && !(cur[v].token && !prev[v].token))
            return "cig: size decreased";
    return std::nullopt;
}

inline constexpr bool has_cross_step_invariant(const CiwProtocol&) { return false; }
inline constexpr bool has_cross_step_invariant(const CiwkProtocol&) { return false; }
inline constexpr bool has_cross_step_invariant(const CigProtocol&) { return true; }

namespace detail {

inline bool is_yes(const CiwProtocol&, const CiwState& s) { return s.phase == 4; }
inline bool is_yes(const CiwkProtocol&, const CiwkState& s) { return s.phase == CiwkPhase::p4; }
inline bool is_yes(const CigProtocol&, const CigState& s) { return s.ciw.phase == 4; }

// Stabilization certificates, tracked incrementally per endpoint.
template <class P>
struct CertTracker {
    std::int64_t yes_count = 0;

    void init(const P& p, const ConfigOf<P>& c, NodeId) {
        for (const auto& s : c) yes_count += is_yes(p, s);
    }
    void retract(const P& p, const typename P::State& s, NodeId) { yes_count -= is_yes(p, s); }
    void admit(const P& p, const typename P::State& s, NodeId) { yes_count += is_yes(p, s); }
    bool holds(NodeId n) const { return yes_count == n; }
    // a yes sighting on a non-complete graph is a soundness failure
    bool wrong_yes(const P& p, const typename P::State& s, NodeId) const { return is_yes(p, s); }
};

// CIG: all agents in phase 4 with size n and a single surviving token.
template <>
struct CertTracker<CigProtocol> {
    std::int64_t yes_count = 0;
    std::int64_t size_n_count = 0;
    std::int64_t token_count = 0;

    void init(const CigProtocol& p, const ConfigOf<CigProtocol>& c, NodeId n) {
        for (const auto& s : c) admit(p, s, n);
    }
    void retract(const CigProtocol& p, const CigState& s, NodeId n) {
        yes_count -= is_yes(p, s);
        size_n_count -= (s.size == n);
        token_count -= s.token;
    }
    void admit(const CigProtocol& p, const CigState& s, NodeId n) {
        yes_count += is_yes(p, s);
        size_n_count += (s.size == n);
        token_count += s.token;
    }
    bool holds(NodeId n) const {
        return yes_count == n && size_n_count == n && token_count == 1;
    }
    bool wrong_yes(const CigProtocol& p, const CigState& s, NodeId n) const {
        return is_yes(p, s) && s.size == n;
    }
};

}  // namespace detail

template <class P>
RunRecord run(const P& p, const Digraph& g, Schedule sched, const RunOptions& opts,
              const std::string& graph_desc = "") {
    const NodeId n = g.node_count();
    RunRecord rec;
    rec.protocol = p.name();
    rec.graph = graph_desc;
    rec.schedule = schedule_kind_name(sched.kind());
    rec.n = n;
    rec.k = protocol_k(p);
    rec.seed = sched.seed();
    rec.census.nominal_bound = nominal_state_bound(p, n);

    const std::uint64_t max_steps =
        opts.max_steps ? opts.max_steps : default_max_steps(n, opts.negative_mode);

    auto config = initial_config(p, n);
    ConfigOf<P> prev;
    RoundCounter rounds(g);
    detail::CertTracker<P> cert;
    cert.init(p, config, n);

    std::unordered_set<std::uint64_t> census_set;
    if (opts.census)
        for (const auto& s : config) census_set.insert(census_encode(p, s, n));

    auto record_stabilized = [&](std::uint64_t step) {
        rec.stabilized = true;
        rec.steps_to_stabilize = step;
        rec.rounds_to_stabilize =
            rounds.completed_rounds() + (rounds.round_in_progress() ? 1 : 0);
    };

    if (auto v = check_invariants(p, config, config, n); opts.invariant_checks && v) {
        rec.invariant_violations.push_back(*v);
        return rec;
    }

    for (std::uint64_t step = 0; step < max_steps; ++step) {
        if (!opts.negative_mode && cert.holds(n)) {
            record_stabilized(step);
            break;
        }
        const Arc arc = sched.next();
        if (opts.invariant_checks && has_cross_step_invariant(p)) prev = config;
        cert.retract(p, config[arc.initiator], n);
        cert.retract(p, config[arc.responder], n);
        apply_interaction(p, config, arc);
        cert.admit(p, config[arc.initiator], n);
        cert.admit(p, config[arc.responder], n);
        rounds.advance(arc);
        rec.total_steps = step + 1;

        if (opts.census) {
            census_set.insert(census_encode(p, config[arc.initiator], n));
            census_set.insert(census_encode(p, config[arc.responder], n));
        }
        if (opts.negative_mode) {
            if (cert.wrong_yes(p, config[arc.initiator], n) ||
                cert.wrong_yes(p, config[arc.responder], n))
                ++rec.wrong_yes_sightings;
        }
        if (opts.invariant_checks) {
            auto v = check_invariants(p, prev, config, n);
            if (!v) v = check_monotone(p, prev, config, n);
            if (v) {
                rec.invariant_violations.push_back(*v);
                rec.violation_step = step;
                break;
            }
        }
    }
    if (!opts.negative_mode && !rec.stabilized && rec.invariant_violations.empty() &&
        cert.holds(n))
        record_stabilized(rec.total_steps);

    rec.census.distinct_states = census_set.size();
    rec.final_outputs.reserve(config.size());
    for (const auto& s : config) rec.final_outputs.push_back(detail::is_yes(p, s) ? 1 : 0);
    return rec;
}

struct ScalingRow {
    std::string protocol;
    std::int32_t n = 0;
    std::int32_t k = 0;
    std::string graph;
    std::string schedule;
    std::uint64_t seed = 0;
    std::int32_t trials = 0;
    double mean_steps = 0;
    double std_steps = 0;
    double mean_rounds = 0;
    bool all_stabilized = true;
};

std::string scaling_csv_header();
std::string scaling_csv_row(const ScalingRow& row);

// Aggregates seeded trials into one row; per-trial streams derived
// from (seed, trial index).
template <class P>
ScalingRow measure_scaling_point(const P& p, const Digraph& g, const std::string& graph_desc,
                                 std::int32_t trials, std::uint64_t seed, ScheduleKind kind,
                                 const RunOptions& base_opts) {
    ScalingRow row;
    row.protocol = p.name();
    row.n = g.node_count();
    row.k = protocol_k(p);
    row.graph = graph_desc;
    row.schedule = schedule_kind_name(kind);
    row.seed = seed;
    row.trials = trials;

    double sum = 0, sumsq = 0, round_sum = 0;
    std::int32_t ok = 0;
    for (std::int32_t t = 0; t < trials; ++t) {
        Schedule sched(kind, g, derive_seed(seed, static_cast<std::uint64_t>(t)));
        RunRecord rec = run(p, g, sched, base_opts, graph_desc);
        if (!rec.stabilized) {
            row.all_stabilized = false;
            continue;
        }
        ++ok;
        const auto steps = static_cast<double>(rec.steps_to_stabilize);
        sum += steps;
        sumsq += steps * steps;
        round_sum += static_cast<double>(rec.rounds_to_stabilize);
    }
    if (ok > 0) {
        row.mean_steps = sum / ok;
        row.std_steps = std::sqrt(std::max(0.0, sumsq / ok - row.mean_steps * row.mean_steps));
        row.mean_rounds = round_sum / ok;
    }
    return row;
}

}  // namespace popproto
