#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "popproto/graph.hpp"
#include "popproto/rng.hpp"

namespace popproto {

enum class ScheduleKind { uniform_random, round_robin, shuffled_rounds };

bool parse_schedule_kind(const std::string& name, ScheduleKind& out);
std::string schedule_kind_name(ScheduleKind kind);

// Lazily generated interaction sequence over a graph's arcs.
//  - uniform_random: i.i.d. uniform over E (global-fairness surrogate).
//  - round_robin: one fixed permutation repeated forever; seed 0 is the
//    lexicographic order, any other seed a shuffled fixed permutation.
//  - shuffled_rounds: a fresh seeded permutation per |E|-block.
// Deterministic given (kind, seed, graph).
class Schedule {
public:
    Schedule(ScheduleKind kind, const Digraph& g, std::uint64_t seed);

    Arc next();
    ScheduleKind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

private:
    ScheduleKind kind_;
    std::uint64_t seed_;
    std::vector<Arc> arcs_;
    SplitMix64 rng_;
    std::size_t pos_ = 0;
};

// Greedy round parse per the shortest-covering-prefix definition: a
// round completes exactly when every arc has been seen since the last
// completion.
class RoundCounter {
public:
    explicit RoundCounter(const Digraph& g);

    void advance(Arc arc);
    std::uint64_t completed_rounds() const { return completed_; }
    bool round_in_progress() const { return current_len_ > 0; }
    const std::vector<std::uint64_t>& lengths() const { return lengths_; }

private:
    const Digraph* g_;
    std::vector<bool> seen_;
    std::size_t distinct_ = 0;
    std::uint64_t current_len_ = 0;
    std::uint64_t completed_ = 0;
    std::vector<std::uint64_t> lengths_;
    std::size_t arc_index(Arc a) const;
};

// Mean round length over `rounds` completed rounds of the uniformly
// random schedule; compared against the coupon-collector value.
double mean_round_length(const Digraph& g, std::uint64_t rounds, std::uint64_t seed);

}  // namespace popproto
