#include "popproto/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace popproto {

bool parse_schedule_kind(const std::string& name, ScheduleKind& out) {
    if (name == "uniform_random") out = ScheduleKind::uniform_random;
    else if (name == "round_robin") out = ScheduleKind::round_robin;
    else if (name == "shuffled_rounds") out = ScheduleKind::shuffled_rounds;
    else return false;
    return true;
}

std::string schedule_kind_name(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::uniform_random: return "uniform_random";
        case ScheduleKind::round_robin: return "round_robin";
        case ScheduleKind::shuffled_rounds: return "shuffled_rounds";
    }
    return "?";
}

Schedule::Schedule(ScheduleKind kind, const Digraph& g, std::uint64_t seed)
    : kind_(kind), seed_(seed), arcs_(g.arcs()), rng_(seed) {
    if (arcs_.empty()) throw std::invalid_argument("schedule: graph has no arcs");
    if (kind_ == ScheduleKind::round_robin && seed_ != 0) rng_.shuffle(arcs_);
}

Arc Schedule::next() {
    switch (kind_) {
        case ScheduleKind::uniform_random:
            return arcs_[rng_.below(arcs_.size())];
        case ScheduleKind::round_robin: {
            Arc a = arcs_[pos_];
            pos_ = (pos_ + 1) % arcs_.size();
            return a;
        }
        case ScheduleKind::shuffled_rounds: {
            if (pos_ == 0) rng_.shuffle(arcs_);
            Arc a = arcs_[pos_];
            pos_ = (pos_ + 1) % arcs_.size();
            return a;
        }
    }
    return arcs_[0];
}

RoundCounter::RoundCounter(const Digraph& g)
    : g_(&g), seen_(g.arc_count(), false) {}

std::size_t RoundCounter::arc_index(Arc a) const {
    const auto& arcs = g_->arcs();
    auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
    if (it == arcs.end() || *it != a) throw std::invalid_argument("arc not in graph");
    return static_cast<std::size_t>(it - arcs.begin());
}

void RoundCounter::advance(Arc arc) {
    const std::size_t i = arc_index(arc);
    ++current_len_;
    if (!seen_[i]) {
        seen_[i] = true;
        if (++distinct_ == seen_.size()) {
            ++completed_;
            lengths_.push_back(current_len_);
            current_len_ = 0;
            distinct_ = 0;
            std::fill(seen_.begin(), seen_.end(), false);
        }
    }
}

double mean_round_length(const Digraph& g, std::uint64_t rounds, std::uint64_t seed) {
    Schedule s(ScheduleKind::uniform_random, g, seed);
    RoundCounter rc(g);
    std::uint64_t steps = 0;
    while (rc.completed_rounds() < rounds) {
        rc.advance(s.next());
        ++steps;
    }
    return static_cast<double>(steps) / static_cast<double>(rounds);
}

}  // namespace popproto
