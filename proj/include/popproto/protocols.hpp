#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace popproto {

enum class Output : std::uint8_t { no, yes };

// ---------------------------------------------------------------------------
// CIW_n: weak fairness, exact knowledge of n, 16(n+1) states.

struct CiwState {
    bool leader = true;
    std::uint8_t phase = 1;  // 1..4
    std::uint8_t mode = 0;
    std::int32_t cnt = 1;

    friend bool operator==(const CiwState&, const CiwState&) = default;
};

// One transition of CIW_param applied in place. Guards are evaluated
// top to bottom, first match wins; no match leaves both states as-is.
inline void ciw_step(CiwState& a, CiwState& b, std::int32_t param) {
    if (a.leader && b.leader) {
        a.cnt += b.cnt;
        b.leader = false;
        b.cnt = 0;
        if (a.cnt == param) {
            a.phase = 2;
            a.cnt = 0;
        }
    } else if (a.leader && a.phase == 2 && a.mode == b.mode) {
        a.cnt += 1;
        b.mode = 1 - b.mode;
        if (a.cnt == param - 1) {
            a.phase = 3;
            a.cnt = 1;
            a.mode = 1 - a.mode;
        }
    } else if (a.leader && a.phase == 3 && b.phase == 1) {
        a.leader = false;
        b.leader = true;
        b.phase = 2;
    } else if (a.phase == 3 && b.phase == 3 && a.cnt > 0 && b.cnt > 0) {
        a.cnt += b.cnt;
        b.cnt = 0;
        if (a.cnt == param) a.phase = 4;
    } else if (a.phase == 4) {
        b.phase = 4;
    }
}

struct CiwProtocol {
    using State = CiwState;

    std::int32_t n;

    explicit CiwProtocol(std::int32_t n_) : n(n_) {}

    std::string name() const { return "ciw_n"; }
    State initial() const { return {}; }

    std::pair<State, State> step(State a, State b) const {
        ciw_step(a, b, n);
        return {a, b};
    }

    Output output(const State& s) const { return s.phase == 4 ? Output::yes : Output::no; }

    // Dense index into {F,L} x {1..4} x {0,1} x {0..n}.
    std::uint64_t encode(const State& s) const {
        std::uint64_t e = s.leader ? 1 : 0;
        e = e * 4 + (s.phase - 1);
        e = e * 2 + s.mode;
        e = e * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(s.cnt);
        return e;
    }

    std::uint64_t state_bound() const { return 16ULL * (n + 1); }
};

// ---------------------------------------------------------------------------
// CIW_{n,k}: k parallel out-degree counters, 10(n+1)(k+1)2^k states.

enum class CiwkPhase : std::uint8_t { p1, p1_5, p2, p3, p4 };

struct CiwkState {
    bool leader = true;
    CiwkPhase phase = CiwkPhase::p1;
    std::uint32_t mode = 0;      // bit g = mode[g], g in [0, k)
    std::int32_t group = 0;      // k means unassigned; set at construction
    std::int32_t cnt = 1;

    friend bool operator==(const CiwkState&, const CiwkState&) = default;
};

struct CiwkProtocol {
    using State = CiwkState;

    std::int32_t n;
    std::int32_t k;

    CiwkProtocol(std::int32_t n_, std::int32_t k_) : n(n_), k(k_) {
        if (k < 1 || k > n) throw std::invalid_argument("ciw_nk: k must be in [1, n]");
    }

    std::string name() const { return "ciw_nk"; }

    State initial() const {
        State s;
        s.group = k;  // null group
        return s;
    }

    std::pair<State, State> step(State a, State b) const {
        const auto bit = [](const State& s, std::int32_t g) -> std::uint32_t {
            return (s.mode >> g) & 1u;
        };
        const auto flip = [](State& s, std::int32_t g) { s.mode ^= (1u << g); };

        // leader election is restricted to phase 1: group leaders
        // appointed later must never merge with each other
        if (a.leader && b.leader && a.phase == CiwkPhase::p1 && b.phase == CiwkPhase::p1) {
            a.cnt += b.cnt;
            b.leader = false;
            b.cnt = 0;
            if (a.cnt == n) a.phase = CiwkPhase::p1_5;
        } else if (a.leader && a.phase == CiwkPhase::p1_5 && b.group == k) {
            a.cnt -= 1;
            b.group = a.cnt % k;
            if (a.cnt < k) {
                b.leader = true;
                b.phase = CiwkPhase::p2;
            }
            if (a.cnt == 1) {
                a.leader = true;
                a.phase = CiwkPhase::p2;
                a.cnt = 0;
                a.group = 0;
            }
        } else if (a.leader && a.phase == CiwkPhase::p2 && bit(a, a.group) == bit(b, a.group)) {
            a.cnt += 1;
            flip(b, a.group);
            if (a.cnt == n - 1) {
                a.phase = CiwkPhase::p3;
                a.cnt = 1;
                flip(a, a.group);
            }
        } else if (a.leader && a.phase == CiwkPhase::p3 && b.phase == CiwkPhase::p1 &&
                   a.group == b.group) {
            a.leader = false;
            b.leader = true;
            b.phase = CiwkPhase::p2;
        } else if (a.phase == CiwkPhase::p3 && b.phase == CiwkPhase::p3 && a.cnt > 0 &&
                   b.cnt > 0) {
            a.cnt += b.cnt;
            b.cnt = 0;
            if (a.cnt == n) a.phase = CiwkPhase::p4;
        } else if (a.phase == CiwkPhase::p4) {
            b.phase = CiwkPhase::p4;
        }
        return {a, b};
    }

    Output output(const State& s) const {
        return s.phase == CiwkPhase::p4 ? Output::yes : Output::no;
    }

    std::uint64_t encode(const State& s) const {
        std::uint64_t e = s.leader ? 1 : 0;
        e = e * 5 + static_cast<std::uint64_t>(s.phase);
        e = e * (1ULL << k) + s.mode;
        e = e * static_cast<std::uint64_t>(k + 1) + static_cast<std::uint64_t>(s.group);
        e = e * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(s.cnt);
        return e;
    }

    std::uint64_t state_bound() const {
        return 10ULL * (n + 1) * (k + 1) * (1ULL << k);
    }
};

// ---------------------------------------------------------------------------
// CIG: global fairness, no prior knowledge. Token merging counts the
// population; agents run CIW_size on the shared estimate.

struct CigState {
    CiwState ciw;            // leader/phase/mode/cnt, reset on size updates
    bool token = true;
    std::int64_t size = 1;

    friend bool operator==(const CigState&, const CigState&) = default;
};

struct CigProtocol {
    using State = CigState;

    std::string name() const { return "cig"; }
    State initial() const { return {}; }

    std::pair<State, State> step(State a, State b) const {
        const auto reset = [](State& s) { s.ciw = CiwState{}; };

        if (a.token && b.token) {
            b.token = false;
            a.size = b.size = a.size + b.size;
            reset(a);
            reset(b);
        } else if (a.token && a.size <= b.size) {
            std::swap(a.token, b.token);
            std::swap(a.size, b.size);
            // any size increment resets the CIW variables; the new
            // holder keeps its (possibly stale) variables instead
            if (a.size > b.size) reset(a);
        } else if (b.token && b.size <= a.size) {
            std::swap(b.token, a.token);
            std::swap(b.size, a.size);
            if (b.size > a.size) reset(b);
        } else if (a.size > b.size) {
            std::swap(a.token, b.token);
            b.size = a.size;
            reset(b);
        } else if (b.size > a.size) {
            std::swap(b.token, a.token);
            a.size = b.size;
            reset(a);
        }

        // Trailing equal-size step: runs in the same interaction, also
        // right after a token merge (both agents freshly reset).
        if (a.size == b.size) {
            ciw_step(a.ciw, b.ciw, static_cast<std::int32_t>(a.size));
            if (a.ciw.cnt > a.size) a.ciw.cnt = static_cast<std::int32_t>(a.size);
            if (b.ciw.cnt > b.size) b.ciw.cnt = static_cast<std::int32_t>(b.size);
        }
        return {a, b};
    }

    Output output(const State& s) const {
        return s.ciw.phase == 4 ? Output::yes : Output::no;
    }

    // Valid while size, cnt <= size_cap; used by the model checker with
    // size_cap = n (sizes never exceed the population).
    std::uint64_t encode(const State& s, std::int64_t size_cap) const {
        std::uint64_t e = s.ciw.leader ? 1 : 0;
        e = e * 4 + (s.ciw.phase - 1);
        e = e * 2 + s.ciw.mode;
        e = e * static_cast<std::uint64_t>(size_cap + 1) +
            static_cast<std::uint64_t>(s.ciw.cnt);
        e = e * 2 + (s.token ? 1 : 0);
        e = e * static_cast<std::uint64_t>(size_cap + 1) + static_cast<std::uint64_t>(s.size);
        return e;
    }

    std::uint64_t state_bound(std::int64_t n) const {
        return 32ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1);
    }
};

}  // namespace popproto
