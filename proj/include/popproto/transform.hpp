#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "popproto/config.hpp"
#include "popproto/graph.hpp"
#include "popproto/scheduler.hpp"

namespace popproto {

// The two-copy cross-wired graph f(G) on 2n nodes: node x of G maps to
// the pair {x, x+n}; every arc is duplicated in both copies, and arcs
// touching node 0 are additionally cross-wired between the copies.
Digraph f_transform(const Digraph& g);

// Expands one base interaction into arcs of f(G): the two copy arcs,
// plus the two cross arcs when node 0 participates. Arcs come in
// mirror pairs; applying a pair advances both copies by one step.
std::vector<Arc> mirror_expand(const Digraph& g, Arc base);

// Expands a whole base sequence (concatenation of per-arc blocks).
std::vector<Arc> mirror_schedule(const Digraph& g, const std::vector<Arc>& base);

struct MirrorRunResult {
    bool invariant_held = true;
    std::uint64_t first_divergence_step = 0;  // base step index, if broken
    std::vector<int> base_outputs;            // 0 = no, 1 = yes
    std::vector<int> image_outputs;
};

// Drives protocol p on G and on f(G) in lockstep: each mirror pair on
// f(G) corresponds to one application of the base arc on G (so a base
// arc touching node 0 is applied twice per block, once per pair). The
// mirror invariant state(x) = state(x') = state(x'+n) is checked after
// every pair.
template <class P>
MirrorRunResult mirrored_run(const P& p, const Digraph& g, Schedule base_sched,
                             std::uint64_t base_steps) {
    const NodeId n = g.node_count();
    const Digraph image = f_transform(g);
    auto base = initial_config(p, n);
    auto mirror = initial_config(p, static_cast<NodeId>(2 * n));

    MirrorRunResult result;
    for (std::uint64_t step = 0; step < base_steps; ++step) {
        const Arc arc = base_sched.next();
        const auto expanded = mirror_expand(g, arc);
        for (std::size_t i = 0; i < expanded.size(); i += 2) {
            apply_interaction(p, base, arc);
            apply_interaction(p, mirror, expanded[i]);
            apply_interaction(p, mirror, expanded[i + 1]);
            for (NodeId x = 0; x < n; ++x) {
                if (!(mirror[x] == base[x] && mirror[x + n] == base[x])) {
                    result.invariant_held = false;
                    result.first_divergence_step = step;
                }
            }
            if (!result.invariant_held) break;
        }
        if (!result.invariant_held) break;
    }
    for (const auto& s : base) result.base_outputs.push_back(p.output(s) == Output::yes);
    for (const auto& s : mirror) result.image_outputs.push_back(p.output(s) == Output::yes);
    return result;
}

}  // namespace popproto
