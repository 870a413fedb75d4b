#include "popproto/transform.hpp"

#include <stdexcept>

namespace popproto {

Digraph f_transform(const Digraph& g) {
    const NodeId n = g.node_count();
    std::vector<Arc> arcs;
    arcs.reserve(2 * g.arc_count());
    for (const Arc& a : g.arcs()) {
        arcs.push_back(a);
        arcs.push_back({static_cast<NodeId>(a.initiator + n), static_cast<NodeId>(a.responder + n)});
        if (a.initiator == 0) {
            arcs.push_back({0, static_cast<NodeId>(a.responder + n)});
            arcs.push_back({n, a.responder});
        }
        if (a.responder == 0) {
            arcs.push_back({static_cast<NodeId>(a.initiator + n), 0});
            arcs.push_back({a.initiator, n});
        }
    }
    return Digraph(static_cast<NodeId>(2 * n), std::move(arcs));
}

std::vector<Arc> mirror_expand(const Digraph& g, Arc base) {
    if (!g.has_arc(base)) throw std::invalid_argument("mirror_expand: arc not in graph");
    const NodeId n = g.node_count();
    std::vector<Arc> out;
    out.push_back(base);
    out.push_back({static_cast<NodeId>(base.initiator + n), static_cast<NodeId>(base.responder + n)});
    if (base.initiator == 0) {
        out.push_back({0, static_cast<NodeId>(base.responder + n)});
        out.push_back({n, base.responder});
    } else if (base.responder == 0) {
        out.push_back({static_cast<NodeId>(base.initiator + n), 0});
        out.push_back({base.initiator, n});
    }
    return out;
}

std::vector<Arc> mirror_schedule(const Digraph& g, const std::vector<Arc>& base) {
    std::vector<Arc> out;
    for (const Arc& a : base) {
        auto block = mirror_expand(g, a);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

}  // namespace popproto
