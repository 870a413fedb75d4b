#include "popproto/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "popproto/rng.hpp"

namespace popproto {

Digraph::Digraph(NodeId n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

bool Digraph::has_arc(Arc a) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), a);
}

ValidationResult validate(const Digraph& g) {
    const NodeId n = g.node_count();
    if (n < 2) return {false, "fewer than two agents"};
    for (const Arc& a : g.arcs()) {
        if (a.initiator < 0 || a.initiator >= n || a.responder < 0 || a.responder >= n)
            return {false, "arc endpoint out of range"};
        if (a.initiator == a.responder) return {false, "self-loop"};
    }
    // weak connectivity: union-find over the undirected skeleton
    std::vector<NodeId> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](NodeId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Arc& a : g.arcs()) parent[find(a.initiator)] = find(a.responder);
    for (NodeId v = 1; v < n; ++v)
        if (find(v) != find(0)) return {false, "not weakly connected"};
    return {true, ""};
}

bool is_complete(const Digraph& g) {
    const auto n = static_cast<std::size_t>(g.node_count());
    return g.arc_count() == n * (n - 1);
}

UndirectedMultigraph to_undirected_multigraph(const Digraph& g) {
    UndirectedMultigraph m;
    m.n = g.node_count();
    m.edges.reserve(g.arc_count());
    for (const Arc& a : g.arcs())
        m.edges.emplace_back(std::min(a.initiator, a.responder),
                             std::max(a.initiator, a.responder));
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

bool parse_graph_kind(const std::string& name, GraphKind& out) {
    if (name == "complete") out = GraphKind::complete;
    else if (name == "directed_ring") out = GraphKind::directed_ring;
    else if (name == "directed_line") out = GraphKind::directed_line;
    else if (name == "star_bidir") out = GraphKind::star_bidir;
    else if (name == "near_complete_minus_one_arc") out = GraphKind::near_complete_minus_one_arc;
    else if (name == "random_weakly_connected") out = GraphKind::random_weakly_connected;
    else return false;
    return true;
}

std::string graph_kind_name(GraphKind kind) {
    switch (kind) {
        case GraphKind::complete: return "complete";
        case GraphKind::directed_ring: return "directed_ring";
        case GraphKind::directed_line: return "directed_line";
        case GraphKind::star_bidir: return "star_bidir";
        case GraphKind::near_complete_minus_one_arc: return "near_complete_minus_one_arc";
        case GraphKind::random_weakly_connected: return "random_weakly_connected";
    }
    return "?";
}

Digraph generate(GraphKind kind, NodeId n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate: n must be at least 2");
    std::vector<Arc> arcs;
    switch (kind) {
        case GraphKind::complete:
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v)
                    if (u != v) arcs.push_back({u, v});
            break;
        case GraphKind::directed_ring:
            for (NodeId u = 0; u < n; ++u) arcs.push_back({u, static_cast<NodeId>((u + 1) % n)});
            break;
        case GraphKind::directed_line:
            for (NodeId u = 0; u + 1 < n; ++u) arcs.push_back({u, static_cast<NodeId>(u + 1)});
            break;
        case GraphKind::star_bidir:
            for (NodeId v = 1; v < n; ++v) {
                arcs.push_back({0, v});
                arcs.push_back({v, 0});
            }
            break;
        case GraphKind::near_complete_minus_one_arc: {
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v)
                    if (u != v && !(u == n - 2 && v == n - 1)) arcs.push_back({u, v});
            break;
        }
        case GraphKind::random_weakly_connected: {
            SplitMix64 rng(seed);
            // spanning tree first (both directions), then random extras
            std::vector<NodeId> order(n);
            std::iota(order.begin(), order.end(), 0);
            for (NodeId i = n - 1; i > 0; --i)
                std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
            for (NodeId i = 1; i < n; ++i) {
                NodeId u = order[rng.below(i)];
                NodeId v = order[i];
                arcs.push_back({u, v});
                arcs.push_back({v, u});
            }
            const auto max_extra = static_cast<std::uint64_t>(n) * (n - 1) / 4;
            const auto extra = rng.below(max_extra + 1);
            for (std::uint64_t i = 0; i < extra; ++i) {
                auto u = static_cast<NodeId>(rng.below(n));
                auto v = static_cast<NodeId>(rng.below(n));
                if (u != v) arcs.push_back({u, v});
            }
            break;
        }
    }
    return Digraph(n, std::move(arcs));
}

GraphParseError::GraphParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Digraph read_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) {
                out = line;
                return true;
            }
        }
        return false;
    };

    std::string header;
    if (!next_line(header)) throw GraphParseError(lineno, "missing node count");
    std::istringstream hs(header);
    long long n = 0;
    std::string trailing;
    if (!(hs >> n) || (hs >> trailing) || n < 2)
        throw GraphParseError(lineno, "bad node count");

    std::vector<Arc> arcs;
    std::string body;
    while (next_line(body)) {
        std::istringstream ls(body);
        long long u = 0, v = 0;
        if (!(ls >> u >> v) || (ls >> trailing))
            throw GraphParseError(lineno, "malformed arc");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw GraphParseError(lineno, "node index out of range");
        if (u == v) throw GraphParseError(lineno, "self-loop");
        Arc arc{static_cast<NodeId>(u), static_cast<NodeId>(v)};
        if (std::find(arcs.begin(), arcs.end(), arc) != arcs.end())
            throw GraphParseError(lineno, "duplicate arc");
        arcs.push_back(arc);
    }
    return Digraph(static_cast<NodeId>(n), std::move(arcs));
}

void write_graph(const Digraph& g, std::ostream& out) {
    out << g.node_count() << "\n";
    for (const Arc& a : g.arcs()) out << a.initiator << " " << a.responder << "\n";
}

Digraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

void write_graph_file(const Digraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_graph(g, out);
}

}  // namespace popproto
