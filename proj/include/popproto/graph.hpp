#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace popproto {

using NodeId = std::int32_t;

// Ordered interaction pair: initiator -> responder.
struct Arc {
    NodeId initiator = 0;
    NodeId responder = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Simple weakly connected digraph over agents 0..n-1.
// Arcs are kept sorted lexicographically and deduplicated.
class Digraph {
public:
    Digraph() = default;
    Digraph(NodeId n, std::vector<Arc> arcs);

    NodeId node_count() const { return n_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::size_t arc_count() const { return arcs_.size(); }
    bool has_arc(Arc a) const;

private:
    NodeId n_ = 0;
    std::vector<Arc> arcs_;
};

// Underlying undirected multigraph G^ : one edge {u,v} per arc, so any
// pair appears at most twice.
struct UndirectedMultigraph {
    NodeId n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;  // u <= v... u < v, sorted
};

struct ValidationResult {
    bool ok = true;
    std::string diagnostic;  // names the first violated property
};

ValidationResult validate(const Digraph& g);
bool is_complete(const Digraph& g);
UndirectedMultigraph to_undirected_multigraph(const Digraph& g);

enum class GraphKind {
    complete,
    directed_ring,
    directed_line,
    star_bidir,
    near_complete_minus_one_arc,
    random_weakly_connected,
};

// Parses one of the GraphKind names ("complete", "directed_ring", ...).
bool parse_graph_kind(const std::string& name, GraphKind& out);
std::string graph_kind_name(GraphKind kind);

// Throws std::invalid_argument for n < 2. Seed only matters for the
// random kind; random graphs are weakly connected by construction
// (spanning-tree skeleton plus extra arcs).
Digraph generate(GraphKind kind, NodeId n, std::uint64_t seed = 0);

struct ParseError {
    int line = 0;
    std::string message;
};

// File format: first line n, then "initiator responder" per line, '#'
// starts a comment. Canonical write order is lexicographic.
Digraph read_graph(std::istream& in);       // throws GraphParseError
void write_graph(const Digraph& g, std::ostream& out);
Digraph read_graph_file(const std::string& path);
void write_graph_file(const Digraph& g, const std::string& path);

class GraphParseError : public std::runtime_error {
public:
    GraphParseError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace popproto
