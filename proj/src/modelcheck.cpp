#include "popproto/modelcheck.hpp"

#include <json.hpp>

namespace popproto {
namespace detail {

// Iterative Tarjan; components are returned in pop order, so every
// successor SCC of a component precedes it in the result.
std::vector<std::vector<std::uint32_t>> tarjan_sccs(
    const std::vector<std::vector<std::uint32_t>>& succ) {
    const auto m = static_cast<std::uint32_t>(succ.size());
    constexpr std::uint32_t kUnvisited = 0xffffffffu;
    std::vector<std::uint32_t> num(m, kUnvisited), low(m, 0);
    std::vector<bool> on_stack(m, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> sccs;
    std::uint32_t counter = 0;

    struct Frame {
        std::uint32_t node;
        std::size_t edge;
    };
    std::vector<Frame> dfs;

    for (std::uint32_t root = 0; root < m; ++root) {
        if (num[root] != kUnvisited) continue;
        dfs.push_back({root, 0});
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!dfs.empty()) {
            auto& [node, edge] = dfs.back();
            if (edge < succ[node].size()) {
                const std::uint32_t next = succ[node][edge++];
                if (num[next] == kUnvisited) {
                    num[next] = low[next] = counter++;
                    stack.push_back(next);
                    on_stack[next] = true;
                    dfs.push_back({next, 0});
                } else if (on_stack[next]) {
                    low[node] = std::min(low[node], num[next]);
                }
            } else {
                if (low[node] == num[node]) {
                    std::vector<std::uint32_t> scc;
                    std::uint32_t popped;
                    do {
                        popped = stack.back();
                        stack.pop_back();
                        on_stack[popped] = false;
                        scc.push_back(popped);
                    } while (popped != node);
                    sccs.push_back(std::move(scc));
                }
                const std::uint32_t done = node;
                dfs.pop_back();
                if (!dfs.empty()) low[dfs.back().node] = std::min(low[dfs.back().node], low[done]);
            }
        }
    }
    return sccs;
}

}  // namespace detail

std::string verdict_to_json(const Verdict& v, const std::string& protocol,
                            const std::string& graph, std::int32_t n, std::int32_t k) {
    nlohmann::json j;
    j["protocol"] = protocol;
    j["graph"] = graph;
    j["n"] = n;
    if (k > 0) j["k"] = k;
    j["solves"] = v.solves;
    j["reachable_count"] = v.reachable_count;
    j["stable_count"] = v.stable_count;
    if (!v.failure.empty()) j["failure"] = v.failure;
    if (!v.witness_path.empty() ||
        v.witness_config != std::numeric_limits<std::size_t>::max()) {
        nlohmann::json path = nlohmann::json::array();
        for (const Arc& a : v.witness_path)
            path.push_back({{"initiator", a.initiator}, {"responder", a.responder}});
        j["witness_path"] = path;
        j["witness_config"] = v.witness_config;
    }
    return j.dump();
}

}  // namespace popproto
