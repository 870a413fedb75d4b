#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "popproto/graph.hpp"

namespace popproto {

// Expected hitting times h(s, t) of the simple random walk on an
// undirected multigraph; a doubled edge counts twice in the
// transition probabilities.
struct HittingTimeTable {
    NodeId n = 0;
    std::vector<double> h;  // row-major, h[s * n + t]
    double max_hitting = 0.0;

    double at(NodeId s, NodeId t) const { return h[static_cast<std::size_t>(s) * n + t]; }
};

// One dense linear solve per target node. Throws on disconnected input.
HittingTimeTable hitting_times(const UndirectedMultigraph& m);

// Monte-Carlo estimate of h(s, t), the independent check for the solver.
double hitting_time_monte_carlo(const UndirectedMultigraph& m, NodeId s, NodeId t,
                                std::uint64_t walks, std::uint64_t seed);

// types * H_types, the expected draws to collect every coupon.
double coupon_collector_expect(std::int64_t types);

// Least-squares slope of ln(mean) vs ln(n); needs >= 3 positive points.
double loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace popproto
