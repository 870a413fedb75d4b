#include "popproto/stats.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "popproto/rng.hpp"

namespace popproto {

namespace {

// Multiplicity-weighted neighbor lists: neighbors[v] repeats u once per
// parallel edge {v, u}.
std::vector<std::vector<NodeId>> neighbor_lists(const UndirectedMultigraph& m) {
    std::vector<std::vector<NodeId>> nbr(m.n);
    for (auto [u, v] : m.edges) {
        nbr[u].push_back(v);
        nbr[v].push_back(u);
    }
    return nbr;
}

}  // namespace

HittingTimeTable hitting_times(const UndirectedMultigraph& m) {
    const NodeId n = m.n;
    const auto nbr = neighbor_lists(m);
    for (NodeId v = 0; v < n; ++v)
        if (nbr[v].empty()) throw std::invalid_argument("hitting_times: isolated node");

    HittingTimeTable table;
    table.n = n;
    table.h.assign(static_cast<std::size_t>(n) * n, 0.0);

    // For each target t: h(t)=0, h(s) = 1 + sum_u h(u) / deg(s).
    for (NodeId t = 0; t < n; ++t) {
        const NodeId dim = n - 1;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
        Eigen::VectorXd b = Eigen::VectorXd::Ones(dim);
        auto row_of = [&](NodeId v) { return v < t ? v : v - 1; };
        for (NodeId s = 0; s < n; ++s) {
            if (s == t) continue;
            const NodeId r = row_of(s);
            A(r, r) += 1.0;
            const double deg = static_cast<double>(nbr[s].size());
            for (NodeId u : nbr[s]) {
                if (u == t) continue;
                A(r, row_of(u)) -= 1.0 / deg;
            }
        }
        Eigen::VectorXd h = A.partialPivLu().solve(b);
        if (!h.allFinite()) throw std::invalid_argument("hitting_times: graph not connected");
        for (NodeId s = 0; s < n; ++s) {
            if (s == t) continue;
            const double v = h(row_of(s));
            table.h[static_cast<std::size_t>(s) * n + t] = v;
            if (v > table.max_hitting) table.max_hitting = v;
        }
    }
    return table;
}

double hitting_time_monte_carlo(const UndirectedMultigraph& m, NodeId s, NodeId t,
                                std::uint64_t walks, std::uint64_t seed) {
    const auto nbr = neighbor_lists(m);
    SplitMix64 rng(seed);
    std::uint64_t total = 0;
    for (std::uint64_t w = 0; w < walks; ++w) {
        NodeId cur = s;
        while (cur != t) {
            cur = nbr[cur][rng.below(nbr[cur].size())];
            ++total;
        }
    }
    return static_cast<double>(total) / static_cast<double>(walks);
}

double coupon_collector_expect(std::int64_t types) {
    if (types < 1) throw std::invalid_argument("coupon_collector_expect: types < 1");
    double harmonic = 0.0;
    for (std::int64_t i = 1; i <= types; ++i) harmonic += 1.0 / static_cast<double>(i);
    return static_cast<double>(types) * harmonic;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("loglog_slope: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        if (x <= 0 || y <= 0) throw std::invalid_argument("loglog_slope: nonpositive value");
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = static_cast<double>(points.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace popproto
