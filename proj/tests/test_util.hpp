#ifndef GRADEROUTE_TEST_UTIL_HPP
#define GRADEROUTE_TEST_UTIL_HPP

#include <cstdint>
#include <tuple>
#include <vector>

#include "graderoute/pso.hpp"
#include "graderoute/topology.hpp"

namespace graderoute::testutil {

struct LinkSpec {
    NodeId u;
    NodeId v;
    double bandwidth = 1.0;
    double capacity = 10.0;
};

// Single-region topology over n nodes with uniform default attributes.
inline Topology make_graph(std::uint32_t n, const std::vector<LinkSpec>& links,
                           double node_bandwidth = 5.0) {
    std::vector<RegionId> regions(n, 0);
    std::vector<NodeAttributes> attrs(n, {50.0, true, node_bandwidth});
    std::vector<Link> ls;
    ls.reserve(links.size());
    for (const LinkSpec& l : links) {
        ls.push_back({l.u, l.v, l.bandwidth, l.capacity});
    }
    return Topology(1, n, std::move(regions), std::move(attrs), std::move(ls));
}

// 0-1-2-...-(n-1)
inline Topology line_graph(std::uint32_t n, double bandwidth = 1.0,
                           double capacity = 10.0) {
    std::vector<LinkSpec> links;
    for (NodeId i = 0; i + 1 < n; ++i) {
        links.push_back({i, i + 1, bandwidth, capacity});
    }
    return make_graph(n, links);
}

inline PriorityVector priorities(std::vector<double> values) {
    return PriorityVector{std::move(values)};
}

// Re-statement of the decode admissibility rule, kept independent of the
// implementation for property checks.
inline bool window_ok(NodeId from, NodeId to, NodeId source, NodeId dest,
                      std::uint32_t window) {
    const auto delta = static_cast<std::int64_t>(to) - static_cast<std::int64_t>(from);
    const auto m = static_cast<std::int64_t>(window);
    return source > dest ? delta > -m : delta < m;
}

inline bool path_obeys_window(const Path& p, NodeId source, NodeId dest,
                              std::uint32_t window) {
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        if (!window_ok(p.nodes[i], p.nodes[i + 1], source, dest, window)) {
            return false;
        }
    }
    return true;
}

inline bool path_repeats_node(const Path& p) {
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < p.nodes.size(); ++j) {
            if (p.nodes[i] == p.nodes[j]) {
                return true;
            }
        }
    }
    return false;
}

} // namespace graderoute::testutil

#endif
