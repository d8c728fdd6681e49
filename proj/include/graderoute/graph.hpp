#ifndef GRADEROUTE_GRAPH_HPP
#define GRADEROUTE_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>

namespace graderoute {

using NodeId = std::uint32_t;
using RegionId = std::uint32_t;
using LinkIndex = std::uint32_t;

// Undirected link. `bandwidth` is the quantity the path fitness ratio reads;
// `capacity` (scaled by the service rate) bounds the sustainable message flow.
struct Link {
    NodeId u = 0;
    NodeId v = 0;
    double bandwidth = 0.0;
    double capacity = 0.0;

    NodeId other(NodeId n) const { return n == u ? v : u; }
    bool operator==(const Link&) const = default;
};

struct Neighbor {
    NodeId id = 0;
    LinkIndex link = 0;
};

// Read-only view of a routable graph. Implemented by Topology (the full
// network) and GradedSubgraph (the node-filtered network); path decoding,
// fitness scoring and the brute-force oracle run against either.
//
// node_count() always reports the underlying topology's node count, so
// per-node vectors (priority vectors, grades) keep one slot per node even
// when a view hides some of them. Hidden nodes simply expose no neighbors.
class Graph {
public:
    virtual ~Graph() = default;

    virtual std::uint32_t node_count() const = 0;

    // Ascending by neighbor id; the fixed order is what makes every
    // downstream tie-break deterministic.
    virtual std::span<const Neighbor> neighbors(NodeId n) const = 0;

    virtual const Link& link(LinkIndex index) const = 0;

    std::optional<LinkIndex> find_link(NodeId u, NodeId v) const {
        for (const Neighbor& nb : neighbors(u)) {
            if (nb.id == v) {
                return nb.link;
            }
            if (nb.id > v) {
                break;
            }
        }
        return std::nullopt;
    }
};

} // namespace graderoute

#endif
