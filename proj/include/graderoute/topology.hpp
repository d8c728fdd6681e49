#ifndef GRADEROUTE_TOPOLOGY_HPP
#define GRADEROUTE_TOPOLOGY_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graderoute/graph.hpp"

namespace graderoute {

// Static per-node inputs. Lifetime 0 marks a dead node.
struct NodeAttributes {
    double network_lifetime = 0.0;
    bool resource_allocated = false;
    double bandwidth = 0.0;

    bool operator==(const NodeAttributes&) const = default;
};

// Region-partitioned undirected network. Nodes are dense 0..N-1, every
// region holds exactly pnr nodes, links are unique unordered pairs with no
// self-loops. Immutable once constructed; safe to share across threads.
class Topology : public Graph {
public:
    Topology(std::uint32_t region_count, std::uint32_t pnr,
             std::vector<RegionId> node_regions,
             std::vector<NodeAttributes> attributes,
             std::vector<Link> links);

    std::uint32_t node_count() const override {
        return static_cast<std::uint32_t>(regions_.size());
    }
    std::span<const Neighbor> neighbors(NodeId n) const override;
    const Link& link(LinkIndex index) const override { return links_[index]; }

    std::uint32_t region_count() const { return region_count_; }
    std::uint32_t pnr() const { return pnr_; }
    RegionId region_of(NodeId n) const;
    std::span<const NodeId> region_nodes(RegionId r) const;
    const NodeAttributes& attributes(NodeId n) const;
    const std::vector<Link>& links() const { return links_; }

    // Undirected degree; the node-density observable.
    std::uint32_t in_degree(NodeId n) const;

    bool operator==(const Topology& other) const;

private:
    void require_node(NodeId n) const;

    std::uint32_t region_count_ = 0;
    std::uint32_t pnr_ = 0;
    std::vector<RegionId> regions_;
    std::vector<NodeAttributes> attributes_;
    std::vector<Link> links_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<std::vector<NodeId>> region_members_;
};

// Value ranges for generated attributes. Node bandwidth and link bandwidth
// share one range; capacity applies to links only. Lifetimes are drawn in
// whole units, so a range starting at 0 produces some dead nodes.
struct AttributeRanges {
    double lifetime_min = 0.0;
    double lifetime_max = 8.0;
    double bandwidth_min = 2.0;
    double bandwidth_max = 10.0;
    double capacity_min = 5.0;
    double capacity_max = 50.0;
    double resource_probability = 0.8;
};

struct TopologyParams {
    std::uint32_t region_count = 4;
    std::uint32_t pnr = 8;
    double intra_edge_prob = 0.35;
    std::uint32_t inter_edges_per_region_pair = 2;
    AttributeRanges attrs;
};

// Seeded random region topology. Every region gets a random spanning tree
// before probabilistic intra-region edges, so each region's induced subgraph
// is connected; inter-region links are sampled without replacement from the
// cross pairs of each region pair. Same params + seed reproduce the result
// bit for bit.
Topology generate_topology(const TopologyParams& params, std::uint64_t seed);

// Line format:
//   topology v1
//   regions <R> pnr <P>
//   node <id> <region> <bandwidth> <lifetime> <resource:0|1>
//   link <u> <v> <bandwidth> <capacity>
// '#' starts a comment. save-then-load reproduces the exact Topology value;
// saving it again reproduces the file byte for byte.
void save_topology(const Topology& t, std::ostream& out);
void save_topology(const Topology& t, const std::filesystem::path& path);
Topology load_topology(std::istream& in);
Topology load_topology(const std::filesystem::path& path);

} // namespace graderoute

#endif
