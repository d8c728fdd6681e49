#include "graderoute/topology.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "graderoute/errors.hpp"
#include "graderoute/rng.hpp"
#include "graderoute/text.hpp"

namespace graderoute {

namespace {

std::pair<NodeId, NodeId> ordered(NodeId u, NodeId v) {
    return u < v ? std::pair{u, v} : std::pair{v, u};
}

} // namespace

Topology::Topology(std::uint32_t region_count, std::uint32_t pnr,
                   std::vector<RegionId> node_regions,
                   std::vector<NodeAttributes> attributes,
                   std::vector<Link> links)
    : region_count_(region_count),
      pnr_(pnr),
      regions_(std::move(node_regions)),
      attributes_(std::move(attributes)),
      links_(std::move(links)) {
    if (region_count_ == 0 || pnr_ == 0) {
        throw ParameterError("region_count and pnr must be positive");
    }
    const std::uint64_t expected =
        static_cast<std::uint64_t>(region_count_) * pnr_;
    if (regions_.size() != expected || attributes_.size() != expected) {
        throw ValidationError("node count must equal pnr x region_count");
    }

    region_members_.resize(region_count_);
    for (NodeId n = 0; n < regions_.size(); ++n) {
        if (regions_[n] >= region_count_) {
            throw ValidationError("node " + std::to_string(n) +
                                  " references unknown region " +
                                  std::to_string(regions_[n]));
        }
        region_members_[regions_[n]].push_back(n);
    }
    for (RegionId r = 0; r < region_count_; ++r) {
        if (region_members_[r].size() != pnr_) {
            throw ValidationError("region " + std::to_string(r) + " holds " +
                                  std::to_string(region_members_[r].size()) +
                                  " nodes, expected " + std::to_string(pnr_));
        }
    }

    for (NodeId n = 0; n < attributes_.size(); ++n) {
        if (attributes_[n].bandwidth <= 0.0) {
            throw ValidationError("node " + std::to_string(n) +
                                  " bandwidth must be positive");
        }
        if (attributes_[n].network_lifetime < 0.0) {
            throw ValidationError("node " + std::to_string(n) +
                                  " lifetime must be non-negative");
        }
    }

    std::set<std::pair<NodeId, NodeId>> seen;
    adjacency_.resize(regions_.size());
    for (LinkIndex i = 0; i < links_.size(); ++i) {
        Link& l = links_[i];
        if (l.u >= regions_.size() || l.v >= regions_.size()) {
            throw ValidationError("link " + std::to_string(i) +
                                  " references unknown node");
        }
        if (l.u == l.v) {
            throw ValidationError("self-loop on node " + std::to_string(l.u));
        }
        if (l.bandwidth <= 0.0 || l.capacity <= 0.0) {
            throw ValidationError("link " + std::to_string(i) +
                                  " bandwidth and capacity must be positive");
        }
        if (l.u > l.v) {
            std::swap(l.u, l.v);
        }
        if (!seen.insert({l.u, l.v}).second) {
            throw ValidationError("duplicate link " + std::to_string(l.u) + "-" +
                                  std::to_string(l.v));
        }
        adjacency_[l.u].push_back({l.v, i});
        adjacency_[l.v].push_back({l.u, i});
    }
    for (auto& nbs : adjacency_) {
        std::sort(nbs.begin(), nbs.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    }
}

std::span<const Neighbor> Topology::neighbors(NodeId n) const {
    require_node(n);
    return adjacency_[n];
}

RegionId Topology::region_of(NodeId n) const {
    require_node(n);
    return regions_[n];
}

std::span<const NodeId> Topology::region_nodes(RegionId r) const {
    if (r >= region_count_) {
        throw LookupError("unknown region " + std::to_string(r));
    }
    return region_members_[r];
}

const NodeAttributes& Topology::attributes(NodeId n) const {
    require_node(n);
    return attributes_[n];
}

std::uint32_t Topology::in_degree(NodeId n) const {
    require_node(n);
    return static_cast<std::uint32_t>(adjacency_[n].size());
}

bool Topology::operator==(const Topology& other) const {
    return region_count_ == other.region_count_ && pnr_ == other.pnr_ &&
           regions_ == other.regions_ && attributes_ == other.attributes_ &&
           links_ == other.links_;
}

void Topology::require_node(NodeId n) const {
    if (n >= regions_.size()) {
        throw LookupError("unknown node " + std::to_string(n));
    }
}

Topology generate_topology(const TopologyParams& params, std::uint64_t seed) {
    const AttributeRanges& ar = params.attrs;
    if (params.region_count == 0 || params.pnr == 0) {
        throw ParameterError("region_count and pnr must be positive");
    }
    if (params.intra_edge_prob < 0.0 || params.intra_edge_prob > 1.0) {
        throw ParameterError("intra_edge_prob must lie in [0,1]");
    }
    if (ar.lifetime_min > ar.lifetime_max || ar.bandwidth_min > ar.bandwidth_max ||
        ar.capacity_min > ar.capacity_max) {
        throw ParameterError("attribute range has min > max");
    }
    if (ar.bandwidth_min <= 0.0 || ar.capacity_min <= 0.0 || ar.lifetime_min < 0.0) {
        throw ParameterError("attribute range lower bound out of domain");
    }
    if (ar.resource_probability < 0.0 || ar.resource_probability > 1.0) {
        throw ParameterError("resource_probability must lie in [0,1]");
    }

    Rng rng(seed);
    const std::uint32_t n = params.region_count * params.pnr;

    std::vector<RegionId> regions(n);
    std::vector<NodeAttributes> attrs(n);
    const auto life_lo = static_cast<std::uint64_t>(ar.lifetime_min);
    const auto life_hi = static_cast<std::uint64_t>(ar.lifetime_max);
    for (NodeId i = 0; i < n; ++i) {
        regions[i] = i / params.pnr;
        // Lifetimes are whole units; a range starting at 0 yields dead nodes.
        attrs[i].network_lifetime =
            static_cast<double>(life_lo + rng.below(life_hi - life_lo + 1));
        attrs[i].bandwidth = rng.uniform(ar.bandwidth_min, ar.bandwidth_max);
        attrs[i].resource_allocated = rng.bernoulli(ar.resource_probability);
    }

    std::vector<Link> links;
    std::set<std::pair<NodeId, NodeId>> present;
    auto add_link = [&](NodeId u, NodeId v) {
        auto key = ordered(u, v);
        present.insert(key);
        links.push_back({key.first, key.second,
                         rng.uniform(ar.bandwidth_min, ar.bandwidth_max),
                         rng.uniform(ar.capacity_min, ar.capacity_max)});
    };

    // Random spanning path per region (a degree-bounded spanning tree),
    // then Bernoulli edges over the remaining intra-region pairs.
    for (RegionId r = 0; r < params.region_count; ++r) {
        const NodeId base = r * params.pnr;
        std::vector<NodeId> perm(params.pnr);
        std::iota(perm.begin(), perm.end(), base);
        rng.shuffle(perm);
        for (std::uint32_t i = 1; i < params.pnr; ++i) {
            add_link(perm[i], perm[i - 1]);
        }
    }
    for (RegionId r = 0; r < params.region_count; ++r) {
        const NodeId base = r * params.pnr;
        for (NodeId a = base; a < base + params.pnr; ++a) {
            for (NodeId b = a + 1; b < base + params.pnr; ++b) {
                if (!present.count({a, b}) && rng.bernoulli(params.intra_edge_prob)) {
                    add_link(a, b);
                }
            }
        }
    }

    // Inter-region links: sample cross pairs without replacement.
    for (RegionId r1 = 0; r1 < params.region_count; ++r1) {
        for (RegionId r2 = r1 + 1; r2 < params.region_count; ++r2) {
            std::vector<std::pair<NodeId, NodeId>> cross;
            cross.reserve(static_cast<std::size_t>(params.pnr) * params.pnr);
            for (NodeId u = r1 * params.pnr; u < (r1 + 1) * params.pnr; ++u) {
                for (NodeId v = r2 * params.pnr; v < (r2 + 1) * params.pnr; ++v) {
                    cross.emplace_back(u, v);
                }
            }
            rng.shuffle(cross);
            const std::size_t take = std::min<std::size_t>(
                params.inter_edges_per_region_pair, cross.size());
            for (std::size_t i = 0; i < take; ++i) {
                add_link(cross[i].first, cross[i].second);
            }
        }
    }

    return Topology(params.region_count, params.pnr, std::move(regions),
                    std::move(attrs), std::move(links));
}

void save_topology(const Topology& t, std::ostream& out) {
    out << "topology v1\n";
    out << "regions " << t.region_count() << " pnr " << t.pnr() << "\n";
    for (NodeId n = 0; n < t.node_count(); ++n) {
        const NodeAttributes& a = t.attributes(n);
        out << "node " << n << " " << t.region_of(n) << " "
            << format_double(a.bandwidth) << " "
            << format_double(a.network_lifetime) << " "
            << (a.resource_allocated ? 1 : 0) << "\n";
    }
    for (const Link& l : t.links()) {
        out << "link " << l.u << " " << l.v << " " << format_double(l.bandwidth)
            << " " << format_double(l.capacity) << "\n";
    }
}

void save_topology(const Topology& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    save_topology(t, out);
    if (!out.flush()) {
        throw IoError("write failed for " + path.string());
    }
}

Topology load_topology(std::istream& in) {
    LineScanner scanner(in);
    if (!scanner.next() || scanner.line() != "topology v1") {
        throw ParseError("expected header 'topology v1'", scanner.line_number());
    }
    if (!scanner.next()) {
        throw ParseError("missing 'regions' line", scanner.line_number());
    }
    auto header = split_ws(scanner.line());
    std::uint32_t region_count = 0;
    std::uint32_t pnr = 0;
    if (header.size() != 4 || header[0] != "regions" || header[2] != "pnr" ||
        !parse_u32(header[1], region_count) || !parse_u32(header[3], pnr)) {
        throw ParseError("malformed regions line", scanner.line_number());
    }
    if (region_count == 0 || pnr == 0) {
        throw ValidationError("regions and pnr must be positive");
    }

    const std::uint32_t n = region_count * pnr;
    std::vector<RegionId> regions(n, 0);
    std::vector<NodeAttributes> attrs(n);
    std::vector<bool> seen_node(n, false);
    std::uint32_t node_lines = 0;
    std::vector<Link> links;
    std::set<std::pair<NodeId, NodeId>> seen_links;

    while (scanner.next()) {
        auto tok = split_ws(scanner.line());
        const int ln = scanner.line_number();
        if (tok[0] == "node") {
            NodeId id = 0;
            RegionId region = 0;
            NodeAttributes a;
            std::uint32_t resource = 0;
            if (tok.size() != 6 || !parse_u32(tok[1], id) ||
                !parse_u32(tok[2], region) || !parse_double(tok[3], a.bandwidth) ||
                !parse_double(tok[4], a.network_lifetime) ||
                !parse_u32(tok[5], resource) || resource > 1) {
                throw ParseError("malformed node line", ln);
            }
            if (id >= n) {
                throw ValidationError("node id " + std::to_string(id) +
                                      " out of range at line " + std::to_string(ln));
            }
            if (seen_node[id]) {
                throw ValidationError("duplicate node " + std::to_string(id) +
                                      " at line " + std::to_string(ln));
            }
            seen_node[id] = true;
            ++node_lines;
            a.resource_allocated = resource == 1;
            regions[id] = region;
            attrs[id] = a;
        } else if (tok[0] == "link") {
            Link l;
            if (tok.size() != 5 || !parse_u32(tok[1], l.u) || !parse_u32(tok[2], l.v) ||
                !parse_double(tok[3], l.bandwidth) || !parse_double(tok[4], l.capacity)) {
                throw ParseError("malformed link line", ln);
            }
            if (l.u == l.v) {
                throw ValidationError("self-loop at line " + std::to_string(ln));
            }
            if (l.u >= n || l.v >= n) {
                throw ValidationError("link references unknown node at line " +
                                      std::to_string(ln));
            }
            if (!seen_links.insert(ordered(l.u, l.v)).second) {
                throw ValidationError("duplicate link at line " + std::to_string(ln));
            }
            links.push_back(l);
        } else {
            throw ParseError("unknown directive '" + std::string(tok[0]) + "'", ln);
        }
    }

    if (node_lines != n) {
        throw ValidationError("declared " + std::to_string(n) + " nodes but found " +
                              std::to_string(node_lines) + " node lines");
    }
    return Topology(region_count, pnr, std::move(regions), std::move(attrs),
                    std::move(links));
}

Topology load_topology(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return load_topology(in);
}

} // namespace graderoute
