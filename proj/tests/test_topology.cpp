#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <sstream>

#include "graderoute/errors.hpp"
#include "graderoute/topology.hpp"
#include "test_util.hpp"

using namespace graderoute;
using testutil::make_graph;

namespace {

// Reachability restricted to one region's nodes and intra-region links.
bool region_connected(const Topology& t, RegionId r) {
    auto members = t.region_nodes(r);
    if (members.empty()) {
        return true;
    }
    std::vector<bool> seen(t.node_count(), false);
    std::deque<NodeId> queue{members.front()};
    seen[members.front()] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        for (const Neighbor& nb : t.neighbors(cur)) {
            if (!seen[nb.id] && t.region_of(nb.id) == r) {
                seen[nb.id] = true;
                ++reached;
                queue.push_back(nb.id);
            }
        }
    }
    return reached == members.size();
}

} // namespace

TEST_CASE("smallest generation: one node, no links") {
    TopologyParams p;
    p.region_count = 1;
    p.pnr = 1;
    const Topology t = generate_topology(p, 7);
    CHECK(t.node_count() == 1);
    CHECK(t.links().empty());
}

TEST_CASE("generation is deterministic and regions are connected") {
    TopologyParams p;
    p.region_count = 4;
    p.pnr = 5;
    p.intra_edge_prob = 0.4;
    p.inter_edges_per_region_pair = 2;
    const Topology a = generate_topology(p, 42);
    const Topology b = generate_topology(p, 42);
    CHECK(a.node_count() == 20);
    CHECK(a == b);
    for (RegionId r = 0; r < 4; ++r) {
        CHECK(region_connected(a, r));
    }
}

TEST_CASE("full intra probability gives cliques plus the inter links") {
    TopologyParams p;
    p.region_count = 2;
    p.pnr = 3;
    p.intra_edge_prob = 1.0;
    p.inter_edges_per_region_pair = 1;
    const Topology t = generate_topology(p, 1);
    CHECK(t.links().size() == 7);
    std::size_t intra0 = 0;
    std::size_t intra1 = 0;
    std::size_t inter = 0;
    for (const Link& l : t.links()) {
        if (t.region_of(l.u) != t.region_of(l.v)) {
            ++inter;
        } else if (t.region_of(l.u) == 0) {
            ++intra0;
        } else {
            ++intra1;
        }
    }
    CHECK(intra0 == 3);
    CHECK(intra1 == 3);
    CHECK(inter == 1);
}

TEST_CASE("generation rejects bad parameter ranges") {
    TopologyParams p;
    p.attrs.lifetime_min = 10.0;
    p.attrs.lifetime_max = 5.0;
    CHECK_THROWS_AS(generate_topology(p, 1), ParameterError);
    TopologyParams q;
    q.intra_edge_prob = 1.5;
    CHECK_THROWS_AS(generate_topology(q, 1), ParameterError);
}

TEST_CASE("generated topologies satisfy the structural invariants") {
    TopologyParams p;
    p.region_count = 3;
    p.pnr = 4;
    p.intra_edge_prob = 0.5;
    p.inter_edges_per_region_pair = 2;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Topology t = generate_topology(p, seed);
        REQUIRE(t.node_count() == p.region_count * p.pnr);
        for (const Link& l : t.links()) {
            REQUIRE(l.u != l.v);
            // symmetric adjacency: each endpoint lists the other
            bool uv = false;
            bool vu = false;
            for (const Neighbor& nb : t.neighbors(l.u)) {
                uv |= nb.id == l.v;
            }
            for (const Neighbor& nb : t.neighbors(l.v)) {
                vu |= nb.id == l.u;
            }
            REQUIRE(uv);
            REQUIRE(vu);
        }
    }
}

TEST_CASE("save/load round-trips the value and the bytes") {
    TopologyParams p;
    p.region_count = 2;
    p.pnr = 4;
    const Topology t = generate_topology(p, 99);

    std::ostringstream first;
    save_topology(t, first);
    std::istringstream in(first.str());
    const Topology loaded = load_topology(in);
    CHECK(loaded == t);

    std::ostringstream second;
    save_topology(loaded, second);
    CHECK(second.str() == first.str());
}

TEST_CASE("load reports self-loops with the line number") {
    std::istringstream in(
        "topology v1\n"
        "regions 1 pnr 2\n"
        "node 0 0 5 10 1\n"
        "node 1 0 5 10 1\n"
        "link 0 0 5 5\n");
    CHECK_THROWS_WITH_AS(load_topology(in), "self-loop at line 5", ValidationError);
}

TEST_CASE("load rejects a node count mismatch") {
    std::istringstream in(
        "topology v1\n"
        "regions 1 pnr 3\n"
        "node 0 0 5 10 1\n"
        "node 1 0 5 10 1\n");
    CHECK_THROWS_AS(load_topology(in), ValidationError);
}

TEST_CASE("load rejects duplicate links") {
    std::istringstream in(
        "topology v1\n"
        "regions 1 pnr 2\n"
        "node 0 0 5 10 1\n"
        "node 1 0 5 10 1\n"
        "link 0 1 5 5\n"
        "link 1 0 5 5\n");
    CHECK_THROWS_AS(load_topology(in), ValidationError);
}

TEST_CASE("load reports malformed lines with their number") {
    std::istringstream in(
        "topology v1\n"
        "regions 1 pnr 1\n"
        "node 0 0 5 ten 1\n");
    try {
        load_topology(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("in_degree counts incident links") {
    const Topology isolated = make_graph(1, {});
    CHECK(isolated.in_degree(0) == 0);

    const Topology star = make_graph(3, {{0, 1}, {0, 2}});
    CHECK(star.in_degree(0) == 2);
    CHECK(star.in_degree(1) == 1);

    const Topology clique = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(clique.in_degree(1) == 2);

    CHECK_THROWS_AS(star.in_degree(9), LookupError);
}

TEST_CASE("neighbors are ascending regardless of link insertion order") {
    const Topology t = make_graph(3, {{2, 1}, {1, 0}});
    auto nbs = t.neighbors(1);
    REQUIRE(nbs.size() == 2);
    CHECK(nbs[0].id == 0);
    CHECK(nbs[1].id == 2);
    CHECK(t.neighbors(0).size() == 1);
    CHECK_THROWS_AS(t.neighbors(5), LookupError);

    const Topology lone = make_graph(1, {});
    CHECK(lone.neighbors(0).empty());
}
