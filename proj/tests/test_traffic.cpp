#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "graderoute/errors.hpp"
#include "graderoute/traffic.hpp"
#include "test_util.hpp"

using namespace graderoute;
using testutil::make_graph;

namespace {

LinkIndex link_index(const Topology& t, NodeId u, NodeId v) {
    auto idx = t.find_link(u, v);
    REQUIRE(idx.has_value());
    return *idx;
}

} // namespace

TEST_CASE("zero traffic gives zero flows") {
    const Topology t = testutil::line_graph(3);
    const auto flows = compute_flows(t, TrafficMatrix(3));
    for (double f : flows) {
        CHECK(f == 0.0);
    }
}

TEST_CASE("a line routes the demand over both links") {
    const Topology t = testutil::line_graph(3);
    TrafficMatrix gamma(3);
    gamma.set(0, 2, 3.0);
    const auto flows = compute_flows(t, gamma);
    CHECK(flows[link_index(t, 0, 1)] == 3.0);
    CHECK(flows[link_index(t, 1, 2)] == 3.0);
}

TEST_CASE("min-hop routing prefers the direct link on a triangle") {
    const Topology t = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    TrafficMatrix gamma(3);
    gamma.set(0, 2, 2.0);
    const auto flows = compute_flows(t, gamma);
    CHECK(flows[link_index(t, 0, 2)] == 2.0);
    CHECK(flows[link_index(t, 0, 1)] == 0.0);
    CHECK(flows[link_index(t, 1, 2)] == 0.0);
}

TEST_CASE("min-hop ties break to the lexicographically smallest path") {
    // two 2-hop routes 0-1-3 and 0-2-3
    const Topology t = make_graph(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
    TrafficMatrix gamma(4);
    gamma.set(0, 3, 1.0);
    const auto flows = compute_flows(t, gamma);
    CHECK(flows[link_index(t, 0, 1)] == 1.0);
    CHECK(flows[link_index(t, 1, 3)] == 1.0);
    CHECK(flows[link_index(t, 0, 2)] == 0.0);
}

TEST_CASE("disconnected demand pairs raise a routing error") {
    const Topology t = make_graph(3, {{0, 1}});
    TrafficMatrix gamma(3);
    gamma.set(0, 2, 1.0);
    CHECK_THROWS_WITH_AS(compute_flows(t, gamma), "no route for demand 0 -> 2",
                         RoutingError);
}

TEST_CASE("flow conservation holds on random instances") {
    TopologyParams p;
    p.region_count = 2;
    p.pnr = 4;
    p.intra_edge_prob = 0.6;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Topology t = generate_topology(p, seed);
        Rng rng(seed * 31 + 7);
        TrafficMatrix gamma(t.node_count());
        double expected = 0.0;
        std::vector<std::pair<NodeId, NodeId>> demands;
        for (NodeId j = 0; j < t.node_count(); ++j) {
            for (NodeId k = 0; k < t.node_count(); ++k) {
                if (j != k && rng.bernoulli(0.2)) {
                    gamma.set(j, k, rng.uniform(0.1, 2.0));
                    demands.emplace_back(j, k);
                }
            }
        }
        const auto flows = compute_flows(t, gamma);
        // hop count of each routed demand via distances
        for (auto [j, k] : demands) {
            TrafficMatrix single(t.node_count());
            single.set(j, k, gamma.at(j, k));
            const auto fs = compute_flows(t, single);
            std::size_t hops = 0;
            for (double f : fs) {
                hops += f > 0.0 ? 1 : 0;
            }
            expected += gamma.at(j, k) * static_cast<double>(hops);
        }
        double total = 0.0;
        for (double f : flows) {
            total += f;
        }
        REQUIRE(total == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("total delay matches hand-computed values") {
    const Topology single = testutil::make_graph(2, {{0, 1, 1.0, 10.0}});
    std::vector<double> flows{5.0};
    CHECK(total_delay(flows, 1.0, single) == doctest::Approx(1.0).epsilon(1e-12));

    const Topology two = testutil::make_graph(3, {{0, 1, 1.0, 4.0}, {1, 2, 1.0, 6.0}});
    std::vector<double> flows2{2.0, 3.0};
    CHECK(total_delay(flows2, 1.0, two) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("saturated links raise a saturation error naming the link") {
    const Topology t = testutil::make_graph(2, {{0, 1, 1.0, 10.0}});
    std::vector<double> flows{10.0};
    try {
        total_delay(flows, 1.0, t);
        FAIL("expected SaturationError");
    } catch (const SaturationError& e) {
        CHECK(e.link_index() == 0);
        CHECK(std::string(e.what()).find("0-1") != std::string::npos);
    }
}

TEST_CASE("delay is zero iff flows are zero and grows with load") {
    const Topology t = testutil::line_graph(3);
    std::vector<double> zero{0.0, 0.0};
    CHECK(total_delay(zero, 1.0, t) == 0.0);
    std::vector<double> low{1.0, 0.0};
    std::vector<double> high{2.0, 0.0};
    CHECK(total_delay(low, 1.0, t) > 0.0);
    CHECK(total_delay(high, 1.0, t) > total_delay(low, 1.0, t));
}

TEST_CASE("derive_dynamics flags congestion, delay and density") {
    const Topology t = testutil::make_graph(2, {{0, 1, 1.0, 10.0}});

    TrafficModel quiet{TrafficMatrix(2), 1.0, {0.0}};
    auto dyn = derive_dynamics(t, quiet, 1.0, 0.8);
    CHECK_FALSE(dyn[0].delay_present);
    CHECK_FALSE(dyn[0].congestion_present);
    CHECK(dyn[0].density == 1);

    TrafficModel busy{TrafficMatrix(2), 1.0, {9.0}};
    dyn = derive_dynamics(t, busy, 100.0, 0.8);
    CHECK(dyn[0].congestion_present); // util 0.9 > 0.8
    CHECK(dyn[1].congestion_present);
    CHECK_FALSE(dyn[0].delay_present); // 9/(10-9) = 9 < 100

    dyn = derive_dynamics(t, busy, 1.0, 0.95);
    CHECK(dyn[0].delay_present); // 9 > 1
    CHECK_FALSE(dyn[0].congestion_present);

    TrafficModel saturated{TrafficMatrix(2), 1.0, {10.0}};
    dyn = derive_dynamics(t, saturated, 1.0, 0.8);
    CHECK(dyn[0].delay_present);
    CHECK(dyn[0].congestion_present);

    const Topology star = testutil::make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    TrafficModel none{TrafficMatrix(5), 1.0, {0.0, 0.0, 0.0, 0.0}};
    dyn = derive_dynamics(star, none, 1.0, 0.8);
    CHECK(dyn[0].density == 4);
}

TEST_CASE("traffic files round-trip and reject malformed input") {
    TrafficMatrix gamma(4);
    gamma.set(0, 3, 1.25);
    gamma.set(2, 1, 0.5);

    std::ostringstream out;
    save_traffic(gamma, out);
    std::istringstream in(out.str());
    const TrafficMatrix loaded = load_traffic(in, 4);
    CHECK(loaded == gamma);

    std::istringstream bad("traffic v1\ndemand 0 0 1.0\n");
    CHECK_THROWS_AS(load_traffic(bad, 4), ValidationError);
    std::istringstream garbled("traffic v1\ndemand 0 x 1.0\n");
    CHECK_THROWS_AS(load_traffic(garbled, 4), ParseError);
}
