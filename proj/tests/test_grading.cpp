#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "graderoute/errors.hpp"
#include "graderoute/grading.hpp"
#include "test_util.hpp"

using namespace graderoute;

namespace {

NodeAttributes attrs(double lifetime, bool resource) {
    return {lifetime, resource, 5.0};
}

NodeDynamics dyn(bool delay, bool congestion, std::uint32_t density) {
    return {delay, congestion, density};
}

// The nested rule chain, transcribed independently of the implementation.
int reference_priority(bool nl, std::uint32_t nd, bool tc, bool ra, bool delay) {
    if (nl) {
        if (nd < 5) {
            if (!tc) {
                if (ra) {
                    if (!delay) {
                        return 1;
                    }
                    return 2;
                }
                return 3;
            }
            return 4;
        }
        return 5;
    }
    return 6;
}

} // namespace

TEST_CASE("priority examples from the rule chain") {
    CHECK(assign_priority(attrs(10, true), dyn(false, false, 3)).value == 1);
    CHECK(assign_priority(attrs(0, true), dyn(true, true, 9)).value == 6);
    CHECK(assign_priority(attrs(10, true), dyn(false, false, 7)).value == 5);
    CHECK(assign_priority(attrs(10, true), dyn(false, true, 2)).value == 4);
    CHECK(assign_priority(attrs(10, false), dyn(false, false, 2)).value == 3);
    CHECK(assign_priority(attrs(10, true), dyn(true, false, 2)).value == 2);
}

TEST_CASE("priority assignment is total and matches the reference nesting") {
    for (int nl = 0; nl < 2; ++nl) {
        for (int tc = 0; tc < 2; ++tc) {
            for (int ra = 0; ra < 2; ++ra) {
                for (int delay = 0; delay < 2; ++delay) {
                    for (std::uint32_t nd = 0; nd <= 10; ++nd) {
                        const Priority p = assign_priority(
                            attrs(nl ? 42.0 : 0.0, ra != 0),
                            dyn(delay != 0, tc != 0, nd));
                        REQUIRE(p.value >= 1);
                        REQUIRE(p.value <= 6);
                        REQUIRE(p.value ==
                                reference_priority(nl != 0, nd, tc != 0, ra != 0,
                                                   delay != 0));
                    }
                }
            }
        }
    }
}

TEST_CASE("grade mapping is the fixed bridge and injective") {
    CHECK(priority_to_grade({1}).value == 0);
    CHECK(priority_to_grade({2}).value == 1);
    CHECK(priority_to_grade({3}).value == 2);
    CHECK(priority_to_grade({4}).value == 3);
    CHECK(priority_to_grade({5}).value == -2);
    CHECK(priority_to_grade({6}).value == -3);
    CHECK_THROWS_AS(priority_to_grade({7}), ParameterError);

    std::set<int> seen;
    for (int p = 1; p <= 6; ++p) {
        const Grade g = priority_to_grade({p});
        CHECK(seen.insert(g.value).second);
        if (p <= 3) {
            CHECK(g.value >= 0);
            CHECK(g.value <= 2);
        }
        if (p >= 5) {
            CHECK(g.value < 0);
        }
    }
}

namespace {

Topology five_node_region(std::vector<double> bandwidths) {
    std::vector<RegionId> regions(5, 0);
    std::vector<NodeAttributes> as;
    for (double b : bandwidths) {
        as.push_back({50.0, true, b});
    }
    // ring so everything is connected
    std::vector<Link> links{{0, 1, 1, 10}, {1, 2, 1, 10}, {2, 3, 1, 10},
                            {3, 4, 1, 10}, {0, 4, 1, 10}};
    return Topology(1, 5, std::move(regions), std::move(as), std::move(links));
}

std::vector<Grade> grades_of(std::vector<int> values) {
    std::vector<Grade> gs;
    for (int v : values) {
        gs.push_back({v});
    }
    return gs;
}

} // namespace

TEST_CASE("all-optimal grades keep every node") {
    const Topology t = five_node_region({5, 5, 5, 5, 5});
    const auto sub = level1_select(t, grades_of({0, 0, 0, 0, 0}), 0, 1);
    CHECK(sub.kept_count() == 5);
    CHECK_FALSE(sub.widened());
    CHECK_FALSE(sub.disconnected());
}

TEST_CASE("out-of-band nodes drop unless ranked top-3") {
    const Topology t = five_node_region({5, 5, 5, 5, 5});
    // grades 0,1,2 rank top-3 by |grade|; +3 is fourth, -3 fifth
    const auto sub = level1_select(t, grades_of({0, 1, 2, 3, -3}), 0, 1);
    CHECK(sub.kept_count() == 3);
    CHECK(sub.is_kept(0));
    CHECK(sub.is_kept(1));
    CHECK(sub.is_kept(2));
    CHECK_FALSE(sub.is_kept(3));
    CHECK_FALSE(sub.is_kept(4));
    CHECK(sub.kept_count() < t.node_count());
}

TEST_CASE("top-3 ranking breaks grade ties by bandwidth then id") {
    const Topology t = five_node_region({1, 9, 9, 2, 9});
    // all grades equal: bandwidth decides, then id
    const auto sub = level1_select(t, grades_of({3, 3, 3, 3, 3}), 0, 3);
    CHECK(sub.is_top3(1));
    CHECK(sub.is_top3(2));
    CHECK(sub.is_top3(4));
    CHECK_FALSE(sub.is_top3(0));
    CHECK_FALSE(sub.is_top3(3));
    // endpoints survive anyway
    CHECK(sub.is_kept(0));
    CHECK(sub.is_kept(3));
    CHECK(sub.reason(0) == KeepReason::endpoint);
}

TEST_CASE("induced links only join kept nodes and endpoints always stay") {
    const Topology t = five_node_region({5, 5, 5, 5, 5});
    const auto sub = level1_select(t, grades_of({0, -3, 0, 0, -3}), 0, 2);
    CHECK(sub.is_kept(0));
    CHECK(sub.is_kept(2));
    for (LinkIndex li : sub.induced_links()) {
        const Link& l = sub.link(li);
        CHECK(sub.is_kept(l.u));
        CHECK(sub.is_kept(l.v));
    }
    // non-kept nodes expose no neighbors
    if (!sub.is_kept(1)) {
        CHECK(sub.neighbors(1).empty());
    }
}

TEST_CASE("verify_connectivity sees exactly the induced subgraph") {
    const Topology t = five_node_region({5, 5, 5, 5, 5});
    const auto whole = level1_select(t, grades_of({0, 0, 0, 0, 0}), 0, 3);
    CHECK(verify_connectivity(whole, 0, 3));
    CHECK(verify_connectivity(whole, 2, 2));
}

TEST_CASE("severing the only bridge is detected and widening rescues it") {
    // two regions of 4 joined by the single bridge 3-4
    std::vector<RegionId> regions2{0, 0, 0, 0, 1, 1, 1, 1};
    std::vector<NodeAttributes> as2(8, {50.0, true, 5.0});
    std::vector<Link> links2{{0, 1, 1, 10}, {1, 2, 1, 10}, {0, 2, 1, 10},
                             {0, 3, 1, 10}, {4, 5, 1, 10}, {5, 6, 1, 10},
                             {4, 6, 1, 10}, {4, 7, 1, 10}, {3, 4, 1, 10}};
    const Topology t2(2, 4, std::move(regions2), std::move(as2), std::move(links2));
    // node 3 bridges the regions but grades +3 behind three grade-0 peers
    const auto grades = grades_of({0, 0, 0, 3, 0, 0, 0, 0});
    const auto sub = level1_select(t2, grades, 0, 6);
    CHECK(sub.widened());
    CHECK_FALSE(sub.disconnected());
    CHECK(sub.is_kept(3));
    CHECK(sub.reason(3) == KeepReason::fallback);
    CHECK(verify_connectivity(sub, 0, 6));

    // a -3 bridge cannot be rescued: still disconnected after widening
    const auto dead_bridge = grades_of({0, 0, 0, -3, 0, 0, 0, 0});
    const auto cut = level1_select(t2, dead_bridge, 0, 6);
    CHECK(cut.widened());
    CHECK(cut.disconnected());
    CHECK_FALSE(verify_connectivity(cut, 0, 6));
}

TEST_CASE("grade report lists every node with kept flag and reason") {
    const Topology t = five_node_region({5, 5, 5, 5, 5});
    std::vector<Priority> priorities{{1}, {2}, {3}, {4}, {6}};
    const auto grades = to_grades(priorities);
    const auto sub = level1_select(t, grades, 0, 1);
    std::ostringstream out;
    write_grade_report(t, priorities, sub, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "node,region,priority,grade,kept,reason");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == 5);
    CHECK(out.str().find("0,0,1,0,1,") != std::string::npos);
}

TEST_CASE("selection rejects unknown endpoints and short grade vectors") {
    const Topology t = five_node_region({5, 5, 5, 5, 5});
    CHECK_THROWS_AS(level1_select(t, grades_of({0, 0, 0, 0, 0}), 0, 9), LookupError);
    CHECK_THROWS_AS(level1_select(t, grades_of({0, 0}), 0, 1), ParameterError);
}
