#ifndef GRADEROUTE_GRADING_HPP
#define GRADEROUTE_GRADING_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "graderoute/topology.hpp"
#include "graderoute/traffic.hpp"

namespace graderoute {

// Rule-chain class, 1 (best) .. 6 (dead).
struct Priority {
    int value = 1;
    bool operator==(const Priority&) const = default;
};

// Node quality on the -3..+3 scale; 0 optimal, negatives unusable.
struct Grade {
    int value = 0;
    bool operator==(const Grade&) const = default;
};

// Nested rule chain over the node observables:
//   no lifetime -> 6; density >= 5 -> 5; congestion -> 4;
//   no resource -> 3; delay -> 2; otherwise 1.
Priority assign_priority(const NodeAttributes& attrs, const NodeDynamics& dyn);

// Fixed bridge between the two scales:
//   1 -> 0, 2 -> +1, 3 -> +2, 4 -> +3, 5 -> -2, 6 -> -3.
Grade priority_to_grade(Priority p);

enum class KeepReason { top3, in_range, endpoint, fallback };
std::string_view keep_reason_name(KeepReason r);

// Node-filtered view of a topology. Non-kept nodes stay addressable (the
// priority vector keeps one slot per topology node) but expose no links.
class GradedSubgraph : public Graph {
public:
    GradedSubgraph(const Topology& base, std::vector<bool> kept,
                   std::vector<KeepReason> reasons, std::vector<bool> top3,
                   bool widened, bool disconnected);

    std::uint32_t node_count() const override { return base_->node_count(); }
    std::span<const Neighbor> neighbors(NodeId n) const override;
    const Link& link(LinkIndex index) const override { return base_->link(index); }

    const Topology& base() const { return *base_; }
    bool is_kept(NodeId n) const { return kept_[n]; }
    bool is_top3(NodeId n) const { return top3_[n]; }
    KeepReason reason(NodeId n) const { return reasons_[n]; }
    std::uint32_t kept_count() const { return kept_count_; }
    const std::vector<LinkIndex>& induced_links() const { return induced_links_; }
    bool widened() const { return widened_; }
    bool disconnected() const { return disconnected_; }

private:
    const Topology* base_;
    std::vector<bool> kept_;
    std::vector<KeepReason> reasons_;   // meaningful for kept nodes only
    std::vector<bool> top3_;
    std::vector<LinkIndex> induced_links_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::uint32_t kept_count_ = 0;
    bool widened_ = false;
    bool disconnected_ = false;
};

// Level-1 selection: keep the endpoints, every node graded in [0,+2], and
// each region's top three nodes ranked by (|grade| asc, bandwidth desc,
// id asc). If source and destination end up disconnected, widen the grade
// band once to [-2,+3]; if that still fails the result is flagged
// disconnected.
GradedSubgraph level1_select(const Topology& t, std::span<const Grade> grades,
                             NodeId source, NodeId dest);

// True when dest is reachable from source inside the subgraph.
bool verify_connectivity(const GradedSubgraph& g, NodeId source, NodeId dest);

// Whole-topology conveniences.
std::vector<Priority> assign_priorities(const Topology& t,
                                        std::span<const NodeDynamics> dynamics);
std::vector<Grade> to_grades(std::span<const Priority> priorities);

// CSV report: node,region,priority,grade,kept,reason
void write_grade_report(const Topology& t, std::span<const Priority> priorities,
                        const GradedSubgraph& sub, std::ostream& out);

} // namespace graderoute

#endif
