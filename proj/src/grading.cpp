#include "graderoute/grading.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <utility>

#include "graderoute/errors.hpp"

namespace graderoute {

Priority assign_priority(const NodeAttributes& attrs, const NodeDynamics& dyn) {
    if (attrs.network_lifetime <= 0.0) {
        return {6};
    }
    if (dyn.density >= 5) {
        return {5};
    }
    if (dyn.congestion_present) {
        return {4};
    }
    if (!attrs.resource_allocated) {
        return {3};
    }
    if (dyn.delay_present) {
        return {2};
    }
    return {1};
}

Grade priority_to_grade(Priority p) {
    switch (p.value) {
    case 1: return {0};
    case 2: return {+1};
    case 3: return {+2};
    case 4: return {+3};
    case 5: return {-2};
    case 6: return {-3};
    default:
        throw ParameterError("priority out of range: " + std::to_string(p.value));
    }
}

std::string_view keep_reason_name(KeepReason r) {
    switch (r) {
    case KeepReason::top3: return "top3";
    case KeepReason::in_range: return "in-range";
    case KeepReason::endpoint: return "endpoint";
    case KeepReason::fallback: return "fallback";
    }
    return "?";
}

GradedSubgraph::GradedSubgraph(const Topology& base, std::vector<bool> kept,
                               std::vector<KeepReason> reasons, std::vector<bool> top3,
                               bool widened, bool disconnected)
    : base_(&base),
      kept_(std::move(kept)),
      reasons_(std::move(reasons)),
      top3_(std::move(top3)),
      widened_(widened),
      disconnected_(disconnected) {
    adjacency_.resize(base_->node_count());
    for (NodeId n = 0; n < base_->node_count(); ++n) {
        if (!kept_[n]) {
            continue;
        }
        ++kept_count_;
        for (const Neighbor& nb : base_->neighbors(n)) {
            if (kept_[nb.id]) {
                adjacency_[n].push_back(nb);
                if (n < nb.id) {
                    induced_links_.push_back(nb.link);
                }
            }
        }
    }
}

std::span<const Neighbor> GradedSubgraph::neighbors(NodeId n) const {
    if (n >= adjacency_.size()) {
        throw LookupError("unknown node " + std::to_string(n));
    }
    return adjacency_[n];
}

namespace {

bool in_band(Grade g, int lo, int hi) { return g.value >= lo && g.value <= hi; }

std::vector<bool> top3_mask(const Topology& t, std::span<const Grade> grades) {
    std::vector<bool> mask(t.node_count(), false);
    for (RegionId r = 0; r < t.region_count(); ++r) {
        auto members = t.region_nodes(r);
        std::vector<NodeId> ranked(members.begin(), members.end());
        std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
            const int ga = std::abs(grades[a].value);
            const int gb = std::abs(grades[b].value);
            if (ga != gb) {
                return ga < gb;
            }
            const double ba = t.attributes(a).bandwidth;
            const double bb = t.attributes(b).bandwidth;
            if (ba != bb) {
                return ba > bb;
            }
            return a < b;
        });
        for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
            mask[ranked[i]] = true;
        }
    }
    return mask;
}

std::vector<bool> select_kept(const Topology& t, std::span<const Grade> grades,
                              const std::vector<bool>& top3, NodeId source, NodeId dest,
                              int band_lo, int band_hi) {
    std::vector<bool> kept(t.node_count(), false);
    for (NodeId n = 0; n < t.node_count(); ++n) {
        kept[n] = n == source || n == dest || top3[n] ||
                  in_band(grades[n], band_lo, band_hi);
    }
    return kept;
}

bool reachable(const Topology& t, const std::vector<bool>& kept, NodeId source,
               NodeId dest) {
    std::vector<bool> seen(t.node_count(), false);
    std::deque<NodeId> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        if (cur == dest) {
            return true;
        }
        for (const Neighbor& nb : t.neighbors(cur)) {
            if (kept[nb.id] && !seen[nb.id]) {
                seen[nb.id] = true;
                queue.push_back(nb.id);
            }
        }
    }
    return false;
}

std::vector<KeepReason> label_reasons(const Topology& t, std::span<const Grade> grades,
                                      const std::vector<bool>& top3,
                                      const std::vector<bool>& kept, NodeId source,
                                      NodeId dest) {
    std::vector<KeepReason> reasons(t.node_count(), KeepReason::fallback);
    for (NodeId n = 0; n < t.node_count(); ++n) {
        if (!kept[n]) {
            continue;
        }
        if (top3[n]) {
            reasons[n] = KeepReason::top3;
        } else if (in_band(grades[n], 0, 2)) {
            reasons[n] = KeepReason::in_range;
        } else if (n == source || n == dest) {
            reasons[n] = KeepReason::endpoint;
        } else {
            reasons[n] = KeepReason::fallback;
        }
    }
    return reasons;
}

} // namespace

GradedSubgraph level1_select(const Topology& t, std::span<const Grade> grades,
                             NodeId source, NodeId dest) {
    if (source >= t.node_count() || dest >= t.node_count()) {
        throw LookupError("source or destination unknown");
    }
    if (grades.size() != t.node_count()) {
        throw ParameterError("grades must cover all nodes");
    }

    const auto top3 = top3_mask(t, grades);
    auto kept = select_kept(t, grades, top3, source, dest, 0, 2);
    bool widened = false;
    bool disconnected = false;
    if (!reachable(t, kept, source, dest)) {
        widened = true;
        kept = select_kept(t, grades, top3, source, dest, -2, 3);
        disconnected = !reachable(t, kept, source, dest);
    }
    auto reasons = label_reasons(t, grades, top3, kept, source, dest);
    return GradedSubgraph(t, std::move(kept), std::move(reasons), top3, widened,
                          disconnected);
}

bool verify_connectivity(const GradedSubgraph& g, NodeId source, NodeId dest) {
    if (source >= g.node_count() || dest >= g.node_count()) {
        throw LookupError("source or destination unknown");
    }
    if (!g.is_kept(source) || !g.is_kept(dest)) {
        return false;
    }
    std::vector<bool> seen(g.node_count(), false);
    std::deque<NodeId> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        if (cur == dest) {
            return true;
        }
        for (const Neighbor& nb : g.neighbors(cur)) {
            if (!seen[nb.id]) {
                seen[nb.id] = true;
                queue.push_back(nb.id);
            }
        }
    }
    return false;
}

std::vector<Priority> assign_priorities(const Topology& t,
                                        std::span<const NodeDynamics> dynamics) {
    if (dynamics.size() != t.node_count()) {
        throw ParameterError("dynamics must cover all nodes");
    }
    std::vector<Priority> out(t.node_count());
    for (NodeId n = 0; n < t.node_count(); ++n) {
        out[n] = assign_priority(t.attributes(n), dynamics[n]);
    }
    return out;
}

std::vector<Grade> to_grades(std::span<const Priority> priorities) {
    std::vector<Grade> out(priorities.size());
    for (std::size_t i = 0; i < priorities.size(); ++i) {
        out[i] = priority_to_grade(priorities[i]);
    }
    return out;
}

void write_grade_report(const Topology& t, std::span<const Priority> priorities,
                        const GradedSubgraph& sub, std::ostream& out) {
    out << "node,region,priority,grade,kept,reason\n";
    for (NodeId n = 0; n < t.node_count(); ++n) {
        const Grade g = priority_to_grade(priorities[n]);
        out << n << "," << t.region_of(n) << "," << priorities[n].value << ","
            << g.value << "," << (sub.is_kept(n) ? 1 : 0) << ",";
        if (sub.is_kept(n)) {
            out << keep_reason_name(sub.reason(n));
        }
        out << "\n";
    }
}

} // namespace graderoute
