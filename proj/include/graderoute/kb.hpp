#ifndef GRADEROUTE_KB_HPP
#define GRADEROUTE_KB_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "graderoute/graph.hpp"

namespace graderoute {

// A discovered route worth remembering.
struct RouteRecord {
    NodeId source = 0;
    NodeId dest = 0;
    std::vector<NodeId> path;
    double fitness = 0.0;
    std::uint32_t iterations_to_converge = 0;
    bool graded = false;
    std::uint64_t seed = 0;

    bool operator==(const RouteRecord&) const = default;
};

// Best-route store keyed by (source, dest, graded). A new record replaces
// the stored one only when its fitness is strictly higher.
class KnowledgeBase {
public:
    void record(const RouteRecord& r);
    std::optional<RouteRecord> query(NodeId source, NodeId dest, bool graded) const;
    std::size_t size() const { return records_.size(); }

    // Line format: 'kb v1' header, then
    //   route <src> <dst> <graded:0|1> <fitness> <iters> <seed> <n1>-<n2>-...
    // Saved in key order, so save-load-save is byte-stable.
    void save(std::ostream& out) const;
    void save(const std::filesystem::path& path) const;
    static KnowledgeBase load(std::istream& in);
    static KnowledgeBase load(const std::filesystem::path& path);

    bool operator==(const KnowledgeBase&) const = default;

private:
    using Key = std::tuple<NodeId, NodeId, bool>;
    std::map<Key, RouteRecord> records_;
};

} // namespace graderoute

#endif
