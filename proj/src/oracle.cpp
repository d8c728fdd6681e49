#include "graderoute/oracle.hpp"

#include "graderoute/errors.hpp"

namespace graderoute {

namespace {

struct Enumerator {
    const Graph& g;
    NodeId dest;
    std::uint64_t cap;
    PathEnumeration out;
    std::vector<NodeId> current;
    std::vector<bool> on_path;

    bool dfs(NodeId node) {
        current.push_back(node);
        on_path[node] = true;
        if (node == dest) {
            if (out.paths.size() >= cap) {
                out.truncated = true;
            } else {
                out.paths.push_back({current, true});
            }
        } else {
            for (const Neighbor& nb : g.neighbors(node)) {
                if (!on_path[nb.id]) {
                    if (!dfs(nb.id)) {
                        break;
                    }
                }
            }
        }
        on_path[node] = false;
        current.pop_back();
        return !out.truncated;
    }
};

} // namespace

PathEnumeration enumerate_simple_paths(const Graph& g, NodeId source, NodeId dest,
                                       std::uint64_t max_paths) {
    if (source >= g.node_count() || dest >= g.node_count()) {
        throw LookupError("source or destination unknown");
    }
    if (max_paths == 0) {
        throw ParameterError("max_paths must be positive");
    }
    Enumerator e{g, dest, max_paths, {}, {}, std::vector<bool>(g.node_count(), false)};
    e.dfs(source);
    return std::move(e.out);
}

OracleResult best_path_bruteforce(const Graph& g, NodeId source, NodeId dest,
                                  std::uint64_t max_paths) {
    PathEnumeration enumeration = enumerate_simple_paths(g, source, dest, max_paths);
    OracleResult result;
    result.paths_examined = enumeration.paths.size();
    result.truncated = enumeration.truncated;
    result.best_path.nodes.push_back(source);
    result.best_path.valid = false;
    bool have_best = false;
    for (Path& p : enumeration.paths) {
        const double f = fitness(p, g);
        const bool better =
            !have_best || f > result.best_fitness ||
            (f == result.best_fitness &&
             (p.nodes.size() < result.best_path.nodes.size() ||
              (p.nodes.size() == result.best_path.nodes.size() &&
               p.nodes < result.best_path.nodes)));
        if (better) {
            have_best = true;
            result.best_fitness = f;
            result.best_path = std::move(p);
        }
    }
    return result;
}

} // namespace graderoute
