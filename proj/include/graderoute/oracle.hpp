#ifndef GRADEROUTE_ORACLE_HPP
#define GRADEROUTE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "graderoute/graph.hpp"
#include "graderoute/pso.hpp"

namespace graderoute {

struct PathEnumeration {
    std::vector<Path> paths;
    bool truncated = false;
};

// Depth-first enumeration of every simple source->dest path, visiting
// neighbors in ascending id order. Stops after max_paths and flags the
// truncation. Desk-scale graphs only.
PathEnumeration enumerate_simple_paths(const Graph& g, NodeId source, NodeId dest,
                                       std::uint64_t max_paths = 1'000'000);

struct OracleResult {
    Path best_path;
    double best_fitness = 0.0;
    std::uint64_t paths_examined = 0;
    bool truncated = false;
};

// Exhaustive ground truth: the fitness-maximal simple path. Ties go to the
// shorter path, then the lexicographically smaller node sequence. With no
// path at all the result carries an invalid path and fitness 0.
OracleResult best_path_bruteforce(const Graph& g, NodeId source, NodeId dest,
                                  std::uint64_t max_paths = 1'000'000);

} // namespace graderoute

#endif
