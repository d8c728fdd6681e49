#ifndef GRADEROUTE_PSO_HPP
#define GRADEROUTE_PSO_HPP

#include <cstdint>
#include <vector>

#include "graderoute/graph.hpp"
#include "graderoute/rng.hpp"

namespace graderoute {

// Priority value written over already-selected nodes during one decode, so
// a path can never revisit them.
inline constexpr double kTombstone = -999.0;

// One priority per topology node; the particle's position.
struct PriorityVector {
    std::vector<double> values;

    bool operator==(const PriorityVector&) const = default;
};

struct Path {
    std::vector<NodeId> nodes;
    bool valid = false;

    bool operator==(const Path&) const = default;
};

struct SwarmConfig {
    std::uint32_t particle_count = 30;
    std::uint32_t iterations = 100;
    double inertia = 0.8;           // w
    double cognitive = 2.0;         // c1
    double social = 2.0;            // c2
    double v_max = 4.0;
    std::uint32_t index_window = 4; // heuristic operator M; set to pnr
    double perturbation = 0.05;     // link-cost noise half-width; 0 = off
    std::uint64_t seed = 1;
};

struct Particle {
    PriorityVector position;
    std::vector<double> velocity;
    Path decoded_path;
    double fitness = 0.0;
    PriorityVector pbest_position;
    double pbest_fitness = 0.0;
    Path pbest_path;
};

struct Swarm {
    std::vector<Particle> particles;
    NodeId source = 0;
    NodeId dest = 0;
    PriorityVector gbest_position;
    double gbest_fitness = 0.0;
    Path gbest_path;
    Rng rng{0};
};

// Greedy path construction driven by the priority vector. Starting from
// source, repeatedly moves to the admissible neighbor with the highest
// working priority, writing the tombstone over each visited node. A
// neighbor c of the current node t is admissible when its working priority
// is not the tombstone and the index window holds:
//   source > dest:  c - t > -M
//   otherwise:      c - t <  M
// Priority ties break toward the smaller node id. Returns an invalid path
// when no admissible neighbor remains before reaching dest. The caller's
// vector is never written.
Path decode_path(const PriorityVector& x, const Graph& g, NodeId source, NodeId dest,
                 std::uint32_t window);

// First-link bandwidth over total path bandwidth, in [0,1]. Invalid and
// single-node paths score 0; a valid single-link path scores exactly 1.
double fitness(const Path& p, const Graph& g);

// Same ratio with each on-path bandwidth scaled by an independent factor
// drawn from [1-half_width, 1+half_width]; the graph itself is untouched.
double perturbed_fitness(const Path& p, const Graph& g, double half_width, Rng& rng);

// Positions uniform in [-5,5], velocities in [-1,1], all drawn from the
// config seed. Every particle is decoded and scored; gBest is the best
// initial fitness (ties to the lowest particle index).
Swarm init_swarm(const SwarmConfig& cfg, const Graph& g, NodeId source, NodeId dest);

// One synchronous iteration: velocity/position update against the previous
// gBest, clamp to +-v_max, decode, score (with per-particle link noise when
// perturbation > 0), refresh pBest, then recompute gBest. Returns true when
// gBest strictly improved.
bool step_swarm(Swarm& s, const Graph& g, const SwarmConfig& cfg);

struct PsoResult {
    Path best_path;
    double best_fitness = 0.0;
    // 1-based iteration of the last gBest improvement; 0 when initialization
    // was never beaten.
    std::uint32_t iterations_to_converge = 0;
    // gBest fitness after initialization (index 0) and after each iteration.
    std::vector<double> gbest_trace;
};

PsoResult run_pso(const SwarmConfig& cfg, const Graph& g, NodeId source, NodeId dest);

} // namespace graderoute

#endif
