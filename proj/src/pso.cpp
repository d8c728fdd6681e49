#include "graderoute/pso.hpp"

#include <algorithm>
#include <cstdlib>

#include "graderoute/errors.hpp"

namespace graderoute {

Path decode_path(const PriorityVector& x, const Graph& g, NodeId source, NodeId dest,
                 std::uint32_t window) {
    if (source >= g.node_count() || dest >= g.node_count()) {
        throw LookupError("source or destination unknown");
    }
    if (x.values.size() != g.node_count()) {
        throw ParameterError("priority vector length does not match node count");
    }
    if (window == 0) {
        throw ParameterError("index window must be positive");
    }

    Path path;
    path.nodes.push_back(source);
    if (source == dest) {
        path.valid = true;
        return path;
    }

    std::vector<double> work = x.values;
    work[source] = kTombstone;
    const bool descending = source > dest;
    const auto m = static_cast<std::int64_t>(window);

    NodeId current = source;
    while (true) {
        bool found = false;
        NodeId best_node = 0;
        double best_priority = 0.0;
        for (const Neighbor& nb : g.neighbors(current)) {
            if (work[nb.id] == kTombstone) {
                continue;
            }
            const std::int64_t delta =
                static_cast<std::int64_t>(nb.id) - static_cast<std::int64_t>(current);
            if (descending ? delta <= -m : delta >= m) {
                continue;
            }
            // Neighbors come in ascending id order, so '>' keeps the
            // smallest id on equal priorities.
            if (!found || work[nb.id] > best_priority) {
                found = true;
                best_node = nb.id;
                best_priority = work[nb.id];
            }
        }
        if (!found) {
            return path; // dead end; invalid
        }
        current = best_node;
        path.nodes.push_back(current);
        work[current] = kTombstone;
        if (current == dest) {
            path.valid = true;
            return path;
        }
    }
}

namespace {

template <typename BandwidthScale>
double fitness_with(const Path& p, const Graph& g, BandwidthScale&& scale) {
    if (!p.valid || p.nodes.size() < 2) {
        return 0.0;
    }
    double first = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        const auto idx = g.find_link(p.nodes[i], p.nodes[i + 1]);
        if (!idx) {
            return 0.0;
        }
        const double bw = g.link(*idx).bandwidth * scale();
        if (i == 0) {
            first = bw;
        }
        total += bw;
    }
    return total > 0.0 ? first / total : 0.0;
}

} // namespace

double fitness(const Path& p, const Graph& g) {
    return fitness_with(p, g, [] { return 1.0; });
}

double perturbed_fitness(const Path& p, const Graph& g, double half_width, Rng& rng) {
    return fitness_with(
        p, g, [&] { return rng.uniform(1.0 - half_width, 1.0 + half_width); });
}

namespace {

void refresh_gbest(Swarm& s) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.particles.size(); ++i) {
        if (s.particles[i].pbest_fitness > s.particles[best].pbest_fitness) {
            best = i;
        }
    }
    s.gbest_position = s.particles[best].pbest_position;
    s.gbest_fitness = s.particles[best].pbest_fitness;
    s.gbest_path = s.particles[best].pbest_path;
}

void validate_config(const SwarmConfig& cfg) {
    if (cfg.particle_count == 0) {
        throw ParameterError("particle_count must be positive");
    }
    if (cfg.index_window == 0) {
        throw ParameterError("index window must be positive");
    }
    if (cfg.v_max <= 0.0) {
        throw ParameterError("v_max must be positive");
    }
    if (cfg.perturbation < 0.0 || cfg.perturbation >= 0.5) {
        throw ParameterError("perturbation must lie in [0, 0.5)");
    }
}

} // namespace

Swarm init_swarm(const SwarmConfig& cfg, const Graph& g, NodeId source, NodeId dest) {
    validate_config(cfg);
    if (source >= g.node_count() || dest >= g.node_count()) {
        throw LookupError("source or destination unknown");
    }

    Swarm s;
    s.source = source;
    s.dest = dest;
    s.rng = Rng(cfg.seed);
    s.particles.resize(cfg.particle_count);
    const std::uint32_t n = g.node_count();
    for (Particle& p : s.particles) {
        p.position.values.resize(n);
        p.velocity.resize(n);
        for (std::uint32_t j = 0; j < n; ++j) {
            p.position.values[j] = s.rng.uniform(-5.0, 5.0);
        }
        for (std::uint32_t j = 0; j < n; ++j) {
            p.velocity[j] = s.rng.uniform(-1.0, 1.0);
        }
        p.decoded_path = decode_path(p.position, g, source, dest, cfg.index_window);
        p.fitness = fitness(p.decoded_path, g);
        p.pbest_position = p.position;
        p.pbest_fitness = p.fitness;
        p.pbest_path = p.decoded_path;
    }
    refresh_gbest(s);
    return s;
}

bool step_swarm(Swarm& s, const Graph& g, const SwarmConfig& cfg) {
    validate_config(cfg);
    const PriorityVector gbest_snapshot = s.gbest_position;
    const double previous_gbest = s.gbest_fitness;

    for (Particle& p : s.particles) {
        for (std::size_t j = 0; j < p.position.values.size(); ++j) {
            const double r1 = s.rng.uniform01();
            const double r2 = s.rng.uniform01();
            double v = cfg.inertia * p.velocity[j] +
                       cfg.cognitive * r1 *
                           (p.pbest_position.values[j] - p.position.values[j]) +
                       cfg.social * r2 *
                           (gbest_snapshot.values[j] - p.position.values[j]);
            v = std::clamp(v, -cfg.v_max, cfg.v_max);
            p.velocity[j] = v;
            p.position.values[j] += v;
        }
        p.decoded_path = decode_path(p.position, g, s.source, s.dest, cfg.index_window);
        p.fitness = cfg.perturbation > 0.0
                        ? perturbed_fitness(p.decoded_path, g, cfg.perturbation, s.rng)
                        : fitness(p.decoded_path, g);
        if (p.fitness > p.pbest_fitness) {
            p.pbest_fitness = p.fitness;
            p.pbest_position = p.position;
            p.pbest_path = p.decoded_path;
        }
    }
    refresh_gbest(s);
    return s.gbest_fitness > previous_gbest;
}

PsoResult run_pso(const SwarmConfig& cfg, const Graph& g, NodeId source, NodeId dest) {
    Swarm s = init_swarm(cfg, g, source, dest);
    PsoResult result;
    result.gbest_trace.reserve(cfg.iterations + 1);
    result.gbest_trace.push_back(s.gbest_fitness);
    for (std::uint32_t it = 1; it <= cfg.iterations; ++it) {
        if (step_swarm(s, g, cfg)) {
            result.iterations_to_converge = it;
        }
        result.gbest_trace.push_back(s.gbest_fitness);
    }
    result.best_path = s.gbest_path;
    result.best_fitness = s.gbest_fitness;
    return result;
}

} // namespace graderoute
