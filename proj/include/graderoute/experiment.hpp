#ifndef GRADEROUTE_EXPERIMENT_HPP
#define GRADEROUTE_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graderoute/grading.hpp"
#include "graderoute/oracle.hpp"
#include "graderoute/pso.hpp"
#include "graderoute/topology.hpp"
#include "graderoute/traffic.hpp"

namespace graderoute {

// Synthetic demand model: each ordered pair carries traffic with probability
// `density`, with a rate uniform in [gamma_min, gamma_max].
struct DemandParams {
    double density = 0.15;
    double gamma_min = 0.2;
    double gamma_max = 1.5;
};

struct ExperimentConfig {
    std::optional<std::filesystem::path> topology_file; // overrides generation
    TopologyParams topology;
    DemandParams demand;
    double mu = 1.0;
    double delay_threshold = 1.0;
    double util_threshold = 0.8;
    SwarmConfig swarm; // per-trial seeds are derived; swarm.seed is unused here
    std::uint32_t trial_count = 30;
    std::uint64_t master_seed = 1;
};

struct ComparisonRow {
    std::uint32_t trial = 0;
    std::uint32_t ungraded_iterations = 0;
    double ungraded_fitness = 0.0;
    std::uint32_t graded_iterations = 0;
    double graded_fitness = 0.0;
    std::uint32_t nodes_total = 0;
    std::uint32_t nodes_graded = 0;

    bool operator==(const ComparisonRow&) const = default;
};

struct CompareTrial {
    ComparisonRow row;
    NodeId source = 0;
    NodeId dest = 0;
    std::vector<Grade> grades;
    std::vector<bool> kept;
    std::vector<bool> top3;
    bool widened = false;
    bool disconnected = false;
    std::string error; // empty on success
};

struct CompareOutcome {
    std::vector<CompareTrial> trials;
    double fraction_graded_le_ungraded = 0.0;
    double median_iteration_reduction = 0.0;
    double mean_kept_ratio = 0.0;
};

TrafficMatrix synth_demands(std::uint32_t node_count, const DemandParams& params,
                            std::uint64_t seed);

// Paired graded/ungraded trials. Each trial derives independent seed streams
// for topology, traffic, endpoint choice and the two swarm runs from
// (master_seed, trial), so the two methods never share randomness and extra
// draws in one stream cannot shift another. Trial failures land in the
// trial's error field; the run continues.
CompareOutcome run_compare(const ExperimentConfig& cfg);

// Exactly: trial,ungraded_iterations,ungraded_fitness,graded_iterations,
// graded_fitness,nodes_total,nodes_graded
void write_compare_csv(const CompareOutcome& outcome, std::ostream& out);
std::vector<ComparisonRow> read_compare_csv(std::istream& in);

// Plot-ready series per trial: node counts and iteration counts.
void write_report_csv(std::span<const ComparisonRow> rows, std::ostream& out);

enum class RouteMode { ungraded, graded, oracle };

struct RouteRequest {
    RouteMode mode = RouteMode::ungraded;
    NodeId source = 0;
    NodeId dest = 0;
    SwarmConfig swarm;
    double mu = 1.0;
    double delay_threshold = 1.0;
    double util_threshold = 0.8;
};

struct RouteReport {
    Path path;
    double fitness = 0.0;
    std::uint32_t iterations_to_converge = 0;
    std::uint32_t nodes_total = 0;
    std::uint32_t nodes_considered = 0;
    std::uint64_t paths_examined = 0; // oracle mode
    bool truncated = false;           // oracle mode
    std::vector<Priority> priorities; // graded mode
    std::optional<GradedSubgraph> subgraph; // graded mode
};

// One routing run on a loaded topology. `gamma` may be null (no traffic:
// flows are zero, nodes show neither delay nor congestion).
RouteReport route_once(const Topology& t, const TrafficMatrix* gamma,
                       const RouteRequest& request);

} // namespace graderoute

#endif
