#include "graderoute/experiment.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "graderoute/errors.hpp"
#include "graderoute/rng.hpp"
#include "graderoute/text.hpp"

namespace graderoute {

namespace {

// Per-trial seed streams; one tag per independent consumer.
enum SeedStream : std::uint64_t {
    kTopologyStream = 1,
    kTrafficStream = 2,
    kEndpointStream = 3,
    kUngradedStream = 4,
    kGradedStream = 5,
};

std::pair<NodeId, NodeId> pick_endpoints(const Topology& t, Rng& rng) {
    if (t.region_count() == 1) {
        const NodeId source = static_cast<NodeId>(rng.below(t.node_count()));
        NodeId dest = static_cast<NodeId>(rng.below(t.node_count() - 1));
        if (dest >= source) {
            ++dest;
        }
        return {source, dest};
    }
    // Adjacent distinct regions force an inter-region route that the decode
    // index window (M = pnr) can actually admit; region pairs further apart
    // would be unreachable by construction for most node indices.
    const auto r1 = static_cast<RegionId>(rng.below(t.region_count()));
    RegionId r2;
    if (r1 == 0) {
        r2 = 1;
    } else if (r1 == t.region_count() - 1) {
        r2 = r1 - 1;
    } else {
        r2 = rng.bernoulli(0.5) ? r1 + 1 : r1 - 1;
    }
    const NodeId source = t.region_nodes(r1)[rng.below(t.pnr())];
    const NodeId dest = t.region_nodes(r2)[rng.below(t.pnr())];
    return {source, dest};
}

double median(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return (values[mid - 1] + values[mid]) / 2.0;
}

} // namespace

TrafficMatrix synth_demands(std::uint32_t node_count, const DemandParams& params,
                            std::uint64_t seed) {
    if (params.density < 0.0 || params.density > 1.0) {
        throw ParameterError("demand density must lie in [0,1]");
    }
    if (params.gamma_min < 0.0 || params.gamma_min > params.gamma_max) {
        throw ParameterError("invalid demand rate range");
    }
    Rng rng(seed);
    TrafficMatrix gamma(node_count);
    for (NodeId j = 0; j < node_count; ++j) {
        for (NodeId k = 0; k < node_count; ++k) {
            if (j != k && rng.bernoulli(params.density)) {
                gamma.set(j, k, rng.uniform(params.gamma_min, params.gamma_max));
            }
        }
    }
    return gamma;
}

CompareOutcome run_compare(const ExperimentConfig& cfg) {
    if (cfg.trial_count == 0) {
        throw ParameterError("trial_count must be positive");
    }

    CompareOutcome outcome;
    outcome.trials.reserve(cfg.trial_count);

    for (std::uint32_t trial = 0; trial < cfg.trial_count; ++trial) {
        CompareTrial tr;
        tr.row.trial = trial;
        try {
            const Topology topo =
                cfg.topology_file
                    ? load_topology(*cfg.topology_file)
                    : generate_topology(
                          cfg.topology,
                          derive_seed(cfg.master_seed, trial, kTopologyStream));
            tr.row.nodes_total = topo.node_count();

            const TrafficMatrix gamma =
                synth_demands(topo.node_count(), cfg.demand,
                              derive_seed(cfg.master_seed, trial, kTrafficStream));
            const TrafficModel model = build_traffic_model(topo, gamma, cfg.mu);
            const auto dynamics =
                derive_dynamics(topo, model, cfg.delay_threshold, cfg.util_threshold);
            tr.grades = to_grades(assign_priorities(topo, dynamics));

            Rng endpoint_rng(derive_seed(cfg.master_seed, trial, kEndpointStream));
            std::tie(tr.source, tr.dest) = pick_endpoints(topo, endpoint_rng);

            SwarmConfig swarm = cfg.swarm;
            swarm.index_window = topo.pnr();

            swarm.seed = derive_seed(cfg.master_seed, trial, kUngradedStream);
            const PsoResult ungraded = run_pso(swarm, topo, tr.source, tr.dest);
            tr.row.ungraded_iterations = ungraded.iterations_to_converge;
            tr.row.ungraded_fitness = ungraded.best_fitness;

            const GradedSubgraph sub =
                level1_select(topo, tr.grades, tr.source, tr.dest);
            tr.kept.resize(topo.node_count());
            tr.top3.resize(topo.node_count());
            for (NodeId n = 0; n < topo.node_count(); ++n) {
                tr.kept[n] = sub.is_kept(n);
                tr.top3[n] = sub.is_top3(n);
            }
            tr.widened = sub.widened();
            tr.disconnected = sub.disconnected();
            tr.row.nodes_graded = sub.kept_count();

            swarm.seed = derive_seed(cfg.master_seed, trial, kGradedStream);
            const PsoResult graded = run_pso(swarm, sub, tr.source, tr.dest);
            tr.row.graded_iterations = graded.iterations_to_converge;
            tr.row.graded_fitness = graded.best_fitness;
        } catch (const std::exception& e) {
            tr.error = e.what();
        }
        outcome.trials.push_back(std::move(tr));
    }

    std::vector<double> reductions;
    std::uint32_t le_count = 0;
    std::uint32_t ok_count = 0;
    double ratio_sum = 0.0;
    for (const CompareTrial& tr : outcome.trials) {
        if (!tr.error.empty()) {
            continue;
        }
        ++ok_count;
        reductions.push_back(static_cast<double>(tr.row.ungraded_iterations) -
                             static_cast<double>(tr.row.graded_iterations));
        if (tr.row.graded_iterations <= tr.row.ungraded_iterations) {
            ++le_count;
        }
        ratio_sum += static_cast<double>(tr.row.nodes_graded) / tr.row.nodes_total;
    }
    if (ok_count > 0) {
        outcome.fraction_graded_le_ungraded = static_cast<double>(le_count) / ok_count;
        outcome.median_iteration_reduction = median(std::move(reductions));
        outcome.mean_kept_ratio = ratio_sum / ok_count;
    }
    return outcome;
}

namespace {

constexpr std::string_view kCompareHeader =
    "trial,ungraded_iterations,ungraded_fitness,graded_iterations,graded_fitness,"
    "nodes_total,nodes_graded";

} // namespace

void write_compare_csv(const CompareOutcome& outcome, std::ostream& out) {
    out << kCompareHeader << "\n";
    for (const CompareTrial& tr : outcome.trials) {
        const ComparisonRow& r = tr.row;
        out << r.trial << "," << r.ungraded_iterations << ","
            << format_double(r.ungraded_fitness) << "," << r.graded_iterations << ","
            << format_double(r.graded_fitness) << "," << r.nodes_total << ","
            << r.nodes_graded << "\n";
    }
}

std::vector<ComparisonRow> read_compare_csv(std::istream& in) {
    LineScanner scanner(in);
    if (!scanner.next() || scanner.line() != kCompareHeader) {
        throw ParseError("expected compare CSV header", scanner.line_number());
    }
    std::vector<ComparisonRow> rows;
    while (scanner.next()) {
        const auto fields = split_on(scanner.line(), ',');
        const int ln = scanner.line_number();
        ComparisonRow r;
        if (fields.size() != 7 || !parse_u32(fields[0], r.trial) ||
            !parse_u32(fields[1], r.ungraded_iterations) ||
            !parse_double(fields[2], r.ungraded_fitness) ||
            !parse_u32(fields[3], r.graded_iterations) ||
            !parse_double(fields[4], r.graded_fitness) ||
            !parse_u32(fields[5], r.nodes_total) ||
            !parse_u32(fields[6], r.nodes_graded)) {
            throw ParseError("malformed compare row", ln);
        }
        rows.push_back(r);
    }
    return rows;
}

void write_report_csv(std::span<const ComparisonRow> rows, std::ostream& out) {
    out << "trial,nodes_total,nodes_graded,ungraded_iterations,graded_iterations\n";
    for (const ComparisonRow& r : rows) {
        out << r.trial << "," << r.nodes_total << "," << r.nodes_graded << ","
            << r.ungraded_iterations << "," << r.graded_iterations << "\n";
    }
}

RouteReport route_once(const Topology& t, const TrafficMatrix* gamma,
                       const RouteRequest& request) {
    if (request.source >= t.node_count() || request.dest >= t.node_count()) {
        throw LookupError("source or destination unknown");
    }
    RouteReport report;
    report.nodes_total = t.node_count();
    report.nodes_considered = t.node_count();

    switch (request.mode) {
    case RouteMode::oracle: {
        const OracleResult oracle =
            best_path_bruteforce(t, request.source, request.dest);
        report.path = oracle.best_path;
        report.fitness = oracle.best_fitness;
        report.paths_examined = oracle.paths_examined;
        report.truncated = oracle.truncated;
        return report;
    }
    case RouteMode::ungraded: {
        const PsoResult r = run_pso(request.swarm, t, request.source, request.dest);
        report.path = r.best_path;
        report.fitness = r.best_fitness;
        report.iterations_to_converge = r.iterations_to_converge;
        return report;
    }
    case RouteMode::graded: {
        const TrafficMatrix zero(t.node_count());
        const TrafficModel model =
            build_traffic_model(t, gamma ? *gamma : zero, request.mu);
        const auto dynamics =
            derive_dynamics(t, model, request.delay_threshold, request.util_threshold);
        report.priorities = assign_priorities(t, dynamics);
        const auto grades = to_grades(report.priorities);
        report.subgraph.emplace(level1_select(t, grades, request.source, request.dest));
        report.nodes_considered = report.subgraph->kept_count();
        const PsoResult r =
            run_pso(request.swarm, *report.subgraph, request.source, request.dest);
        report.path = r.best_path;
        report.fitness = r.best_fitness;
        report.iterations_to_converge = r.iterations_to_converge;
        return report;
    }
    }
    throw ParameterError("unknown route mode");
}

} // namespace graderoute
