#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "graderoute/errors.hpp"
#include "graderoute/experiment.hpp"
#include "graderoute/kb.hpp"
#include "graderoute/text.hpp"

namespace gr = graderoute;

namespace {

// sysexits-style codes, plus 2 for "no route".
constexpr int kExitOk = 0;
constexpr int kExitNoPath = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitIo = 74;

struct GenerateArgs {
    gr::TopologyParams params;
    std::uint64_t seed = 1;
    std::string out;
};

struct RouteArgs {
    std::string topology;
    std::string traffic;
    std::string mode = "ungraded";
    gr::NodeId source = 0;
    gr::NodeId dest = 0;
    gr::SwarmConfig swarm;
    double mu = 1.0;
    double delay_threshold = 1.0;
    double util_threshold = 0.8;
    std::string kb_path;
    std::string grade_report;
};

struct CompareArgs {
    gr::ExperimentConfig config;
    std::string topology_file;
    std::string out;
};

struct ReportArgs {
    std::string in;
    std::string out;
};

void add_swarm_flags(CLI::App* cmd, gr::SwarmConfig& swarm) {
    cmd->add_option("--particles", swarm.particle_count, "Swarm size");
    cmd->add_option("--iterations", swarm.iterations, "PSO iterations");
    cmd->add_option("--w", swarm.inertia, "Inertia weight");
    cmd->add_option("--c1", swarm.cognitive, "Cognitive coefficient");
    cmd->add_option("--c2", swarm.social, "Social coefficient");
    cmd->add_option("--vmax", swarm.v_max, "Velocity clamp");
    cmd->add_option("--perturbation", swarm.perturbation,
                    "Half-width of random link cost change (0 disables)");
}

void add_topology_flags(CLI::App* cmd, gr::TopologyParams& p) {
    cmd->add_option("--regions", p.region_count, "Number of regions");
    cmd->add_option("--pnr", p.pnr, "Nodes per region");
    cmd->add_option("--intra-prob", p.intra_edge_prob,
                    "Edge probability inside a region");
    cmd->add_option("--inter-edges", p.inter_edges_per_region_pair,
                    "Links per region pair");
    cmd->add_option("--lifetime-min", p.attrs.lifetime_min, "Node lifetime lower bound");
    cmd->add_option("--lifetime-max", p.attrs.lifetime_max, "Node lifetime upper bound");
    cmd->add_option("--bandwidth-min", p.attrs.bandwidth_min, "Bandwidth lower bound");
    cmd->add_option("--bandwidth-max", p.attrs.bandwidth_max, "Bandwidth upper bound");
    cmd->add_option("--capacity-min", p.attrs.capacity_min, "Link capacity lower bound");
    cmd->add_option("--capacity-max", p.attrs.capacity_max, "Link capacity upper bound");
    cmd->add_option("--resource-prob", p.attrs.resource_probability,
                    "Probability a node has resources allocated");
}

std::string path_to_string(const gr::Path& p) {
    std::string s;
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        if (i > 0) {
            s += "-";
        }
        s += std::to_string(p.nodes[i]);
    }
    return s;
}

int cmd_generate(const GenerateArgs& args) {
    const gr::Topology t = gr::generate_topology(args.params, args.seed);
    gr::save_topology(t, std::filesystem::path(args.out));
    std::cout << "wrote " << args.out << " (" << t.node_count() << " nodes, "
              << t.links().size() << " links)\n";
    return kExitOk;
}

int cmd_route(const RouteArgs& args) {
    const gr::Topology topo = gr::load_topology(std::filesystem::path(args.topology));

    std::optional<gr::TrafficMatrix> gamma;
    if (!args.traffic.empty()) {
        gamma = gr::load_traffic(std::filesystem::path(args.traffic), topo.node_count());
    }

    gr::RouteRequest request;
    request.source = args.source;
    request.dest = args.dest;
    request.swarm = args.swarm;
    request.swarm.index_window = topo.pnr();
    request.mu = args.mu;
    request.delay_threshold = args.delay_threshold;
    request.util_threshold = args.util_threshold;
    if (args.mode == "ungraded") {
        request.mode = gr::RouteMode::ungraded;
    } else if (args.mode == "graded") {
        request.mode = gr::RouteMode::graded;
    } else if (args.mode == "oracle") {
        request.mode = gr::RouteMode::oracle;
    } else {
        throw gr::ParameterError("unknown mode '" + args.mode + "'");
    }
    if (!args.grade_report.empty() && request.mode != gr::RouteMode::graded) {
        throw gr::ParameterError("--grade-report requires --mode graded");
    }

    const gr::RouteReport report =
        gr::route_once(topo, gamma ? &*gamma : nullptr, request);

    std::cout << "mode " << args.mode << "\n";
    std::cout << "source " << args.source << " dest " << args.dest << "\n";
    std::cout << "nodes_total " << report.nodes_total << "\n";
    std::cout << "nodes_considered " << report.nodes_considered << "\n";
    if (request.mode == gr::RouteMode::oracle) {
        std::cout << "paths_examined " << report.paths_examined
                  << (report.truncated ? " (truncated)" : "") << "\n";
    } else {
        std::cout << "iterations_to_converge " << report.iterations_to_converge
                  << "\n";
    }

    if (!args.grade_report.empty()) {
        std::ofstream out(args.grade_report);
        if (!out) {
            throw gr::IoError("cannot open " + args.grade_report + " for writing");
        }
        gr::write_grade_report(topo, report.priorities, *report.subgraph, out);
    }

    if (!report.path.valid) {
        std::cout << "no path found\n";
        return kExitNoPath;
    }
    std::cout << "path " << path_to_string(report.path) << "\n";
    std::cout << "fitness " << gr::format_double(report.fitness) << "\n";

    if (!args.kb_path.empty()) {
        gr::KnowledgeBase kb;
        if (std::filesystem::exists(args.kb_path)) {
            kb = gr::KnowledgeBase::load(std::filesystem::path(args.kb_path));
        }
        gr::RouteRecord record;
        record.source = args.source;
        record.dest = args.dest;
        record.path = report.path.nodes;
        record.fitness = report.fitness;
        record.iterations_to_converge = report.iterations_to_converge;
        record.graded = request.mode == gr::RouteMode::graded;
        record.seed = args.swarm.seed;
        kb.record(record);
        kb.save(std::filesystem::path(args.kb_path));
    }
    return kExitOk;
}

int cmd_compare(CompareArgs& args) {
    if (!args.topology_file.empty()) {
        args.config.topology_file = args.topology_file;
    }
    const gr::CompareOutcome outcome = gr::run_compare(args.config);

    std::printf("%5s %12s %14s %10s %12s %6s %5s\n", "trial", "ungraded_it",
                "ungraded_fit", "graded_it", "graded_fit", "nodes", "kept");
    for (const gr::CompareTrial& tr : outcome.trials) {
        if (!tr.error.empty()) {
            std::printf("%5u failed: %s\n", tr.row.trial, tr.error.c_str());
            continue;
        }
        std::printf("%5u %12u %14.6f %10u %12.6f %6u %5u\n", tr.row.trial,
                    tr.row.ungraded_iterations, tr.row.ungraded_fitness,
                    tr.row.graded_iterations, tr.row.graded_fitness,
                    tr.row.nodes_total, tr.row.nodes_graded);
    }
    std::printf("fraction graded<=ungraded: %.3f\n",
                outcome.fraction_graded_le_ungraded);
    std::printf("median iteration reduction: %.1f\n",
                outcome.median_iteration_reduction);
    std::printf("mean kept/total: %.3f\n", outcome.mean_kept_ratio);

    if (!args.out.empty()) {
        std::ofstream out(args.out);
        if (!out) {
            throw gr::IoError("cannot open " + args.out + " for writing");
        }
        gr::write_compare_csv(outcome, out);
    }
    return kExitOk;
}

int cmd_report(const ReportArgs& args) {
    std::ifstream in(args.in);
    if (!in) {
        throw gr::IoError("cannot open " + args.in);
    }
    const auto rows = gr::read_compare_csv(in);
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        if (!out) {
            throw gr::IoError("cannot open " + args.out + " for writing");
        }
        gr::write_report_csv(rows, out);
    } else {
        gr::write_report_csv(rows, std::cout);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quality-graded swarm routing experiments"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "Write a random topology file");
    add_topology_flags(generate, gen.params);
    generate->add_option("--seed", gen.seed, "Generation seed");
    generate->add_option("--out", gen.out, "Output topology file")->required();

    RouteArgs route;
    CLI::App* route_cmd = app.add_subcommand("route", "Find a route on a topology");
    route_cmd->add_option("--topology", route.topology, "Topology file")->required();
    route_cmd->add_option("--traffic", route.traffic, "Traffic matrix file");
    route_cmd->add_option("--source", route.source, "Source node")->required();
    route_cmd->add_option("--dest", route.dest, "Destination node")->required();
    route_cmd->add_option("--mode", route.mode, "ungraded | graded | oracle");
    add_swarm_flags(route_cmd, route.swarm);
    route_cmd->add_option("--seed", route.swarm.seed, "Swarm seed");
    route_cmd->add_option("--mu", route.mu, "Service rate scale");
    route_cmd->add_option("--delay-threshold", route.delay_threshold,
                          "Node delay flag threshold");
    route_cmd->add_option("--util-threshold", route.util_threshold,
                          "Link utilisation flag threshold");
    route_cmd->add_option("--kb", route.kb_path, "Knowledge base file to update");
    route_cmd->add_option("--grade-report", route.grade_report,
                          "Write per-node grade CSV (graded mode)");

    CompareArgs cmp;
    CLI::App* compare =
        app.add_subcommand("compare", "Paired graded vs ungraded trials");
    add_topology_flags(compare, cmp.config.topology);
    compare->add_option("--topology", cmp.topology_file,
                        "Use this topology file for every trial");
    compare->add_option("--trials", cmp.config.trial_count, "Number of trials");
    compare->add_option("--seed", cmp.config.master_seed, "Master seed");
    add_swarm_flags(compare, cmp.config.swarm);
    compare->add_option("--demand-density", cmp.config.demand.density,
                        "Probability an ordered pair carries traffic");
    compare->add_option("--gamma-min", cmp.config.demand.gamma_min,
                        "Demand rate lower bound");
    compare->add_option("--gamma-max", cmp.config.demand.gamma_max,
                        "Demand rate upper bound");
    compare->add_option("--mu", cmp.config.mu, "Service rate scale");
    compare->add_option("--delay-threshold", cmp.config.delay_threshold,
                        "Node delay flag threshold");
    compare->add_option("--util-threshold", cmp.config.util_threshold,
                        "Link utilisation flag threshold");
    compare->add_option("--out", cmp.out, "Comparison CSV path");

    ReportArgs rep;
    CLI::App* report = app.add_subcommand("report", "Aggregate a comparison CSV");
    report->add_option("--in", rep.in, "Comparison CSV")->required();
    report->add_option("--out", rep.out, "Aggregate CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(gen);
        }
        if (route_cmd->parsed()) {
            return cmd_route(route);
        }
        if (compare->parsed()) {
            return cmd_compare(cmp);
        }
        return cmd_report(rep);
    } catch (const gr::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gr::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const gr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
