#include "graderoute/traffic.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "graderoute/errors.hpp"
#include "graderoute/text.hpp"

namespace graderoute {

void TrafficMatrix::set(NodeId j, NodeId k, double gamma) {
    if (j >= n_ || k >= n_) {
        throw LookupError("demand references unknown node");
    }
    if (j == k) {
        throw ParameterError("demand diagonal must stay zero");
    }
    if (gamma < 0.0) {
        throw ParameterError("demand must be non-negative");
    }
    demand_[std::size_t(j) * n_ + k] = gamma;
}

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Hop distance from every node to `target`.
std::vector<std::uint32_t> hop_distances(const Topology& t, NodeId target) {
    std::vector<std::uint32_t> dist(t.node_count(), kUnreached);
    std::deque<NodeId> queue{target};
    dist[target] = 0;
    while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        for (const Neighbor& nb : t.neighbors(cur)) {
            if (dist[nb.id] == kUnreached) {
                dist[nb.id] = dist[cur] + 1;
                queue.push_back(nb.id);
            }
        }
    }
    return dist;
}

} // namespace

std::vector<double> compute_flows(const Topology& t, const TrafficMatrix& gamma) {
    if (gamma.node_count() != t.node_count()) {
        throw ParameterError("traffic matrix dimension does not match node count");
    }
    std::vector<double> flows(t.links().size(), 0.0);
    for (NodeId k = 0; k < t.node_count(); ++k) {
        bool wanted = false;
        for (NodeId j = 0; j < t.node_count() && !wanted; ++j) {
            wanted = gamma.at(j, k) > 0.0;
        }
        if (!wanted) {
            continue;
        }
        const auto dist = hop_distances(t, k);
        for (NodeId j = 0; j < t.node_count(); ++j) {
            const double g = gamma.at(j, k);
            if (g <= 0.0) {
                continue;
            }
            if (dist[j] == kUnreached) {
                throw RoutingError("no route for demand " + std::to_string(j) +
                                   " -> " + std::to_string(k));
            }
            // Walking to the smallest-id neighbor one hop closer at each
            // step yields the lexicographically smallest min-hop path.
            NodeId cur = j;
            while (cur != k) {
                for (const Neighbor& nb : t.neighbors(cur)) {
                    if (dist[nb.id] + 1 == dist[cur]) {
                        flows[nb.link] += g;
                        cur = nb.id;
                        break;
                    }
                }
            }
        }
    }
    return flows;
}

TrafficModel build_traffic_model(const Topology& t, TrafficMatrix gamma, double mu) {
    if (mu <= 0.0) {
        throw ParameterError("mu must be positive");
    }
    auto flows = compute_flows(t, gamma);
    return TrafficModel{std::move(gamma), mu, std::move(flows)};
}

double total_delay(std::span<const double> flows, double mu, const Topology& t,
                   std::span<const LinkIndex> link_subset) {
    double sum = 0.0;
    for (LinkIndex i : link_subset) {
        if (i >= flows.size() || i >= t.links().size()) {
            throw LookupError("unknown link index " + std::to_string(i));
        }
        const double lambda = flows[i];
        const double service = mu * t.link(i).capacity;
        if (lambda >= service) {
            const Link& l = t.link(i);
            throw SaturationError("link " + std::to_string(l.u) + "-" +
                                      std::to_string(l.v) + " saturated: lambda " +
                                      format_double(lambda) + " >= mu*C " +
                                      format_double(service),
                                  i);
        }
        sum += lambda / (service - lambda);
    }
    return sum;
}

double total_delay(std::span<const double> flows, double mu, const Topology& t) {
    std::vector<LinkIndex> all(t.links().size());
    for (LinkIndex i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return total_delay(flows, mu, t, all);
}

std::vector<NodeDynamics> derive_dynamics(const Topology& t, const TrafficModel& model,
                                          double delay_threshold, double util_threshold) {
    if (model.flows.size() != t.links().size()) {
        throw ParameterError("flow vector does not match link count");
    }
    if (delay_threshold <= 0.0 || util_threshold <= 0.0 || util_threshold >= 1.0) {
        throw ParameterError("invalid dynamics thresholds");
    }
    std::vector<NodeDynamics> out(t.node_count());
    for (NodeId n = 0; n < t.node_count(); ++n) {
        NodeDynamics& d = out[n];
        d.density = t.in_degree(n);
        double delay_sum = 0.0;
        double max_util = 0.0;
        bool saturated = false;
        for (const Neighbor& nb : t.neighbors(n)) {
            const double lambda = model.flows[nb.link];
            const double service = model.mu * t.link(nb.link).capacity;
            if (lambda >= service) {
                saturated = true;
                break;
            }
            delay_sum += lambda / (service - lambda);
            max_util = std::max(max_util, lambda / service);
        }
        d.delay_present = saturated || delay_sum > delay_threshold;
        d.congestion_present = saturated || max_util > util_threshold;
    }
    return out;
}

void save_traffic(const TrafficMatrix& gamma, std::ostream& out) {
    out << "traffic v1\n";
    for (NodeId j = 0; j < gamma.node_count(); ++j) {
        for (NodeId k = 0; k < gamma.node_count(); ++k) {
            if (gamma.at(j, k) > 0.0) {
                out << "demand " << j << " " << k << " "
                    << format_double(gamma.at(j, k)) << "\n";
            }
        }
    }
}

void save_traffic(const TrafficMatrix& gamma, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    save_traffic(gamma, out);
    if (!out.flush()) {
        throw IoError("write failed for " + path.string());
    }
}

TrafficMatrix load_traffic(std::istream& in, std::uint32_t node_count) {
    LineScanner scanner(in);
    if (!scanner.next() || scanner.line() != "traffic v1") {
        throw ParseError("expected header 'traffic v1'", scanner.line_number());
    }
    TrafficMatrix gamma(node_count);
    while (scanner.next()) {
        auto tok = split_ws(scanner.line());
        const int ln = scanner.line_number();
        NodeId j = 0;
        NodeId k = 0;
        double g = 0.0;
        if (tok.size() != 4 || tok[0] != "demand" || !parse_u32(tok[1], j) ||
            !parse_u32(tok[2], k) || !parse_double(tok[3], g)) {
            throw ParseError("malformed demand line", ln);
        }
        if (j >= node_count || k >= node_count) {
            throw ValidationError("demand references unknown node at line " +
                                  std::to_string(ln));
        }
        if (j == k || g < 0.0) {
            throw ValidationError("invalid demand at line " + std::to_string(ln));
        }
        if (gamma.at(j, k) != 0.0) {
            throw ValidationError("duplicate demand at line " + std::to_string(ln));
        }
        gamma.set(j, k, g);
    }
    return gamma;
}

TrafficMatrix load_traffic(const std::filesystem::path& path, std::uint32_t node_count) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return load_traffic(in, node_count);
}

} // namespace graderoute
