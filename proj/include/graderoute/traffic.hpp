#ifndef GRADEROUTE_TRAFFIC_HPP
#define GRADEROUTE_TRAFFIC_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "graderoute/topology.hpp"

namespace graderoute {

// External offered traffic: demand(j,k) messages/sec entering at j bound
// for k. Diagonal stays zero.
class TrafficMatrix {
public:
    explicit TrafficMatrix(std::uint32_t node_count)
        : n_(node_count), demand_(std::size_t(node_count) * node_count, 0.0) {}

    std::uint32_t node_count() const { return n_; }
    double at(NodeId j, NodeId k) const { return demand_[std::size_t(j) * n_ + k]; }
    void set(NodeId j, NodeId k, double gamma);

    bool operator==(const TrafficMatrix&) const = default;

private:
    std::uint32_t n_ = 0;
    std::vector<double> demand_;
};

struct TrafficModel {
    TrafficMatrix gamma;
    double mu = 1.0;                // 1 / mean message length
    std::vector<double> flows;      // lambda per link index
};

struct NodeDynamics {
    bool delay_present = false;
    bool congestion_present = false;
    std::uint32_t density = 0;
};

// Routes every positive demand along its minimum-hop path (ties broken by
// the lexicographically smallest node sequence) and accumulates the per-link
// message rates. Throws RoutingError when a demand pair is disconnected.
std::vector<double> compute_flows(const Topology& t, const TrafficMatrix& gamma);

TrafficModel build_traffic_model(const Topology& t, TrafficMatrix gamma, double mu);

// Sum of lambda/(mu*C - lambda) over the given links. Throws SaturationError
// on any included link with lambda >= mu*C.
double total_delay(std::span<const double> flows, double mu, const Topology& t,
                   std::span<const LinkIndex> link_subset);
double total_delay(std::span<const double> flows, double mu, const Topology& t);

// Per-node observables. A node sees delay when the summed delay terms of its
// incident links exceed delay_threshold, congestion when any incident link
// utilisation lambda/(mu*C) exceeds util_threshold. Saturated incident links
// force both flags instead of erroring. density = in_degree.
std::vector<NodeDynamics> derive_dynamics(const Topology& t, const TrafficModel& model,
                                          double delay_threshold, double util_threshold);

// Line format: 'traffic v1' header, then `demand <j> <k> <gamma>`.
// Omitted pairs are zero.
void save_traffic(const TrafficMatrix& gamma, std::ostream& out);
void save_traffic(const TrafficMatrix& gamma, const std::filesystem::path& path);
TrafficMatrix load_traffic(std::istream& in, std::uint32_t node_count);
TrafficMatrix load_traffic(const std::filesystem::path& path, std::uint32_t node_count);

} // namespace graderoute

#endif
