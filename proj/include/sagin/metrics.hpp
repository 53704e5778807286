#ifndef SAGIN_METRICS_HPP
#define SAGIN_METRICS_HPP

#include <optional>
#include <vector>

#include "sagin/network.hpp"
#include "sagin/solvers.hpp"

namespace sagin {

// Air-node battery drained only by VNF instances serving missions.
struct EnergyModel {
  double battery_wh = 100.0;
  double power_per_vnf_mission_w = 0.2;
};

// std::nullopt means no service pair draws power, i.e. endurance is
// unlimited.
struct AirEndurance {
  NodeId node = -1;
  int service_pairs = 0;  // sum of instance refcounts on the node
  std::optional<double> hours;
};

// Offload counts for one slice of the accepted missions. A mission counts
// as offloaded when at least one chain VNF is hosted off its origin
// segment. ratio() is undefined (nullopt) for an empty slice.
struct OffloadStat {
  int accepted = 0;
  int offloaded = 0;

  std::optional<double> ratio() const {
    if (accepted == 0) return std::nullopt;
    return static_cast<double>(offloaded) / accepted;
  }
};

struct MetricsReport {
  int total_missions = 0;
  int accepted_count = 0;
  int blocked_count = 0;
  double blocking_rate = 0.0;  // 0 when total_missions == 0

  double bandwidth_cost_total = 0.0;
  double a2g_bandwidth_cost = 0.0;
  double computation_cost_total = 0.0;                   // installs + processing
  std::optional<double> computation_cost_per_completed;  // nullopt when none accepted

  std::vector<AirEndurance> endurance;       // one entry per air node, id ascending
  std::optional<double> min_endurance_hours; // nullopt when every air node is idle

  OffloadStat offload_air;     // accepted air-origin missions
  OffloadStat offload_ground;  // accepted ground-origin missions
  OffloadStat offload_air_delay_sensitive;
  OffloadStat offload_air_computation_intensive;
  OffloadStat offload_ground_delay_sensitive;
  OffloadStat offload_ground_computation_intensive;
};

// Hours until the node's battery is drained by its service pairs;
// nullopt when nothing draws. Throws std::domain_error for ground nodes and
// std::invalid_argument for a non-positive energy model.
std::optional<double> duty_endurance_hours(const NetworkState& state, const Network& net,
                                           NodeId node, const EnergyModel& model);

// Rolls one solve outcome up into the full report. missions must be the
// list the outcome was produced from (index-aligned results).
MetricsReport aggregate_metrics(const SolveOutcome& outcome, const std::vector<Mission>& missions,
                                const Network& net, const EnergyModel& model);

}  // namespace sagin

#endif  // SAGIN_METRICS_HPP
