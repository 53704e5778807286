#include "sagin/metrics.hpp"

#include <stdexcept>
#include <string>

namespace sagin {

std::optional<double> duty_endurance_hours(const NetworkState& state, const Network& net,
                                           NodeId node, const EnergyModel& model) {
  if (model.battery_wh <= 0.0 || model.power_per_vnf_mission_w <= 0.0) {
    throw std::invalid_argument("energy model parameters must be strictly positive");
  }
  if (node < 0 || node >= net.node_count()) {
    throw std::invalid_argument("duty endurance of unknown node " + std::to_string(node));
  }
  if (net.node(node).segment != SegmentKind::Air) {
    throw std::domain_error("duty endurance of ground node " + std::to_string(node));
  }
  int pairs = 0;
  for (const auto& [key, refs] : state.instances) {
    if (key.first == node) pairs += refs;
  }
  if (pairs == 0) return std::nullopt;
  return model.battery_wh / (model.power_per_vnf_mission_w * pairs);
}

MetricsReport aggregate_metrics(const SolveOutcome& outcome, const std::vector<Mission>& missions,
                                const Network& net, const EnergyModel& model) {
  if (outcome.results.size() != missions.size()) {
    throw std::logic_error("aggregate_metrics: outcome does not match the mission list");
  }
  MetricsReport rep;
  rep.total_missions = static_cast<int>(missions.size());

  for (std::size_t i = 0; i < missions.size(); ++i) {
    const MissionResult& r = outcome.results[i];
    const Mission& m = missions[i];
    if (!r.accepted) {
      ++rep.blocked_count;
      continue;
    }
    ++rep.accepted_count;
    const CostBreakdown& c = r.embedding->cost;
    rep.bandwidth_cost_total += c.bandwidth_cost;
    rep.a2g_bandwidth_cost += c.a2g_bandwidth_cost;
    rep.computation_cost_total += c.new_install_cost + c.processing_cost;

    bool offloaded = false;
    for (NodeId host : r.embedding->placement.assignment) {
      if (net.node(host).segment != m.origin) {
        offloaded = true;
        break;
      }
    }
    const bool air = m.origin == SegmentKind::Air;
    const bool ds = m.mission_class == MissionClass::DelaySensitive;
    OffloadStat& overall = air ? rep.offload_air : rep.offload_ground;
    OffloadStat& by_class =
        air ? (ds ? rep.offload_air_delay_sensitive : rep.offload_air_computation_intensive)
            : (ds ? rep.offload_ground_delay_sensitive : rep.offload_ground_computation_intensive);
    ++overall.accepted;
    ++by_class.accepted;
    if (offloaded) {
      ++overall.offloaded;
      ++by_class.offloaded;
    }
  }

  rep.blocking_rate = rep.total_missions == 0
                          ? 0.0
                          : static_cast<double>(rep.blocked_count) / rep.total_missions;
  if (rep.accepted_count > 0) {
    rep.computation_cost_per_completed = rep.computation_cost_total / rep.accepted_count;
  }

  for (const Node& n : net.nodes()) {
    if (n.segment != SegmentKind::Air) continue;
    AirEndurance e;
    e.node = n.id;
    for (const auto& [key, refs] : outcome.state.instances) {
      if (key.first == n.id) e.service_pairs += refs;
    }
    e.hours = duty_endurance_hours(outcome.state, net, n.id, model);
    if (e.hours && (!rep.min_endurance_hours || *e.hours < *rep.min_endurance_hours)) {
      rep.min_endurance_hours = e.hours;
    }
    rep.endurance.push_back(e);
  }
  return rep;
}

}  // namespace sagin
