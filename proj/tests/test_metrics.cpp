#include <stdexcept>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "sagin/embedding.hpp"
#include "sagin/metrics.hpp"
#include "sagin/mission.hpp"
#include "sagin/network.hpp"
#include "sagin/solvers.hpp"

using namespace sagin;

namespace {

const VnfCatalog& cat() {
  static VnfCatalog c = VnfCatalog::default_catalog();
  return c;
}

std::vector<Mission> random_missions(std::uint64_t seed, const Network& net, int count) {
  GeneratorConfig cfg;
  cfg.mission_count = count;
  return generate_missions(seed, net, cat(), cfg);
}

}  // namespace

TEST_CASE("duty endurance follows battery over drawn power") {
  const Network net = build_case_study_network(42);
  const NodeId air = 7;
  NetworkState state(net);
  const EnergyModel model;  // 100 Wh, 0.2 W per instance-mission pair

  SUBCASE("idle node runs forever") {
    CHECK_FALSE(duty_endurance_hours(state, net, air, model).has_value());
  }
  SUBCASE("ten service pairs give fifty hours") {
    state.instances[{air, 0}] = 4;
    state.instances[{air, 2}] = 6;
    const auto hours = duty_endurance_hours(state, net, air, model);
    REQUIRE(hours.has_value());
    CHECK(*hours == 50.0);  // 100 / (0.2 * 10)
  }
  SUBCASE("one service pair gives five hundred hours") {
    state.instances[{air, 3}] = 1;
    const auto hours = duty_endurance_hours(state, net, air, model);
    REQUIRE(hours.has_value());
    CHECK(*hours == 500.0);
  }
  SUBCASE("other nodes' instances do not count") {
    state.instances[{8, 0}] = 7;
    state.instances[{0, 0}] = 3;
    CHECK_FALSE(duty_endurance_hours(state, net, air, model).has_value());
  }
  SUBCASE("ground nodes have no battery to drain") {
    CHECK_THROWS_AS(duty_endurance_hours(state, net, 0, model), std::domain_error);
  }
  SUBCASE("the model must be positive") {
    EnergyModel broken = model;
    broken.power_per_vnf_mission_w = 0.0;
    CHECK_THROWS_AS(duty_endurance_hours(state, net, air, broken), std::invalid_argument);
    broken = model;
    broken.battery_wh = -1.0;
    CHECK_THROWS_AS(duty_endurance_hours(state, net, air, broken), std::invalid_argument);
    CHECK_THROWS_AS(duty_endurance_hours(state, net, 99, model), std::invalid_argument);
  }
}

TEST_CASE("additional commitments never extend endurance") {
  const Network net = build_case_study_network(11);
  const auto missions = random_missions(25, net, 20);
  NetworkState state(net);
  const EnergyModel model;
  std::vector<double> last(2, 1e18);
  for (const Mission& m : missions) {
    auto best = best_candidate(m, net, cat(), state, {});
    if (!best) continue;
    commit(*best, m, net, cat(), state);
    for (int k = 0; k < 2; ++k) {
      const NodeId air = 7 + k;
      const auto hours = duty_endurance_hours(state, net, air, model);
      const double now = hours.value_or(1e18);
      CHECK(now <= last[static_cast<std::size_t>(k)]);
      last[static_cast<std::size_t>(k)] = now;
    }
  }
}

TEST_CASE("an all-blocked outcome reports rate one and undefined unit cost") {
  const Network net = build_case_study_network(42);
  auto missions = random_missions(5, net, 4);
  for (Mission& m : missions) m.bandwidth_demand_mbps = 500.0;  // nothing fits
  const auto outcome = solve_greedy_sequential(missions, net, cat(), OffloadPolicy::BDO);
  REQUIRE(outcome.accepted_count == 0);
  const auto report = aggregate_metrics(outcome, missions, net, {});
  CHECK(report.total_missions == 4);
  CHECK(report.blocked_count == 4);
  CHECK(report.blocking_rate == 1.0);
  CHECK_FALSE(report.computation_cost_per_completed.has_value());
  CHECK(report.bandwidth_cost_total == 0.0);
  CHECK_FALSE(report.min_endurance_hours.has_value());
  for (const AirEndurance& e : report.endurance) {
    CHECK(e.service_pairs == 0);
    CHECK_FALSE(e.hours.has_value());
  }
}

TEST_CASE("an empty mission list reports rate zero") {
  const Network net = build_case_study_network(42);
  const auto outcome = solve_greedy_sequential({}, net, cat(), OffloadPolicy::BDO);
  const auto report = aggregate_metrics(outcome, {}, net, {});
  CHECK(report.total_missions == 0);
  CHECK(report.blocking_rate == 0.0);
  CHECK_FALSE(report.computation_cost_per_completed.has_value());
}

TEST_CASE("report totals recompute from the outcome") {
  const Network net = build_case_study_network(42);
  const auto missions = random_missions(7, net, 25);
  for (OffloadPolicy policy : {OffloadPolicy::BDO, OffloadPolicy::NoBDO}) {
    CAPTURE(to_string(policy));
    const auto outcome = solve_greedy_sequential(missions, net, cat(), policy);
    const auto report = aggregate_metrics(outcome, missions, net, {});

    CHECK(report.total_missions == 25);
    CHECK(report.accepted_count == outcome.accepted_count);
    CHECK(report.blocked_count == 25 - outcome.accepted_count);
    CHECK(report.blocking_rate ==
          static_cast<double>(report.blocked_count) / report.total_missions);

    double bw = 0.0, a2g = 0.0, comp = 0.0;
    int air_acc = 0, air_off = 0, ground_acc = 0, ground_off = 0;
    for (std::size_t i = 0; i < missions.size(); ++i) {
      const MissionResult& r = outcome.results[i];
      if (!r.accepted) continue;
      bw += r.embedding->cost.bandwidth_cost;
      a2g += r.embedding->cost.a2g_bandwidth_cost;
      comp += r.embedding->cost.new_install_cost + r.embedding->cost.processing_cost;
      bool off = false;
      for (NodeId host : r.embedding->placement.assignment) {
        off |= net.node(host).segment != missions[i].origin;
      }
      if (missions[i].origin == SegmentKind::Air) {
        ++air_acc;
        air_off += off;
      } else {
        ++ground_acc;
        ground_off += off;
      }
    }
    CHECK(report.bandwidth_cost_total == bw);
    CHECK(report.a2g_bandwidth_cost == a2g);
    CHECK(report.computation_cost_total == comp);
    CHECK(report.a2g_bandwidth_cost <= report.bandwidth_cost_total);
    if (report.accepted_count > 0) {
      REQUIRE(report.computation_cost_per_completed.has_value());
      CHECK(*report.computation_cost_per_completed == comp / report.accepted_count);
    }
    CHECK(report.offload_air.accepted == air_acc);
    CHECK(report.offload_air.offloaded == air_off);
    CHECK(report.offload_ground.accepted == ground_acc);
    CHECK(report.offload_ground.offloaded == ground_off);
    CHECK(report.offload_air_delay_sensitive.accepted +
              report.offload_air_computation_intensive.accepted ==
          air_acc);
    CHECK(report.offload_ground_delay_sensitive.accepted +
              report.offload_ground_computation_intensive.accepted ==
          ground_acc);

    // endurance entries: air nodes ascending, consistent with the state
    REQUIRE(report.endurance.size() == 2);
    CHECK(report.endurance[0].node == 7);
    CHECK(report.endurance[1].node == 8);
    std::optional<double> min;
    for (const AirEndurance& e : report.endurance) {
      int pairs = 0;
      for (const auto& [key, count] : outcome.state.instances) {
        if (key.first == e.node) pairs += count;
      }
      CHECK(e.service_pairs == pairs);
      const auto direct = duty_endurance_hours(outcome.state, net, e.node, {});
      CHECK(e.hours == direct);
      if (e.hours && (!min || *e.hours < *min)) min = *e.hours;
    }
    CHECK(report.min_endurance_hours == min);

    if (policy == OffloadPolicy::NoBDO) {
      // hosting is pinned to the origin segment, so nothing counts as offloaded
      CHECK(report.offload_air.offloaded == 0);
      CHECK(report.offload_ground.offloaded == 0);
    }
  }
}

TEST_CASE("offload ratios partition by class") {
  OffloadStat s;
  CHECK_FALSE(s.ratio().has_value());
  s.accepted = 4;
  s.offloaded = 1;
  CHECK(*s.ratio() == 0.25);
}

TEST_CASE("unit computation cost on a hand-built outcome") {
  // two accepted missions with computation costs 60 and 40 -> 50 per mission
  const Network net = build_case_study_network(42);
  SolveOutcome outcome(net);
  GeneratorConfig cfg;
  cfg.mission_count = 2;
  cfg.ground_origin_fraction = 1.0;
  auto missions = generate_missions(19, net, cat(), cfg);

  MissionResult r0;
  r0.mission_id = 0;
  r0.accepted = true;
  Embedding e0;
  e0.mission_id = 0;
  e0.cost.new_install_cost = 30.0;
  e0.cost.processing_cost = 30.0;
  e0.cost.bandwidth_cost = 5.0;
  e0.cost.total = 65.0;
  e0.placement.assignment = {0, 0, 0};
  r0.embedding = e0;

  MissionResult r1 = r0;
  r1.mission_id = 1;
  r1.embedding->mission_id = 1;
  r1.embedding->cost.new_install_cost = 0.0;
  r1.embedding->cost.processing_cost = 40.0;
  r1.embedding->cost.total = 45.0;

  outcome.results = {r0, r1};
  outcome.accepted_count = 2;
  missions[0].chain = {0, 1, 2};
  missions[1].chain = {0, 1, 2};

  const auto report = aggregate_metrics(outcome, missions, net, {});
  CHECK(report.computation_cost_total == 100.0);
  REQUIRE(report.computation_cost_per_completed.has_value());
  CHECK(*report.computation_cost_per_completed == 50.0);
  CHECK(report.bandwidth_cost_total == 10.0);
}

TEST_CASE("the report insists on aligned inputs") {
  const Network net = build_case_study_network(42);
  const auto missions = random_missions(3, net, 5);
  const auto outcome = solve_greedy_sequential(missions, net, cat(), OffloadPolicy::BDO);
  const std::vector<Mission> fewer(missions.begin(), missions.begin() + 3);
  CHECK_THROWS_AS(aggregate_metrics(outcome, fewer, net, {}), std::logic_error);
}
