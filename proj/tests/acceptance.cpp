// Acceptance gate: nine end-to-end checks, one PASS/FAIL line each.
// Exit status is the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sagin/embedding.hpp"
#include "sagin/harness.hpp"
#include "sagin/metrics.hpp"
#include "sagin/mission.hpp"
#include "sagin/network.hpp"
#include "sagin/rng.hpp"
#include "sagin/solvers.hpp"

using namespace sagin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones are usually echoes of it.
void expect(Outcome& o, bool cond, const std::string& msg) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = msg;
  }
}

const VnfCatalog& cat() {
  static VnfCatalog c = VnfCatalog::default_catalog();
  return c;
}

EnumerationOptions policy_options(const SolveOptions& options, const Mission& m,
                                  OffloadPolicy policy) {
  EnumerationOptions out;
  out.limits = options.limits;
  out.weights = options.weights;
  out.multipliers = options.multipliers;
  if (policy == OffloadPolicy::NoBDO) out.hosting_restriction = m.origin;
  return out;
}

// ---- 1: generator parameter bounds ----------------------------------------
Outcome check_parameter_bounds() {
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 100 && o.pass; ++seed) {
    const Network net = build_case_study_network(seed);
    for (const Link& l : net.links()) {
      expect(o, l.bandwidth_mbps >= 80.0 && l.bandwidth_mbps <= 100.0,
             "link bandwidth out of [80,100] at seed " + std::to_string(seed));
      expect(o, l.delay_ms >= 10.0 && l.delay_ms <= 15.0,
             "link delay out of [10,15] at seed " + std::to_string(seed));
    }
    for (const Node& n : net.nodes()) {
      expect(o, n.compute_gflops >= 500.0 && n.compute_gflops <= 600.0,
             "node compute out of [500,600] at seed " + std::to_string(seed));
      if (n.segment == SegmentKind::Air) {
        expect(o, n.battery_wh.has_value() && *n.battery_wh == 100.0,
               "air battery != 100 Wh at seed " + std::to_string(seed));
      }
    }
    GeneratorConfig cfg;
    cfg.mission_count = 20;
    for (const Mission& m : generate_missions(seed, net, cat(), cfg)) {
      expect(o, m.chain.size() >= 3 && m.chain.size() <= 6,
             "chain length out of [3,6] at seed " + std::to_string(seed));
      expect(o, validate_mission(m, net, cat()).empty(),
             "generated mission fails validation at seed " + std::to_string(seed));
    }
  }
  const EnergyModel e;
  expect(o, e.battery_wh == 100.0 && e.power_per_vnf_mission_w == 0.2,
         "default energy model is not 100 Wh / 0.2 W");
  return o;
}

// ---- 2: candidate enumeration vs brute force -------------------------------
Outcome check_candidate_oracle() {
  Outcome o;
  int instances = 0;
  std::uint64_t seed = 1;
  while (instances < 50 && o.pass) {
    const Network net = build_case_study_network(seed);
    GeneratorConfig cfg;
    cfg.mission_count = 2;
    cfg.chain_len_max = 4;
    const auto missions = generate_missions(seed * 3 + 1, net, cat(), cfg);
    const OffloadPolicy policy = seed % 2 ? OffloadPolicy::BDO : OffloadPolicy::NoBDO;
    NetworkState state(net);
    for (const Mission& m : missions) {
      EnumerationOptions opt;
      opt.limits.max_hops = 4;
      opt.limits.k_paths = 1000000;  // the oracle has no route cap
      if (policy == OffloadPolicy::NoBDO) opt.hosting_restriction = m.origin;
      const auto got = enumerate_candidates(m, net, cat(), state, opt);
      const auto want = oracle::candidates(m, net, cat(), state, opt);
      expect(o, got.size() == want.size(),
             "candidate count mismatch at seed " + std::to_string(seed) + " mission " +
                 std::to_string(m.id) + ": " + std::to_string(got.size()) + " vs " +
                 std::to_string(want.size()));
      for (std::size_t i = 0; o.pass && i < got.size(); ++i) {
        expect(o, got[i] == want[i],
               "candidate " + std::to_string(i) + " differs at seed " + std::to_string(seed));
      }
      ++instances;
      if (!got.empty()) commit(got.front(), m, net, cat(), state);  // vary the state
      if (instances == 50) break;
    }
    ++seed;
  }
  return o;
}

// ---- 3: exact solver vs exhaustive search ----------------------------------
Outcome check_exact_oracle() {
  Outcome o;
  SolveOptions options;
  options.limits.max_hops = 2;
  options.limits.k_paths = 1;

  int instances = 0;
  std::uint64_t seed = 500;
  while (instances < 30 && o.pass) {
    if (seed > 5000) {
      expect(o, false, "could not find 30 qualifying instances");
      break;
    }
    const Network net = build_case_study_network(seed);
    GeneratorConfig cfg;
    cfg.mission_count = 3 + static_cast<int>(seed % 4);  // 3..6 missions
    cfg.chain_len_max = 3;
    const auto missions = generate_missions(seed * 7 + 5, net, cat(), cfg);
    const OffloadPolicy policy = seed % 2 ? OffloadPolicy::BDO : OffloadPolicy::NoBDO;
    ++seed;

    const NetworkState empty(net);
    std::vector<std::vector<Embedding>> lists;
    bool small = true;
    for (const Mission& m : missions) {
      lists.push_back(enumerate_candidates(m, net, cat(), empty,
                                           policy_options(options, m, policy)));
      small = small && lists.back().size() <= 6;
    }
    if (!small) continue;  // keep the exhaustive walk honest and tiny

    const auto outcome = solve_exact_batch(missions, net, cat(), policy, options);
    expect(o, outcome.optimal, "exact solver ran out of budget on a tiny instance");
    const auto best =
        oracle::exhaustive_solve(missions, net, cat(), lists, options.weights,
                                 options.multipliers);
    expect(o, outcome.accepted_count == best.accepted,
           "accepted count " + std::to_string(outcome.accepted_count) + " vs exhaustive " +
               std::to_string(best.accepted) + " at seed " + std::to_string(seed - 1));
    const double tol = 1e-9 * std::max(1.0, std::abs(best.total));
    expect(o, std::abs(outcome.total_cost.total - best.total) <= tol,
           "total cost off by more than 1e-9 relative at seed " + std::to_string(seed - 1));
    ++instances;
  }
  return o;
}

// ---- 4: policy and solver monotonicity -------------------------------------
Outcome check_monotonicity() {
  Outcome o;
  SolveOptions options;
  options.limits.max_hops = 3;
  options.limits.k_paths = 3;
  options.max_search_nodes = 500000;

  for (int i = 1; i <= 100 && o.pass; ++i) {
    const Network net = build_case_study_network(1000 + static_cast<std::uint64_t>(i));
    GeneratorConfig cfg;
    cfg.mission_count = 4;
    cfg.chain_len_max = 4;
    const auto missions =
        generate_missions(static_cast<std::uint64_t>(i) * 13 + 2, net, cat(), cfg);

    const auto greedy_b = solve_greedy_sequential(missions, net, cat(), OffloadPolicy::BDO, options);
    const auto greedy_n =
        solve_greedy_sequential(missions, net, cat(), OffloadPolicy::NoBDO, options);
    const auto exact_b = solve_exact_batch(missions, net, cat(), OffloadPolicy::BDO, options);
    const auto exact_n = solve_exact_batch(missions, net, cat(), OffloadPolicy::NoBDO, options);

    expect(o, exact_b.optimal && exact_n.optimal,
           "exact solver budget exhausted at instance " + std::to_string(i));
    expect(o, exact_b.accepted_count >= exact_n.accepted_count,
           "restricting offloading increased acceptance at instance " + std::to_string(i));
    expect(o, greedy_b.accepted_count <= exact_b.accepted_count,
           "greedy beat exact (bdo) at instance " + std::to_string(i));
    expect(o, greedy_n.accepted_count <= exact_n.accepted_count,
           "greedy beat exact (nobdo) at instance " + std::to_string(i));
  }
  return o;
}

// ---- 5 & 6: the default policy sweep and its trends ------------------------
struct SweepData {
  ComparisonReport report;
  double seconds = 0.0;
};

SweepData run_default_sweep() {
  SweepData d;
  const Scenario s;  // defaults: counts 10..40 step 5, seeds 1..20, greedy-ls
  const auto t0 = std::chrono::steady_clock::now();
  d.report = compare_bdo(s);
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return d;
}

Outcome check_cost_trends(const SweepData& sweep) {
  Outcome o;
  expect(o, sweep.seconds < 300.0,
         "sweep took " + std::to_string(sweep.seconds) + " s (budget 300)");
  for (const CountSummary& cs : sweep.report.summaries) {
    const std::string at = " at count " + std::to_string(cs.mission_count);
    expect(o, cs.bdo.blocking_rate.mean <= cs.nobdo.blocking_rate.mean + 1e-12,
           "mean blocking rate higher with offloading" + at);
    if (cs.mission_count >= 20) {
      expect(o, cs.bdo.cost_per_completed.n > 0 && cs.nobdo.cost_per_completed.n > 0,
             "cost per completed mission undefined" + at);
      expect(o, cs.bdo.cost_per_completed.mean < cs.nobdo.cost_per_completed.mean,
             "offloading did not reduce mean cost per completed mission" + at);
    }
    expect(o, cs.bdo.a2g_cost.mean > cs.nobdo.a2g_cost.mean,
           "offloading did not add air-ground bandwidth cost" + at);
  }
  return o;
}

Outcome check_endurance_trends(const SweepData& sweep) {
  Outcome o;
  const auto& summaries = sweep.report.summaries;
  // The per-count value is a mean of a min-statistic over 20 seeds, so the
  // decline is judged against sampling error: a step may rise by at most one
  // standard error of the difference of the adjacent means.
  for (std::size_t i = 0; i + 1 < summaries.size(); ++i) {
    const MeanStd& a = summaries[i].nobdo.min_endurance_capped;
    const MeanStd& b = summaries[i + 1].nobdo.min_endurance_capped;
    const double sem = std::sqrt(a.stddev * a.stddev / std::max(a.n, 1) +
                                 b.stddev * b.stddev / std::max(b.n, 1));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "endurance without offloading rose from count %d to %d "
                  "(%.3f -> %.3f h, allowance %.3f)",
                  summaries[i].mission_count, summaries[i + 1].mission_count, a.mean, b.mean, sem);
    expect(o, b.mean <= a.mean + sem, buf);
  }
  for (const CountSummary& cs : summaries) {
    expect(o, cs.bdo.min_endurance_capped.mean >= cs.nobdo.min_endurance_capped.mean - 1e-12,
           "offloading shortened mean endurance at count " + std::to_string(cs.mission_count));
  }

  // class-level offload ratios, pooled over every offloading-enabled cell
  OffloadStat air_ds, air_ci, ground_ds, ground_ci;
  for (const CellResult& c : sweep.report.cells) {
    if (c.policy != OffloadPolicy::BDO) continue;
    air_ds.accepted += c.metrics.offload_air_delay_sensitive.accepted;
    air_ds.offloaded += c.metrics.offload_air_delay_sensitive.offloaded;
    air_ci.accepted += c.metrics.offload_air_computation_intensive.accepted;
    air_ci.offloaded += c.metrics.offload_air_computation_intensive.offloaded;
    ground_ds.accepted += c.metrics.offload_ground_delay_sensitive.accepted;
    ground_ds.offloaded += c.metrics.offload_ground_delay_sensitive.offloaded;
    ground_ci.accepted += c.metrics.offload_ground_computation_intensive.accepted;
    ground_ci.offloaded += c.metrics.offload_ground_computation_intensive.offloaded;
  }
  expect(o, air_ds.accepted > 0 && air_ci.accepted > 0 && ground_ds.accepted > 0 &&
                ground_ci.accepted > 0,
         "a mission class slice is empty; ratios are undefined");
  if (o.pass) {
    expect(o, *air_ci.ratio() >= *air_ds.ratio(),
           "compute-heavy air missions offloaded less than delay-sensitive ones");
    expect(o, *ground_ds.ratio() >= *ground_ci.ratio(),
           "delay-sensitive ground missions offloaded less than compute-heavy ones");
  }
  return o;
}

// ---- 7: greedy invariant fuzz audit ----------------------------------------
Outcome check_fuzz_audit() {
  Outcome o;
  for (int run = 0; run < 1000 && o.pass; ++run) {
    const std::uint64_t seed = static_cast<std::uint64_t>(run) + 1;
    const Network net = build_case_study_network(seed * 7 + 3);
    GeneratorConfig cfg;
    cfg.mission_count = 4 + run % 17;
    const auto missions = generate_missions(seed * 11 + 1, net, cat(), cfg);
    const OffloadPolicy policy = run % 2 ? OffloadPolicy::BDO : OffloadPolicy::NoBDO;
    const auto outcome = solve_greedy_sequential(missions, net, cat(), policy);
    const std::string at = " in run " + std::to_string(run);

    NetworkState replay(net);
    const NetworkState fresh = replay;
    std::vector<const MissionResult*> accepted;
    for (std::size_t i = 0; i < missions.size() && o.pass; ++i) {
      const MissionResult& r = outcome.results[i];
      if (!r.accepted) continue;
      accepted.push_back(&r);
      expect(o, r.embedding->route.total_delay_ms <= missions[i].delay_budget_ms,
             "delay budget exceeded" + at);
      const auto check = check_feasible(*r.embedding, missions[i], net, cat(), replay);
      expect(o, check.ok, "replay commit infeasible (" + check.violation + ")" + at);
      if (!o.pass) break;
      commit(*r.embedding, missions[i], net, cat(), replay);
      for (double b : replay.residual_bandwidth) {
        expect(o, b >= 0.0, "negative residual bandwidth" + at);
      }
      for (double c : replay.residual_compute) {
        expect(o, c >= 0.0, "negative residual compute" + at);
      }
    }
    if (!o.pass) break;
    expect(o, replay == outcome.state, "replayed state differs" + at);

    // installs charged exactly once: an independent set-based tally
    std::vector<double> compute_used(net.nodes().size(), 0.0);
    std::set<std::pair<NodeId, VnfId>> pairs;
    for (const MissionResult* r : accepted) {
      const Mission& m = missions[static_cast<std::size_t>(r->mission_id)];
      for (std::size_t j = 0; j < m.chain.size(); ++j) {
        compute_used[static_cast<std::size_t>(r->embedding->placement.assignment[j])] +=
            m.compute_demands_gflops[j];
        pairs.insert({r->embedding->placement.assignment[j], m.chain[j]});
      }
    }
    for (const auto& [node, vnf] : pairs) {
      compute_used[static_cast<std::size_t>(node)] += cat().type(vnf).install_gflops;
    }
    for (std::size_t n = 0; n < compute_used.size() && o.pass; ++n) {
      expect(o,
             outcome.state.residual_compute[n] ==
                 outcome.state.compute_capacity[n] - compute_used[n],
             "install not charged exactly once" + at);
    }

    // bit-exact commit/release round trip
    for (std::size_t i = accepted.size(); i-- > 0;) {
      const MissionResult* r = accepted[i];
      release(*r->embedding, missions[static_cast<std::size_t>(r->mission_id)], net, cat(),
              replay);
    }
    expect(o, replay == fresh, "commit/release round trip not bit-exact" + at);
  }
  return o;
}

// ---- 8: byte-identical outputs ---------------------------------------------
Outcome check_determinism() {
  Outcome o;
  Scenario s;
  s.seeds = {1, 2, 3};
  s.sweep = {10, 20, 5};

  s.threads = 1;
  const auto first = compare_bdo(s);
  s.threads = 4;
  const auto second = compare_bdo(s);
  expect(o, results_csv(first.cells) == results_csv(second.cells),
         "per-cell CSV differs across worker counts");
  expect(o, summary_csv(first) == summary_csv(second),
         "summary CSV differs across worker counts");
  expect(o, deltas_csv(first) == deltas_csv(second),
         "deltas CSV differs across worker counts");

  Scenario ls = s;
  ls.solver = SolverKind::GreedyLocal;
  ls.seeds = {4, 5};
  ls.threads = 2;
  const std::string a = results_csv(run_scenario(ls));
  ls.threads = 5;
  const std::string b = results_csv(run_scenario(ls));
  expect(o, a == b, "local-search scenario CSV differs across worker counts");
  return o;
}

// ---- 9: duty endurance arithmetic ------------------------------------------
Outcome check_endurance_arithmetic() {
  Outcome o;
  const Network net = build_case_study_network(42);
  const EnergyModel model;  // 100 Wh, 0.2 W per pair
  NetworkState state(net);

  state.instances[{7, 0}] = 10;
  auto hours = duty_endurance_hours(state, net, 7, model);
  expect(o, hours.has_value() && *hours == 50.0, "10 service pairs should give exactly 50 h");

  state.instances.clear();
  state.instances[{7, 0}] = 4;
  state.instances[{7, 3}] = 6;
  hours = duty_endurance_hours(state, net, 7, model);
  expect(o, hours.has_value() && *hours == 50.0,
         "10 pairs split across instances should give exactly 50 h");

  state.instances.clear();
  state.instances[{8, 2}] = 1;
  hours = duty_endurance_hours(state, net, 8, model);
  expect(o, hours.has_value() && *hours == 500.0, "one service pair should give exactly 500 h");
  return o;
}

int report(int id, const char* label, const Outcome& o, double seconds) {
  std::printf("criterion %d: %s — %s (%.1f s)%s%s\n", id, label, o.pass ? "PASS" : "FAIL",
              seconds, o.pass ? "" : " — ", o.pass ? "" : o.detail.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

template <typename F>
int timed(int id, const char* label, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report(id, label, o, dt);
}

}  // namespace

int main() {
  int failures = 0;
  failures += timed(1, "generator parameter bounds", check_parameter_bounds);
  failures += timed(2, "candidate enumeration matches brute force", check_candidate_oracle);
  failures += timed(3, "exact solver matches exhaustive search", check_exact_oracle);
  failures += timed(4, "policy and solver monotonicity", check_monotonicity);

  SweepData sweep;
  try {
    sweep = run_default_sweep();
  } catch (const std::exception& e) {
    Outcome o;
    o.pass = false;
    o.detail = std::string("sweep failed: ") + e.what();
    failures += report(5, "policy sweep cost trends", o, 0.0);
    failures += report(6, "endurance and offload trends", o, 0.0);
    failures += timed(7, "greedy invariant fuzz audit", check_fuzz_audit);
    failures += timed(8, "byte-identical outputs across runs and threads", check_determinism);
    failures += timed(9, "duty endurance arithmetic", check_endurance_arithmetic);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
  }
  const auto on_sweep = [&](int id, const char* label, Outcome (*fn)(const SweepData&)) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn(sweep);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report(id, label, o, sweep.seconds + dt);
  };
  failures += on_sweep(5, "policy sweep cost trends", check_cost_trends);
  failures += on_sweep(6, "endurance and offload trends", check_endurance_trends);
  failures += timed(7, "greedy invariant fuzz audit", check_fuzz_audit);
  failures += timed(8, "byte-identical outputs across runs and threads", check_determinism);
  failures += timed(9, "duty endurance arithmetic", check_endurance_arithmetic);

  if (failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d of 9 criteria failed\n", failures);
  }
  return failures;
}
