#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sagin/error.hpp"
#include "sagin/format.hpp"
#include "sagin/harness.hpp"
#include "sagin/metrics.hpp"
#include "sagin/mission.hpp"
#include "sagin/network.hpp"
#include "sagin/solvers.hpp"

namespace {

using namespace sagin;

Scenario load_or_default(const std::string& config_path) {
  if (config_path.empty()) return Scenario{};
  return load_scenario(config_path);
}

int cmd_topology_validate(const std::string& file) {
  const Network net = load_network(file);
  std::cout << file << ": ok — " << net.node_count() << " nodes ("
            << net.count_in(SegmentKind::Ground) << " ground, " << net.count_in(SegmentKind::Air)
            << " air), " << net.link_count() << " links\n";
  return 0;
}

int cmd_generate(const std::string& config, std::uint64_t seed, int missions,
                 const std::string& out) {
  Scenario s = load_or_default(config);
  s.sweep = SweepSpec{missions, missions, 1};
  validate_scenario(s);
  const VnfCatalog catalog = VnfCatalog::default_catalog();
  const Network net = cell_network(s, seed);
  const std::vector<Mission> list = cell_missions(s, seed, missions, net, catalog);
  const std::string csv = missions_to_csv(list, catalog);
  write_file_atomic(out, csv);
  std::cout << "wrote " << list.size() << " missions to " << out << " (digest "
            << std::hex << fnv1a64(csv) << std::dec << ")\n";
  return 0;
}

void print_optional(const char* label, const std::optional<double>& v, const char* undefined) {
  std::cout << label;
  if (v) {
    std::cout << format_double(*v);
  } else {
    std::cout << undefined;
  }
  std::cout << '\n';
}

int cmd_solve(const std::string& config, const std::string& policy_name,
              const std::string& solver_name, std::uint64_t seed, int missions) {
  Scenario s = load_or_default(config);
  if (!policy_name.empty()) s.policy = offload_policy_from_string(policy_name);
  if (!solver_name.empty()) s.solver = solver_kind_from_string(solver_name);
  s.sweep = SweepSpec{missions, missions, 1};
  validate_scenario(s);

  const VnfCatalog catalog = VnfCatalog::default_catalog();
  const Network net = cell_network(s, seed);
  const std::vector<Mission> list = cell_missions(s, seed, missions, net, catalog);

  SolveOutcome outcome = [&] {
    switch (s.solver) {
      case SolverKind::GreedyLocal: {
        SolveOutcome g = solve_greedy_sequential(list, net, catalog, s.policy, s.solve);
        return improve_local_search(g, list, net, catalog, s.policy, s.solve);
      }
      case SolverKind::Exact:
        return solve_exact_batch(list, net, catalog, s.policy, s.solve);
      case SolverKind::Greedy:
      default:
        return solve_greedy_sequential(list, net, catalog, s.policy, s.solve);
    }
  }();
  const MetricsReport m = aggregate_metrics(outcome, list, net, s.energy);

  std::cout << "policy " << to_string(s.policy) << ", solver " << to_string(s.solver) << ", seed "
            << seed << ", " << missions << " missions\n";
  std::cout << "accepted " << m.accepted_count << "/" << m.total_missions << " (blocking rate "
            << format_double(m.blocking_rate) << ")\n";
  std::cout << "bandwidth cost " << format_double(m.bandwidth_cost_total) << " Mbps-hops (A2G "
            << format_double(m.a2g_bandwidth_cost) << ")\n";
  std::cout << "computation cost " << format_double(m.computation_cost_total) << " GFLOPS\n";
  print_optional("computation cost per completed mission: ", m.computation_cost_per_completed,
                 "undefined (none accepted)");
  for (const AirEndurance& e : m.endurance) {
    std::cout << "air node " << e.node << ": " << e.service_pairs << " service pairs, endurance ";
    if (e.hours) {
      std::cout << format_double(*e.hours) << " h\n";
    } else {
      std::cout << "unlimited\n";
    }
  }
  std::cout << "offloaded air-origin " << m.offload_air.offloaded << "/" << m.offload_air.accepted
            << ", ground-origin " << m.offload_ground.offloaded << "/"
            << m.offload_ground.accepted << "\n";
  for (const MissionResult& r : outcome.results) {
    if (!r.accepted) std::cout << "blocked mission " << r.mission_id << ": " << r.block_reason << "\n";
  }
  if (!outcome.optimal) {
    std::cout << "warning: exact search budget exhausted (" << outcome.nodes_expanded
              << " nodes); result is the best incumbent, not proven optimal\n";
    return 3;
  }
  return 0;
}

int write_comparison(const Scenario& s, const std::string& out_dir) {
  const ComparisonReport rep = compare_bdo(s);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "results.csv", results_csv(rep.cells));
  write_file_atomic(dir / "summary.csv", summary_csv(rep));
  write_file_atomic(dir / "deltas.csv", deltas_csv(rep));
  emit_plot_data(rep, dir);
  std::cout << rep.cells.size() << " runs over " << rep.summaries.size()
            << " mission counts -> " << out_dir
            << " (results.csv, summary.csv, deltas.csv, 4 .dat files, plot.gp)\n";
  for (const CellResult& c : rep.cells) {
    if (!c.solver_optimal) {
      std::cout << "warning: exact search budget exhausted in at least one cell\n";
      return 3;
    }
  }
  return 0;
}

int cmd_compare(const std::string& scenario_file, const std::string& out_dir) {
  return write_comparison(load_or_default(scenario_file), out_dir);
}

int cmd_sweep(const std::string& missions, int seeds, int threads, const std::string& solver_name,
              const std::string& out_dir) {
  Scenario s;
  s.sweep = parse_sweep(missions);
  if (seeds < 1) throw ConfigError("--seeds must be at least 1");
  s.seeds.assign(static_cast<std::size_t>(seeds), 0);
  for (std::size_t i = 0; i < s.seeds.size(); ++i) s.seeds[i] = i + 1;
  s.threads = threads;
  if (!solver_name.empty()) s.solver = solver_kind_from_string(solver_name);
  return write_comparison(s, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAGIN service-chain embedding simulator"};
  app.require_subcommand(1);

  auto* topology = app.add_subcommand("topology", "Topology file utilities");
  topology->require_subcommand(1);
  auto* validate = topology->add_subcommand("validate", "Parse and validate a topology file");
  std::string topo_file;
  validate->add_option("file", topo_file, "topology file")->required();

  auto* generate = app.add_subcommand("generate", "Generate a mission list CSV");
  std::string gen_config, gen_out;
  std::uint64_t gen_seed = 1;
  int gen_missions = 25;
  generate->add_option("--config", gen_config, "scenario file for generator/topology settings");
  generate->add_option("--seed", gen_seed, "experiment seed");
  generate->add_option("--missions", gen_missions, "number of missions")->required();
  generate->add_option("--out", gen_out, "output CSV path")->required();

  auto* solve = app.add_subcommand("solve", "Run one cell and print its metrics");
  std::string sol_config, sol_policy, sol_solver;
  std::uint64_t sol_seed = 1;
  int sol_missions = 25;
  solve->add_option("--config", sol_config, "scenario file");
  solve->add_option("--policy", sol_policy, "bdo|nobdo (default: scenario setting)");
  solve->add_option("--solver", sol_solver, "greedy|greedy-ls|exact (default: scenario setting)");
  solve->add_option("--seed", sol_seed, "experiment seed");
  solve->add_option("--missions", sol_missions, "number of missions")->required();

  auto* compare = app.add_subcommand("compare", "Paired BDO/NoBDO runs from a scenario file");
  std::string cmp_scenario, cmp_out;
  compare->add_option("--scenario", cmp_scenario, "scenario file (defaults when omitted)");
  compare->add_option("--out-dir", cmp_out, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Default figure sweep: paired policies over counts");
  std::string swp_missions = "10:40:5", swp_out, swp_solver;
  int swp_seeds = 20, swp_threads = 0;
  sweep->add_option("--missions", swp_missions, "sweep first:last:step");
  sweep->add_option("--seeds", swp_seeds, "number of seeds (1..N)");
  sweep->add_option("--threads", swp_threads, "worker threads (0 = hardware)");
  sweep->add_option("--solver", swp_solver, "greedy|greedy-ls|exact (default: greedy-ls)");
  sweep->add_option("--out-dir", swp_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_topology_validate(topo_file);
    if (generate->parsed()) return cmd_generate(gen_config, gen_seed, gen_missions, gen_out);
    if (solve->parsed()) return cmd_solve(sol_config, sol_policy, sol_solver, sol_seed, sol_missions);
    if (compare->parsed()) return cmd_compare(cmp_scenario, cmp_out);
    if (sweep->parsed()) return cmd_sweep(swp_missions, swp_seeds, swp_threads, swp_solver, swp_out);
  } catch (const sagin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
