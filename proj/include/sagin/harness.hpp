#ifndef SAGIN_HARNESS_HPP
#define SAGIN_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sagin/config_file.hpp"
#include "sagin/metrics.hpp"
#include "sagin/mission.hpp"
#include "sagin/network.hpp"
#include "sagin/solvers.hpp"

namespace sagin {

// Stream tags: one experiment seed fans out into independent generator
// streams so network and mission draws never alias.
inline constexpr std::uint64_t kNetworkSeedTag = 0x6e6574;  // "net"
inline constexpr std::uint64_t kMissionSeedTag = 0x6d6973;  // "mis"

enum class SolverKind { Greedy, GreedyLocal, Exact };

std::string to_string(SolverKind s);
SolverKind solver_kind_from_string(const std::string& s);

// first..last inclusive, in increments of step.
struct SweepSpec {
  int first = 10;
  int last = 40;
  int step = 5;

  std::vector<int> counts() const;
};

SweepSpec parse_sweep(const std::string& text);  // "A:B:S" or a single count

struct Scenario {
  std::optional<std::string> topology_file;  // unset -> built-in case study
  TopologyConfig topology;
  GeneratorConfig generator;  // mission_count is overridden per cell
  OffloadPolicy policy = OffloadPolicy::BDO;
  SolverKind solver = SolverKind::GreedyLocal;
  SolveOptions solve;
  EnergyModel energy;
  std::vector<std::uint64_t> seeds;  // default 1..20
  SweepSpec sweep;
  int threads = 0;  // 0 -> hardware concurrency

  Scenario();
};

// Parses the INI scenario schema (see README) and fail-fast validates it:
// unknown sections or keys, empty seed lists, bad sweeps and non-positive
// ranges are all reported before any cell runs.
Scenario scenario_from_config(const ConfigFile& cfg);
Scenario load_scenario(const std::string& path);
void validate_scenario(const Scenario& s);

// One (seed, mission_count, policy) run.
struct CellResult {
  std::uint64_t seed = 0;
  int mission_count = 0;
  OffloadPolicy policy = OffloadPolicy::BDO;
  SolverKind solver = SolverKind::Greedy;
  std::uint64_t mission_digest = 0;
  bool solver_optimal = true;
  MetricsReport metrics;
};

// Sample mean / sample standard deviation over the defined rows of one
// metric; n is how many rows were defined.
struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
  int n = 0;
};

MeanStd mean_std(const std::vector<double>& xs);

// Per-(count, policy) aggregation across seeds. Endurance rows map the
// unlimited sentinel to the one-pair maximum battery/power before averaging
// so means stay finite; offload ratios are pooled counts, not row means.
struct PolicyCountSummary {
  int runs = 0;
  MeanStd blocking_rate;
  MeanStd accepted;
  MeanStd bandwidth_cost;
  MeanStd a2g_cost;
  MeanStd computation_cost;
  MeanStd cost_per_completed;     // n counts the rows where it was defined
  MeanStd min_endurance_capped;
  OffloadStat offload_air;
  OffloadStat offload_ground;
};

struct CountSummary {
  int mission_count = 0;
  PolicyCountSummary bdo;
  PolicyCountSummary nobdo;
};

struct ComparisonReport {
  std::vector<CellResult> cells;       // (seed, count) order, BDO row then NoBDO row
  std::vector<CountSummary> summaries; // mission count ascending
  EnergyModel energy;                  // for the endurance cap used above
};

// Runs every (seed, count) cell under the scenario's policy/solver. Cells
// execute on a worker pool; results always come back in (seed list order,
// count ascending) order.
std::vector<CellResult> run_scenario(const Scenario& s);

// Runs every cell twice with identical missions (BDO then NoBDO) and
// aggregates per-count summaries. The scenario's own policy is ignored.
ComparisonReport compare_bdo(const Scenario& s);

// CSV serialization, schema-versioned. Undefined/unlimited values are empty
// cells with a companion 0/1 flag column.
std::string results_csv(const std::vector<CellResult>& cells);
std::string summary_csv(const ComparisonReport& report);

// One row per (seed, mission_count) pair with BDO-minus-NoBDO differences of
// the headline metrics. Idle-node endurance is capped like the summaries.
std::string deltas_csv(const ComparisonReport& report);

// Whitespace-delimited per-figure data files (endurance, blocking rate,
// cost per completed mission, A2G bandwidth cost — each vs mission count,
// mean and stddev per policy) plus a gnuplot script. Missing values are "?"
// and the script marks them as such. All writes are temp-then-rename.
void emit_plot_data(const ComparisonReport& report, const std::filesystem::path& out_dir);

// Writes content to path via a sibling temp file and an atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Convenience used by the CLI and tests: the network and missions a cell
// sees, derived from the experiment seed via the stream tags.
Network cell_network(const Scenario& s, std::uint64_t seed);
std::vector<Mission> cell_missions(const Scenario& s, std::uint64_t seed, int mission_count,
                                   const Network& net, const VnfCatalog& catalog);

}  // namespace sagin

#endif  // SAGIN_HARNESS_HPP
