#include "sagin/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "sagin/error.hpp"
#include "sagin/format.hpp"
#include "sagin/rng.hpp"

namespace sagin {

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Greedy: return "greedy";
    case SolverKind::GreedyLocal: return "greedy-ls";
    case SolverKind::Exact: return "exact";
  }
  return "greedy";
}

SolverKind solver_kind_from_string(const std::string& s) {
  if (s == "greedy") return SolverKind::Greedy;
  if (s == "greedy-ls") return SolverKind::GreedyLocal;
  if (s == "exact") return SolverKind::Exact;
  throw ConfigError("unknown solver '" + s + "' (expected greedy, greedy-ls or exact)");
}

std::vector<int> SweepSpec::counts() const {
  std::vector<int> out;
  for (int c = first; c <= last; c += step) out.push_back(c);
  return out;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size()) {
    throw ConfigError(what + ": '" + t + "' is not a number");
  }
  return v;
}

long long parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size()) {
    throw ConfigError(what + ": '" + t + "' is not an integer");
  }
  return v;
}

// "lo:hi" or a single value (degenerate range).
std::pair<double, double> parse_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const double v = parse_double(parts[0], what);
    return {v, v};
  }
  if (parts.size() == 2) {
    return {parse_double(parts[0], what), parse_double(parts[1], what)};
  }
  throw ConfigError(what + ": expected 'lo:hi' or a single value, got '" + text + "'");
}

void check_keys(const ConfigSection& sec, std::initializer_list<const char*> allowed) {
  for (const ConfigEntry& e : sec.entries) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return e.key == k; }) == allowed.end()) {
      throw ConfigError(sec.context(e.key) + ": unknown key '" + e.key + "' in [" + sec.name + "]");
    }
  }
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  SweepSpec sw;
  if (parts.size() == 1) {
    sw.first = sw.last = static_cast<int>(parse_int(parts[0], "mission sweep"));
    sw.step = 1;
    return sw;
  }
  if (parts.size() != 3) {
    throw ConfigError("mission sweep: expected 'first:last:step' or a single count, got '" + text +
                      "'");
  }
  sw.first = static_cast<int>(parse_int(parts[0], "mission sweep first"));
  sw.last = static_cast<int>(parse_int(parts[1], "mission sweep last"));
  sw.step = static_cast<int>(parse_int(parts[2], "mission sweep step"));
  return sw;
}

Scenario::Scenario() {
  seeds.resize(20);
  std::iota(seeds.begin(), seeds.end(), 1);
}

Scenario scenario_from_config(const ConfigFile& cfg) {
  Scenario s;
  for (const ConfigSection& sec : cfg.sections) {
    static const char* known[] = {"scenario",     "cost",   "candidates", "exact",
                                  "local-search", "energy", "topology",   "generator"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* n) { return sec.name == n; }) == std::end(known)) {
      throw ConfigError(cfg.path + ":" + std::to_string(sec.line) + ": unknown section [" +
                        sec.name + "]");
    }
  }

  if (const ConfigSection* sec = cfg.unique("scenario")) {
    check_keys(*sec, {"solver", "policy", "seeds", "seed_list", "missions", "threads"});
    s.solver = solver_kind_from_string(sec->get_string("solver", "greedy-ls"));
    s.policy = offload_policy_from_string(sec->get_string("policy", "bdo"));
    if (sec->has("seeds") && sec->has("seed_list")) {
      throw ConfigError(sec->context("seed_list") + ": give either seeds or seed_list, not both");
    }
    if (sec->has("seed_list")) {
      s.seeds.clear();
      for (const std::string& part : split(sec->get_string("seed_list"), ',')) {
        const long long v = parse_int(part, sec->context("seed_list") + ": seed");
        if (v < 0) throw ConfigError(sec->context("seed_list") + ": seeds must be non-negative");
        s.seeds.push_back(static_cast<std::uint64_t>(v));
      }
    } else if (sec->has("seeds")) {
      const int n = sec->get_int("seeds");
      if (n < 1) throw ConfigError(sec->context("seeds") + ": need at least one seed");
      s.seeds.assign(static_cast<std::size_t>(n), 0);
      std::iota(s.seeds.begin(), s.seeds.end(), 1);
    }
    if (sec->has("missions")) s.sweep = parse_sweep(sec->get_string("missions"));
    s.threads = sec->get_int("threads", 0);
  }

  if (const ConfigSection* sec = cfg.unique("cost")) {
    check_keys(*sec, {"bandwidth_weight", "compute_weight", "air_multiplier", "ground_multiplier"});
    s.solve.weights.bandwidth = sec->get_double("bandwidth_weight", s.solve.weights.bandwidth);
    s.solve.weights.compute = sec->get_double("compute_weight", s.solve.weights.compute);
    s.solve.multipliers.air = sec->get_double("air_multiplier", s.solve.multipliers.air);
    s.solve.multipliers.ground = sec->get_double("ground_multiplier", s.solve.multipliers.ground);
  }

  if (const ConfigSection* sec = cfg.unique("candidates")) {
    check_keys(*sec, {"max_hops", "k_paths"});
    s.solve.limits.max_hops = sec->get_int("max_hops", s.solve.limits.max_hops);
    s.solve.limits.k_paths = sec->get_int("k_paths", s.solve.limits.k_paths);
  }

  if (const ConfigSection* sec = cfg.unique("exact")) {
    check_keys(*sec, {"objective", "block_penalty", "max_search_nodes"});
    const std::string obj = sec->get_string("objective", "lexicographic");
    if (obj == "lexicographic") {
      s.solve.objective = ObjectiveMode::Lexicographic;
    } else if (obj == "weighted-sum") {
      s.solve.objective = ObjectiveMode::WeightedSum;
    } else {
      throw ConfigError(sec->context("objective") + ": unknown objective '" + obj + "'");
    }
    s.solve.block_penalty = sec->get_double("block_penalty", s.solve.block_penalty);
    const long long budget = sec->has("max_search_nodes")
                                 ? parse_int(sec->get_string("max_search_nodes"),
                                             sec->context("max_search_nodes"))
                                 : static_cast<long long>(s.solve.max_search_nodes);
    if (budget < 1) throw ConfigError(sec->context("max_search_nodes") + ": must be positive");
    s.solve.max_search_nodes = static_cast<std::uint64_t>(budget);
  }

  if (const ConfigSection* sec = cfg.unique("local-search")) {
    check_keys(*sec, {"sweeps"});
    s.solve.local_search_sweeps = sec->get_int("sweeps", s.solve.local_search_sweeps);
  }

  if (const ConfigSection* sec = cfg.unique("energy")) {
    check_keys(*sec, {"battery_wh", "power_per_vnf_mission_w"});
    s.energy.battery_wh = sec->get_double("battery_wh", s.energy.battery_wh);
    s.energy.power_per_vnf_mission_w =
        sec->get_double("power_per_vnf_mission_w", s.energy.power_per_vnf_mission_w);
  }

  if (const ConfigSection* sec = cfg.unique("topology")) {
    check_keys(*sec, {"file", "ground_count", "air_count", "air_air_link", "ground_links",
                      "bandwidth_mbps", "compute_gflops", "delay_ms", "air_battery_wh"});
    if (sec->has("file")) {
      if (sec->entries.size() > 1) {
        throw ConfigError(sec->context("file") +
                          ": a topology file cannot be combined with built-in parameters");
      }
      s.topology_file = sec->get_string("file");
    } else {
      TopologyConfig& t = s.topology;
      t.ground_count = sec->get_int("ground_count", t.ground_count);
      t.air_count = sec->get_int("air_count", t.air_count);
      t.air_air_link = sec->get_bool("air_air_link", t.air_air_link);
      if (sec->has("ground_links")) {
        t.ground_links.clear();
        for (const std::string& part : split(sec->get_string("ground_links"), ',')) {
          const auto ends = split(trim(part), '-');
          if (ends.size() != 2) {
            throw ConfigError(sec->context("ground_links") + ": expected 'a-b' pairs, got '" +
                              part + "'");
          }
          t.ground_links.emplace_back(
              static_cast<int>(parse_int(ends[0], sec->context("ground_links"))),
              static_cast<int>(parse_int(ends[1], sec->context("ground_links"))));
        }
      }
      if (sec->has("bandwidth_mbps")) {
        std::tie(t.bandwidth_mbps_lo, t.bandwidth_mbps_hi) =
            parse_range(sec->get_string("bandwidth_mbps"), sec->context("bandwidth_mbps"));
      }
      if (sec->has("compute_gflops")) {
        std::tie(t.compute_gflops_lo, t.compute_gflops_hi) =
            parse_range(sec->get_string("compute_gflops"), sec->context("compute_gflops"));
      }
      if (sec->has("delay_ms")) {
        std::tie(t.delay_ms_lo, t.delay_ms_hi) =
            parse_range(sec->get_string("delay_ms"), sec->context("delay_ms"));
      }
      t.air_battery_wh = sec->get_double("air_battery_wh", t.air_battery_wh);
    }
  }

  if (const ConfigSection* sec = cfg.unique("generator")) {
    check_keys(*sec, {"delay_sensitive_fraction", "ground_origin_fraction", "chain_len",
                      "ds_bandwidth_mbps", "ds_compute_gflops", "ds_delay_budget_ms",
                      "ci_bandwidth_mbps", "ci_compute_gflops", "ci_delay_budget_ms"});
    GeneratorConfig& g = s.generator;
    g.delay_sensitive_fraction =
        sec->get_double("delay_sensitive_fraction", g.delay_sensitive_fraction);
    g.ground_origin_fraction = sec->get_double("ground_origin_fraction", g.ground_origin_fraction);
    if (sec->has("chain_len")) {
      const auto [lo, hi] = parse_range(sec->get_string("chain_len"), sec->context("chain_len"));
      g.chain_len_min = static_cast<int>(lo);
      g.chain_len_max = static_cast<int>(hi);
    }
    auto range_key = [&](const char* key, double& lo, double& hi) {
      if (sec->has(key)) std::tie(lo, hi) = parse_range(sec->get_string(key), sec->context(key));
    };
    range_key("ds_bandwidth_mbps", g.delay_sensitive.bandwidth_mbps_lo,
              g.delay_sensitive.bandwidth_mbps_hi);
    range_key("ds_compute_gflops", g.delay_sensitive.compute_gflops_lo,
              g.delay_sensitive.compute_gflops_hi);
    range_key("ds_delay_budget_ms", g.delay_sensitive.delay_budget_ms_lo,
              g.delay_sensitive.delay_budget_ms_hi);
    range_key("ci_bandwidth_mbps", g.computation_intensive.bandwidth_mbps_lo,
              g.computation_intensive.bandwidth_mbps_hi);
    range_key("ci_compute_gflops", g.computation_intensive.compute_gflops_lo,
              g.computation_intensive.compute_gflops_hi);
    range_key("ci_delay_budget_ms", g.computation_intensive.delay_budget_ms_lo,
              g.computation_intensive.delay_budget_ms_hi);
  }

  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_config(parse_config_file(path));
}

void validate_scenario(const Scenario& s) {
  if (s.seeds.empty()) throw ConfigError("scenario: seed list is empty");
  if (s.sweep.first < 1 || s.sweep.step < 1 || s.sweep.last < s.sweep.first) {
    throw ConfigError("scenario: mission sweep bounds must be positive and ascending");
  }
  if (s.threads < 0) throw ConfigError("scenario: threads must be >= 0");
  if (s.solve.limits.max_hops < 1) throw ConfigError("scenario: max_hops must be >= 1");
  if (s.solve.limits.k_paths < 1) throw ConfigError("scenario: k_paths must be >= 1");
  if (s.solve.weights.bandwidth < 0.0 || s.solve.weights.compute < 0.0) {
    throw ConfigError("scenario: cost weights must be non-negative");
  }
  if (s.solve.multipliers.air <= 0.0 || s.solve.multipliers.ground <= 0.0) {
    throw ConfigError("scenario: segment multipliers must be positive");
  }
  if (s.solve.block_penalty <= 0.0) throw ConfigError("scenario: block_penalty must be positive");
  if (s.solve.local_search_sweeps < 0) throw ConfigError("scenario: sweeps must be >= 0");
  if (s.energy.battery_wh <= 0.0 || s.energy.power_per_vnf_mission_w <= 0.0) {
    throw ConfigError("scenario: energy parameters must be positive");
  }
  const GeneratorConfig& g = s.generator;
  if (g.delay_sensitive_fraction < 0.0 || g.delay_sensitive_fraction > 1.0 ||
      g.ground_origin_fraction < 0.0 || g.ground_origin_fraction > 1.0) {
    throw ConfigError("scenario: generator fractions must lie in [0, 1]");
  }
  if (g.chain_len_min < 3 || g.chain_len_max > 6 || g.chain_len_min > g.chain_len_max) {
    throw ConfigError("scenario: chain_len must fit inside [3, 6]");
  }
  for (const ClassDemandRanges* r : {&g.delay_sensitive, &g.computation_intensive}) {
    if (r->bandwidth_mbps_lo <= 0.0 || r->bandwidth_mbps_hi < r->bandwidth_mbps_lo ||
        r->compute_gflops_lo <= 0.0 || r->compute_gflops_hi < r->compute_gflops_lo ||
        r->delay_budget_ms_lo <= 0.0 || r->delay_budget_ms_hi < r->delay_budget_ms_lo) {
      throw ConfigError("scenario: demand ranges must be positive with lo <= hi");
    }
  }
  // surface topology problems before any cell starts
  cell_network(s, s.seeds.front());
}

Network cell_network(const Scenario& s, std::uint64_t seed) {
  if (s.topology_file) return load_network(*s.topology_file);
  return build_case_study_network(mix_seed(seed, kNetworkSeedTag), s.topology);
}

std::vector<Mission> cell_missions(const Scenario& s, std::uint64_t seed, int mission_count,
                                   const Network& net, const VnfCatalog& catalog) {
  GeneratorConfig g = s.generator;
  g.mission_count = mission_count;
  return generate_missions(mix_seed(seed, kMissionSeedTag), net, catalog, g);
}

namespace {

CellResult run_cell(const Scenario& s, std::uint64_t seed, int count, OffloadPolicy policy,
                    const VnfCatalog& catalog) {
  const Network net = cell_network(s, seed);
  const std::vector<Mission> missions = cell_missions(s, seed, count, net, catalog);

  SolveOutcome outcome = [&] {
    switch (s.solver) {
      case SolverKind::GreedyLocal: {
        SolveOutcome g = solve_greedy_sequential(missions, net, catalog, policy, s.solve);
        return improve_local_search(g, missions, net, catalog, policy, s.solve);
      }
      case SolverKind::Exact:
        return solve_exact_batch(missions, net, catalog, policy, s.solve);
      case SolverKind::Greedy:
      default:
        return solve_greedy_sequential(missions, net, catalog, policy, s.solve);
    }
  }();

  CellResult r;
  r.seed = seed;
  r.mission_count = count;
  r.policy = policy;
  r.solver = s.solver;
  r.mission_digest = fnv1a64(missions_to_csv(missions, catalog));
  r.solver_optimal = outcome.optimal;
  r.metrics = aggregate_metrics(outcome, missions, net, s.energy);
  return r;
}

struct CellKey {
  std::uint64_t seed;
  int count;
  OffloadPolicy policy;
};

// Runs the cells on a worker pool. Each cell writes its own slot, so the
// output order is the key order no matter how workers interleave.
std::vector<CellResult> run_cells(const Scenario& s, const std::vector<CellKey>& keys) {
  const VnfCatalog catalog = VnfCatalog::default_catalog();
  std::vector<CellResult> results(keys.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= keys.size()) return;
      try {
        results[i] = run_cell(s, keys[i].seed, keys[i].count, keys[i].policy, catalog);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::size_t n = s.threads > 0 ? static_cast<std::size_t>(s.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
  n = std::min(n, keys.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

std::vector<double> collect(const std::vector<const CellResult*>& rows,
                            double (*pick)(const CellResult&)) {
  std::vector<double> xs;
  xs.reserve(rows.size());
  for (const CellResult* r : rows) xs.push_back(pick(*r));
  return xs;
}

PolicyCountSummary summarize(const std::vector<const CellResult*>& rows,
                             const EnergyModel& energy) {
  PolicyCountSummary p;
  p.runs = static_cast<int>(rows.size());
  p.blocking_rate = mean_std(collect(rows, [](const CellResult& r) { return r.metrics.blocking_rate; }));
  p.accepted = mean_std(
      collect(rows, [](const CellResult& r) { return static_cast<double>(r.metrics.accepted_count); }));
  p.bandwidth_cost =
      mean_std(collect(rows, [](const CellResult& r) { return r.metrics.bandwidth_cost_total; }));
  p.a2g_cost =
      mean_std(collect(rows, [](const CellResult& r) { return r.metrics.a2g_bandwidth_cost; }));
  p.computation_cost =
      mean_std(collect(rows, [](const CellResult& r) { return r.metrics.computation_cost_total; }));

  std::vector<double> cpc;
  for (const CellResult* r : rows) {
    if (r->metrics.computation_cost_per_completed) {
      cpc.push_back(*r->metrics.computation_cost_per_completed);
    }
  }
  p.cost_per_completed = mean_std(cpc);

  // an idle air node would run forever; cap it at the one-pair endurance so
  // the mean stays finite
  const double cap = energy.battery_wh / energy.power_per_vnf_mission_w;
  std::vector<double> endurance;
  endurance.reserve(rows.size());
  for (const CellResult* r : rows) {
    endurance.push_back(r->metrics.min_endurance_hours.value_or(cap));
  }
  p.min_endurance_capped = mean_std(endurance);

  for (const CellResult* r : rows) {
    p.offload_air.accepted += r->metrics.offload_air.accepted;
    p.offload_air.offloaded += r->metrics.offload_air.offloaded;
    p.offload_ground.accepted += r->metrics.offload_ground.accepted;
    p.offload_ground.offloaded += r->metrics.offload_ground.offloaded;
  }
  return p;
}

}  // namespace

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd m;
  m.n = static_cast<int>(xs.size());
  if (m.n == 0) return m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / m.n;
  if (m.n < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / (m.n - 1));
  return m;
}

std::vector<CellResult> run_scenario(const Scenario& s) {
  validate_scenario(s);
  std::vector<CellKey> keys;
  for (std::uint64_t seed : s.seeds) {
    for (int count : s.sweep.counts()) keys.push_back({seed, count, s.policy});
  }
  return run_cells(s, keys);
}

ComparisonReport compare_bdo(const Scenario& s) {
  validate_scenario(s);
  std::vector<CellKey> keys;
  for (std::uint64_t seed : s.seeds) {
    for (int count : s.sweep.counts()) {
      keys.push_back({seed, count, OffloadPolicy::BDO});
      keys.push_back({seed, count, OffloadPolicy::NoBDO});
    }
  }
  ComparisonReport rep;
  rep.energy = s.energy;
  rep.cells = run_cells(s, keys);

  for (std::size_t i = 0; i + 1 < rep.cells.size(); i += 2) {
    if (rep.cells[i].mission_digest != rep.cells[i + 1].mission_digest) {
      throw std::logic_error("compare_bdo: paired cells saw different mission lists");
    }
  }

  for (int count : s.sweep.counts()) {
    std::vector<const CellResult*> bdo_rows;
    std::vector<const CellResult*> nobdo_rows;
    for (const CellResult& r : rep.cells) {
      if (r.mission_count != count) continue;
      (r.policy == OffloadPolicy::BDO ? bdo_rows : nobdo_rows).push_back(&r);
    }
    CountSummary cs;
    cs.mission_count = count;
    cs.bdo = summarize(bdo_rows, s.energy);
    cs.nobdo = summarize(nobdo_rows, s.energy);
    rep.summaries.push_back(cs);
  }
  return rep;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// empty cell + 0/1 flag for optional metrics
void csv_optional(std::string& out, const std::optional<double>& v) {
  if (v) out += format_double(*v);
  out += ',';
  out += v ? '1' : '0';
}

}  // namespace

std::string results_csv(const std::vector<CellResult>& cells) {
  std::string out = "# sagin-results-csv v1\n";
  out +=
      "seed,mission_count,policy,solver,mission_digest,optimal,total_missions,accepted_count,"
      "blocked_count,blocking_rate,bandwidth_cost_total,a2g_bandwidth_cost,computation_cost_total,"
      "computation_cost_per_completed,computation_cost_per_completed_defined,min_endurance_hours,"
      "min_endurance_defined,endurance_per_air_node,offload_air_accepted,offload_air_offloaded,"
      "offload_air_ratio,offload_air_ratio_defined,offload_ground_accepted,offload_ground_"
      "offloaded,offload_ground_ratio,offload_ground_ratio_defined,offload_air_ds_accepted,"
      "offload_air_ds_offloaded,offload_air_ci_accepted,offload_air_ci_offloaded,offload_ground_"
      "ds_accepted,offload_ground_ds_offloaded,offload_ground_ci_accepted,offload_ground_ci_"
      "offloaded\n";
  for (const CellResult& c : cells) {
    const MetricsReport& m = c.metrics;
    out += std::to_string(c.seed) + ',' + std::to_string(c.mission_count) + ',' +
           to_string(c.policy) + ',' + to_string(c.solver) + ',' + hex64(c.mission_digest) + ',' +
           (c.solver_optimal ? '1' : '0') + std::string(",") + std::to_string(m.total_missions) +
           ',' + std::to_string(m.accepted_count) + ',' + std::to_string(m.blocked_count) + ',' +
           format_double(m.blocking_rate) + ',' + format_double(m.bandwidth_cost_total) + ',' +
           format_double(m.a2g_bandwidth_cost) + ',' + format_double(m.computation_cost_total) +
           ',';
    csv_optional(out, m.computation_cost_per_completed);
    out += ',';
    csv_optional(out, m.min_endurance_hours);
    out += ',';
    for (std::size_t i = 0; i < m.endurance.size(); ++i) {
      if (i) out += '|';
      out += std::to_string(m.endurance[i].node) + ':' +
             (m.endurance[i].hours ? format_double(*m.endurance[i].hours) : std::string("?"));
    }
    auto ratio_cells = [&](const OffloadStat& st) {
      out += ',' + std::to_string(st.accepted) + ',' + std::to_string(st.offloaded) + ',';
      csv_optional(out, st.ratio());
    };
    ratio_cells(m.offload_air);
    ratio_cells(m.offload_ground);
    for (const OffloadStat* st :
         {&m.offload_air_delay_sensitive, &m.offload_air_computation_intensive,
          &m.offload_ground_delay_sensitive, &m.offload_ground_computation_intensive}) {
      out += ',' + std::to_string(st->accepted) + ',' + std::to_string(st->offloaded);
    }
    out += '\n';
  }
  return out;
}

std::string summary_csv(const ComparisonReport& report) {
  std::string out = "# sagin-summary-csv v1\n";
  out +=
      "mission_count,policy,runs,blocking_rate_mean,blocking_rate_std,accepted_mean,accepted_std,"
      "bandwidth_cost_mean,bandwidth_cost_std,a2g_cost_mean,a2g_cost_std,computation_cost_mean,"
      "computation_cost_std,cost_per_completed_mean,cost_per_completed_std,cost_per_completed_"
      "runs,min_endurance_capped_mean,min_endurance_capped_std,offload_air_accepted,offload_air_"
      "offloaded,offload_air_ratio,offload_air_ratio_defined,offload_ground_accepted,offload_"
      "ground_offloaded,offload_ground_ratio,offload_ground_ratio_defined\n";
  for (const CountSummary& cs : report.summaries) {
    for (const auto& [policy, p] :
         {std::pair<const char*, const PolicyCountSummary*>{"bdo", &cs.bdo},
          std::pair<const char*, const PolicyCountSummary*>{"nobdo", &cs.nobdo}}) {
      out += std::to_string(cs.mission_count) + ',' + policy + ',' + std::to_string(p->runs) + ',' +
             format_double(p->blocking_rate.mean) + ',' + format_double(p->blocking_rate.stddev) +
             ',' + format_double(p->accepted.mean) + ',' + format_double(p->accepted.stddev) + ',' +
             format_double(p->bandwidth_cost.mean) + ',' + format_double(p->bandwidth_cost.stddev) +
             ',' + format_double(p->a2g_cost.mean) + ',' + format_double(p->a2g_cost.stddev) + ',' +
             format_double(p->computation_cost.mean) + ',' +
             format_double(p->computation_cost.stddev) + ',';
      if (p->cost_per_completed.n > 0) {
        out += format_double(p->cost_per_completed.mean) + ',' +
               format_double(p->cost_per_completed.stddev);
      } else {
        out += ",";
      }
      out += ',' + std::to_string(p->cost_per_completed.n) + ',' +
             format_double(p->min_endurance_capped.mean) + ',' +
             format_double(p->min_endurance_capped.stddev);
      for (const OffloadStat* st : {&p->offload_air, &p->offload_ground}) {
        out += ',' + std::to_string(st->accepted) + ',' + std::to_string(st->offloaded) + ',';
        csv_optional(out, st->ratio());
      }
      out += '\n';
    }
  }
  return out;
}

std::string deltas_csv(const ComparisonReport& report) {
  std::string out = "# sagin-deltas-csv v1\n";
  out +=
      "seed,mission_count,mission_digest,accepted_delta,blocking_rate_delta,"
      "bandwidth_cost_delta,a2g_cost_delta,computation_cost_delta,cost_per_completed_delta,"
      "cost_per_completed_delta_defined,min_endurance_capped_delta\n";
  const double cap = report.energy.battery_wh / report.energy.power_per_vnf_mission_w;
  if (report.cells.size() % 2 != 0) throw std::logic_error("deltas_csv: unpaired cells");
  for (std::size_t i = 0; i + 1 < report.cells.size(); i += 2) {
    const CellResult& b = report.cells[i];
    const CellResult& n = report.cells[i + 1];
    if (b.policy != OffloadPolicy::BDO || n.policy != OffloadPolicy::NoBDO ||
        b.seed != n.seed || b.mission_count != n.mission_count ||
        b.mission_digest != n.mission_digest) {
      throw std::logic_error("deltas_csv: cells are not adjacent BDO/NoBDO pairs");
    }
    const MetricsReport& mb = b.metrics;
    const MetricsReport& mn = n.metrics;
    out += std::to_string(b.seed) + ',' + std::to_string(b.mission_count) + ',' +
           hex64(b.mission_digest) + ',' +
           std::to_string(mb.accepted_count - mn.accepted_count) + ',' +
           format_double(mb.blocking_rate - mn.blocking_rate) + ',' +
           format_double(mb.bandwidth_cost_total - mn.bandwidth_cost_total) + ',' +
           format_double(mb.a2g_bandwidth_cost - mn.a2g_bandwidth_cost) + ',' +
           format_double(mb.computation_cost_total - mn.computation_cost_total) + ',';
    if (mb.computation_cost_per_completed && mn.computation_cost_per_completed) {
      out += format_double(*mb.computation_cost_per_completed -
                           *mn.computation_cost_per_completed) + ",1";
    } else {
      out += ",0";
    }
    out += ',' +
           format_double(mb.min_endurance_hours.value_or(cap) -
                         mn.min_endurance_hours.value_or(cap)) +
           '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into place: " + path.string());
  }
}

namespace {

std::string plot_dat(const ComparisonReport& rep,
                     const std::function<const MeanStd&(const PolicyCountSummary&)>& pick,
                     const char* what) {
  std::string out = "# mission_count ";
  out += what;
  out += ": bdo_mean bdo_std nobdo_mean nobdo_std  (? = undefined)\n";
  for (const CountSummary& cs : rep.summaries) {
    auto cell = [&](const PolicyCountSummary& p) {
      const MeanStd& m = pick(p);
      if (m.n == 0) return std::string("? ?");
      return format_double(m.mean) + ' ' + format_double(m.stddev);
    };
    out += std::to_string(cs.mission_count) + ' ' + cell(cs.bdo) + ' ' + cell(cs.nobdo) + '\n';
  }
  return out;
}

}  // namespace

void emit_plot_data(const ComparisonReport& report, const std::filesystem::path& out_dir) {
  if (report.summaries.empty()) throw std::runtime_error("emit_plot_data: empty report");
  std::filesystem::create_directories(out_dir);

  write_file_atomic(out_dir / "endurance_vs_missions.dat",
                    plot_dat(report, [](const PolicyCountSummary& p) -> const MeanStd& {
                      return p.min_endurance_capped;
                    }, "min air-node duty endurance, hours"));
  write_file_atomic(out_dir / "blocking_vs_missions.dat",
                    plot_dat(report, [](const PolicyCountSummary& p) -> const MeanStd& {
                      return p.blocking_rate;
                    }, "blocking rate"));
  write_file_atomic(out_dir / "cost_per_completed_vs_missions.dat",
                    plot_dat(report, [](const PolicyCountSummary& p) -> const MeanStd& {
                      return p.cost_per_completed;
                    }, "computation cost per completed mission, GFLOPS"));
  write_file_atomic(out_dir / "a2g_cost_vs_missions.dat",
                    plot_dat(report, [](const PolicyCountSummary& p) -> const MeanStd& {
                      return p.a2g_cost;
                    }, "A2G bandwidth cost, Mbps-hops"));

  std::string gp;
  gp += "set terminal png size 900,600\n";
  gp += "set datafile missing '?'\n";
  gp += "set key top left\n";
  gp += "set xlabel 'missions'\n";
  struct PlotDef {
    const char* dat;
    const char* png;
    const char* ylabel;
  };
  const PlotDef plots[] = {
      {"endurance_vs_missions.dat", "endurance_vs_missions.png", "min duty endurance [h]"},
      {"blocking_vs_missions.dat", "blocking_vs_missions.png", "blocking rate"},
      {"cost_per_completed_vs_missions.dat", "cost_per_completed_vs_missions.png",
       "computation cost per completed mission"},
      {"a2g_cost_vs_missions.dat", "a2g_cost_vs_missions.png", "A2G bandwidth cost"},
  };
  for (const PlotDef& p : plots) {
    gp += std::string("set output '") + p.png + "'\n";
    gp += std::string("set ylabel '") + p.ylabel + "'\n";
    gp += std::string("plot '") + p.dat +
          "' using 1:2:3 with yerrorlines title 'BDO', '' using 1:4:5 with yerrorlines title "
          "'NoBDO'\n";
  }
  write_file_atomic(out_dir / "plot.gp", gp);
}

}  // namespace sagin
