#include "sagin/mission.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sagin/error.hpp"
#include "sagin/format.hpp"
#include "sagin/rng.hpp"

namespace sagin {

VnfCatalog VnfCatalog::default_catalog() {
  VnfCatalog c;
  const char* names[] = {"A", "B", "C", "D", "E"};
  for (int i = 0; i < 5; ++i) {
    c.types.push_back(VnfType{i, names[i], 30.0});
  }
  return c;
}

const char* to_string(MissionClass c) {
  return c == MissionClass::DelaySensitive ? "delay_sensitive" : "computation_intensive";
}

MissionClass mission_class_from_string(const std::string& s) {
  if (s == "delay_sensitive") return MissionClass::DelaySensitive;
  if (s == "computation_intensive") return MissionClass::ComputationIntensive;
  throw ConfigError("unknown mission class '" + s +
                    "' (expected 'delay_sensitive' or 'computation_intensive')");
}

std::vector<Mission> generate_missions(std::uint64_t seed, const Network& net,
                                       const VnfCatalog& catalog, const GeneratorConfig& cfg) {
  if (cfg.mission_count < 0) throw ConfigError("generator: mission_count must be >= 0");
  if (cfg.chain_len_min < 1 || cfg.chain_len_max < cfg.chain_len_min) {
    throw ConfigError("generator: invalid chain length range");
  }
  if (catalog.size() == 0) throw ConfigError("generator: empty VNF catalog");
  if (cfg.delay_sensitive_fraction < 0 || cfg.delay_sensitive_fraction > 1 ||
      cfg.ground_origin_fraction < 0 || cfg.ground_origin_fraction > 1) {
    throw ConfigError("generator: class/origin fractions must lie in [0,1]");
  }
  for (MissionClass mc : {MissionClass::DelaySensitive, MissionClass::ComputationIntensive}) {
    const ClassDemandRanges& r = cfg.ranges(mc);
    if (!(r.bandwidth_mbps_lo > 0) || r.bandwidth_mbps_hi < r.bandwidth_mbps_lo ||
        !(r.compute_gflops_lo > 0) || r.compute_gflops_hi < r.compute_gflops_lo ||
        !(r.delay_budget_ms_lo > 0) || r.delay_budget_ms_hi < r.delay_budget_ms_lo) {
      throw ConfigError(std::string("generator: invalid demand ranges for class ") + to_string(mc));
    }
  }
  const std::vector<NodeId> ground = net.nodes_in(SegmentKind::Ground);
  const std::vector<NodeId> air = net.nodes_in(SegmentKind::Air);
  if (cfg.mission_count > 0) {
    if (cfg.ground_origin_fraction > 0 && ground.size() < 2) {
      throw ConfigError("generator: ground segment needs at least 2 nodes to host missions");
    }
    if (cfg.ground_origin_fraction < 1 && air.size() < 2) {
      throw ConfigError("generator: air segment needs at least 2 nodes to host missions");
    }
  }

  Rng rng(seed);
  std::vector<Mission> out;
  out.reserve(static_cast<std::size_t>(cfg.mission_count));
  for (int i = 0; i < cfg.mission_count; ++i) {
    Mission m;
    m.id = i;
    m.mission_class = rng.u01() < cfg.delay_sensitive_fraction ? MissionClass::DelaySensitive
                                                               : MissionClass::ComputationIntensive;
    m.origin = rng.u01() < cfg.ground_origin_fraction ? SegmentKind::Ground : SegmentKind::Air;
    const std::vector<NodeId>& pool = m.origin == SegmentKind::Ground ? ground : air;
    const std::size_t si = rng.below(pool.size());
    std::size_t di = rng.below(pool.size() - 1);
    if (di >= si) ++di;
    m.src = pool[si];
    m.dst = pool[di];

    const int len = rng.uniform_int(cfg.chain_len_min, cfg.chain_len_max);
    std::vector<VnfId> perm(static_cast<std::size_t>(catalog.size()));
    for (int t = 0; t < catalog.size(); ++t) perm[static_cast<std::size_t>(t)] = t;
    rng.shuffle(perm);
    for (int p = 0; p < len && p < catalog.size(); ++p) m.chain.push_back(perm[static_cast<std::size_t>(p)]);
    for (int p = catalog.size(); p < len; ++p) {
      m.chain.push_back(static_cast<VnfId>(rng.below(static_cast<std::uint64_t>(catalog.size()))));
    }

    const ClassDemandRanges& r = cfg.ranges(m.mission_class);
    m.bandwidth_demand_mbps = rng.uniform(r.bandwidth_mbps_lo, r.bandwidth_mbps_hi);
    for (int p = 0; p < len; ++p) {
      m.compute_demands_gflops.push_back(rng.uniform(r.compute_gflops_lo, r.compute_gflops_hi));
    }
    m.delay_budget_ms = rng.uniform(r.delay_budget_ms_lo, r.delay_budget_ms_hi);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<std::string> validate_mission(const Mission& m, const Network& net,
                                          const VnfCatalog& catalog) {
  std::vector<std::string> violations;
  auto bad = [&](const std::string& s) { violations.push_back(s); };

  if (m.src < 0 || m.src >= net.node_count()) bad("src node out of range");
  if (m.dst < 0 || m.dst >= net.node_count()) bad("dst node out of range");
  if (m.src == m.dst) bad("src = dst");
  if (violations.empty()) {
    if (net.node(m.src).segment != m.origin || net.node(m.dst).segment != m.origin) {
      bad("origin segment: src/dst must lie in the mission's origin segment");
    }
  }
  if (m.chain.size() < 3 || m.chain.size() > 6) bad("chain length outside [3,6]");
  for (VnfId v : m.chain) {
    if (v < 0 || v >= catalog.size()) {
      bad("unknown VNF id " + std::to_string(v));
      break;
    }
  }
  if (m.compute_demands_gflops.size() != m.chain.size()) {
    bad("compute demand count does not match chain length");
  }
  if (!(m.bandwidth_demand_mbps > 0)) bad("bandwidth demand must be positive");
  for (double d : m.compute_demands_gflops) {
    if (!(d > 0)) {
      bad("compute demands must be positive");
      break;
    }
  }
  if (!(m.delay_budget_ms > 0)) bad("delay budget must be positive");
  return violations;
}

namespace {

std::string join_chain(const std::vector<VnfId>& chain, const VnfCatalog& catalog) {
  std::string s;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) s += '|';
    s += catalog.type(chain[i]).name;
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string missions_to_csv(const std::vector<Mission>& missions, const VnfCatalog& catalog) {
  std::ostringstream out;
  out << "# sagin-missions-csv v1\n";
  out << "id,origin,class,src,dst,chain,bandwidth_mbps,compute_gflops,delay_budget_ms\n";
  for (const Mission& m : missions) {
    out << m.id << ',' << to_string(m.origin) << ',' << to_string(m.mission_class) << ',' << m.src
        << ',' << m.dst << ',' << join_chain(m.chain, catalog) << ','
        << format_double(m.bandwidth_demand_mbps) << ',';
    for (std::size_t i = 0; i < m.compute_demands_gflops.size(); ++i) {
      if (i) out << '|';
      out << format_double(m.compute_demands_gflops[i]);
    }
    out << ',' << format_double(m.delay_budget_ms) << '\n';
  }
  return out.str();
}

std::vector<Mission> missions_from_csv(const std::string& text, const VnfCatalog& catalog) {
  std::istringstream in(text);
  std::string line;
  std::vector<Mission> out;
  int line_no = 0;
  auto type_by_name = [&](const std::string& name) -> VnfId {
    for (const VnfType& t : catalog.types) {
      if (t.name == name) return t.id;
    }
    throw ConfigError("missions csv line " + std::to_string(line_no) + ": unknown VNF type '" +
                      name + "'");
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("id,", 0) == 0) continue;  // header
    auto fields = split(line, ',');
    if (fields.size() != 9) {
      throw ConfigError("missions csv line " + std::to_string(line_no) + ": expected 9 fields, got " +
                        std::to_string(fields.size()));
    }
    try {
      Mission m;
      m.id = std::stoi(fields[0]);
      m.origin = segment_from_string(fields[1]);
      m.mission_class = mission_class_from_string(fields[2]);
      m.src = std::stoi(fields[3]);
      m.dst = std::stoi(fields[4]);
      for (const std::string& name : split(fields[5], '|')) m.chain.push_back(type_by_name(name));
      m.bandwidth_demand_mbps = std::stod(fields[6]);
      for (const std::string& d : split(fields[7], '|')) m.compute_demands_gflops.push_back(std::stod(d));
      m.delay_budget_ms = std::stod(fields[8]);
      out.push_back(std::move(m));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("missions csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void save_missions(const std::vector<Mission>& missions, const VnfCatalog& catalog,
                   const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write missions file '" + path + "'");
  f << missions_to_csv(missions, catalog);
}

std::vector<Mission> load_missions(const std::string& path, const VnfCatalog& catalog) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open missions file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return missions_from_csv(buf.str(), catalog);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace sagin
