#ifndef SAGIN_MISSION_HPP
#define SAGIN_MISSION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sagin/network.hpp"

namespace sagin {

using VnfId = int;

struct VnfType {
  VnfId id = 0;
  std::string name;             // "A".."E" in the default catalog
  double install_gflops = 0.0;  // per installed instance

  friend bool operator==(const VnfType&, const VnfType&) = default;
};

struct VnfCatalog {
  std::vector<VnfType> types;

  static VnfCatalog default_catalog();  // five types A..E, install cost 30

  const VnfType& type(VnfId id) const { return types[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(types.size()); }
  friend bool operator==(const VnfCatalog&, const VnfCatalog&) = default;
};

enum class MissionClass { DelaySensitive, ComputationIntensive };

const char* to_string(MissionClass c);
MissionClass mission_class_from_string(const std::string& s);

struct Mission {
  int id = 0;
  SegmentKind origin = SegmentKind::Ground;
  MissionClass mission_class = MissionClass::DelaySensitive;
  NodeId src = 0;
  NodeId dst = 0;
  std::vector<VnfId> chain;                    // 3..6 entries
  double bandwidth_demand_mbps = 0.0;
  std::vector<double> compute_demands_gflops;  // one per chain position
  double delay_budget_ms = 0.0;

  friend bool operator==(const Mission&, const Mission&) = default;
};

struct ClassDemandRanges {
  double bandwidth_mbps_lo = 5.0;
  double bandwidth_mbps_hi = 15.0;
  double compute_gflops_lo = 0.0;
  double compute_gflops_hi = 0.0;
  double delay_budget_ms_lo = 0.0;
  double delay_budget_ms_hi = 0.0;
};

struct GeneratorConfig {
  int mission_count = 0;
  double delay_sensitive_fraction = 0.5;  // class mix
  double ground_origin_fraction = 0.5;    // origin mix
  int chain_len_min = 3;
  int chain_len_max = 6;
  ClassDemandRanges delay_sensitive{5.0, 15.0, 20.0, 50.0, 40.0, 40.0};
  ClassDemandRanges computation_intensive{5.0, 15.0, 80.0, 150.0, 90.0, 90.0};

  const ClassDemandRanges& ranges(MissionClass c) const {
    return c == MissionClass::DelaySensitive ? delay_sensitive : computation_intensive;
  }
};

// Deterministic in (seed, net, catalog, cfg). Per mission the draw order is:
// class, origin, src, dst, chain length, chain types, bandwidth, per-VNF
// compute, delay budget. Chains never repeat a type until the catalog is
// exhausted; any positions beyond the catalog size are drawn uniformly and
// appended last.
std::vector<Mission> generate_missions(std::uint64_t seed, const Network& net,
                                       const VnfCatalog& catalog, const GeneratorConfig& cfg);

// Every violated mission invariant, empty when the mission is well-formed.
std::vector<std::string> validate_mission(const Mission& m, const Network& net,
                                          const VnfCatalog& catalog);

// Line-per-mission CSV for inspection and replay.
std::string missions_to_csv(const std::vector<Mission>& missions, const VnfCatalog& catalog);
std::vector<Mission> missions_from_csv(const std::string& text, const VnfCatalog& catalog);
void save_missions(const std::vector<Mission>& missions, const VnfCatalog& catalog,
                   const std::string& path);
std::vector<Mission> load_missions(const std::string& path, const VnfCatalog& catalog);

// FNV-1a over the serialized CSV; used as the mission-list digest in reports.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace sagin

#endif  // SAGIN_MISSION_HPP
