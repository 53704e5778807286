#ifndef SAGIN_EMBEDDING_HPP
#define SAGIN_EMBEDDING_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sagin/mission.hpp"
#include "sagin/network.hpp"

namespace sagin {

// Chain position -> hosting node. route_positions[i] is the index of
// assignment[i] in the route's node sequence; positions are non-decreasing,
// so the chain is traversed in order along the route (several consecutive
// VNFs may share a node, endpoints included).
struct Placement {
  std::vector<NodeId> assignment;
  std::vector<int> route_positions;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct CostBreakdown {
  double bandwidth_cost = 0.0;      // demand x hops (Mbps-hops)
  double a2g_bandwidth_cost = 0.0;  // demand x A2G hops only
  double new_install_cost = 0.0;    // install x segment multiplier, new instances only
  double processing_cost = 0.0;     // per-VNF demand x segment multiplier
  double total = 0.0;               // w_b * bandwidth + w_c * (install + processing)

  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

struct Embedding {
  int mission_id = -1;
  Route route;
  Placement placement;
  CostBreakdown cost;  // marginal against the state it was enumerated for

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct Weights {
  double bandwidth = 1.0;  // per Mbps-hop
  double compute = 1.0;    // per GFLOPS
};

// Cost-accounting multiplier per hosting segment; capacity is unaffected.
struct SegmentMultipliers {
  double air = 2.0;
  double ground = 1.0;

  double of(SegmentKind s) const { return s == SegmentKind::Air ? air : ground; }
};

// Defaults keep offloads to short detours: two hops covers the direct route
// plus every one-node detour on the case-study scale, and eight routes is
// enough to hold that whole family.
struct CandidateLimits {
  int max_hops = 2;
  int k_paths = 8;
};

// Residual resources plus installed VNF instances with mission refcounts.
// Capacities are frozen copies so a state can be audited and released
// against without the owning network.
struct NetworkState {
  std::vector<double> bandwidth_capacity;
  std::vector<double> compute_capacity;
  std::vector<double> residual_bandwidth;
  std::vector<double> residual_compute;
  std::map<std::pair<NodeId, VnfId>, int> instances;

  explicit NetworkState(const Network& net);

  bool has_instance(NodeId n, VnfId v) const { return instances.count({n, v}) > 0; }
  int refcount(NodeId n, VnfId v) const;

  friend bool operator==(const NetworkState&, const NetworkState&) = default;
};

struct FeasibilityCheck {
  bool ok = false;
  std::string violation;  // names the binding resource when !ok
};

struct EnumerationOptions {
  CandidateLimits limits;
  Weights weights;
  SegmentMultipliers multipliers;
  // When set, every VNF must be hosted on nodes of this segment (transit
  // over foreign links stays allowed). Used for the no-offloading policy.
  std::optional<SegmentKind> hosting_restriction;
};

// Why candidate generation came up empty; filled by enumerate_candidates.
struct EnumerationStats {
  int paths_considered = 0;
  int paths_delay_blocked = 0;
  int paths_bandwidth_blocked = 0;
  int paths_without_placement = 0;
  int candidates = 0;

  // Name of the binding constraint for a blocked mission.
  std::string block_reason() const;
};

// Distinct (node, vnf) instances the embedding needs that are absent from
// the state. Sorted; each listed once even if the chain repeats a type.
std::vector<std::pair<NodeId, VnfId>> new_instances(const Embedding& e, const Mission& m,
                                                    const NetworkState& state);

// Structure first (route wellformedness, order preservation), then residual
// bandwidth per route link, residual compute per node (new installs plus
// assigned processing), then the delay budget.
FeasibilityCheck check_feasible(const Embedding& e, const Mission& m, const Network& net,
                                const VnfCatalog& catalog, const NetworkState& state);

CostBreakdown marginal_cost(const Embedding& e, const Mission& m, const Network& net,
                            const VnfCatalog& catalog, const NetworkState& state,
                            const Weights& weights, const SegmentMultipliers& multipliers);

// All feasible (route, placement) candidates for the mission against the
// state, sorted by candidate_order_less. Empty means blocked.
std::vector<Embedding> enumerate_candidates(const Mission& m, const Network& net,
                                            const VnfCatalog& catalog, const NetworkState& state,
                                            const EnumerationOptions& options,
                                            EnumerationStats* stats = nullptr);

// First candidate under the canonical order without materializing the rest.
std::optional<Embedding> best_candidate(const Mission& m, const Network& net,
                                        const VnfCatalog& catalog, const NetworkState& state,
                                        const EnumerationOptions& options,
                                        EnumerationStats* stats = nullptr);

// Canonical candidate order: (total cost, hop count, route nodes, placement
// route positions).
bool candidate_order_less(const Embedding& x, const Embedding& y);

// Applies the embedding. Throws std::logic_error if it is not feasible
// against the state; callers gate on check_feasible.
void commit(const Embedding& e, const Mission& m, const Network& net, const VnfCatalog& catalog,
            NetworkState& state);

// Exact inverse of commit. Instances whose refcount reaches zero are removed
// and their install capacity refunded. Throws std::logic_error when the
// embedding is not currently committed.
void release(const Embedding& e, const Mission& m, const Network& net, const VnfCatalog& catalog,
             NetworkState& state);

}  // namespace sagin

#endif  // SAGIN_EMBEDDING_HPP
