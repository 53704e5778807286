#ifndef SAGIN_SOLVERS_HPP
#define SAGIN_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sagin/embedding.hpp"
#include "sagin/mission.hpp"
#include "sagin/network.hpp"

namespace sagin {

// BDO: any node may host any VNF. NoBDO: a mission's VNFs must stay on its
// origin segment; routes may still transit foreign links.
enum class OffloadPolicy { BDO, NoBDO };

std::string to_string(OffloadPolicy p);
OffloadPolicy offload_policy_from_string(const std::string& s);

// How the exact solver composes the two goals. Lexicographic maximizes
// accepted missions first and minimizes weighted cost second; WeightedSum
// minimizes block_penalty * blocked + cost. Greedy always admits when it
// can, so the switch only affects solve_exact_batch.
enum class ObjectiveMode { Lexicographic, WeightedSum };

struct SolveOptions {
  CandidateLimits limits;
  Weights weights;
  SegmentMultipliers multipliers;
  ObjectiveMode objective = ObjectiveMode::Lexicographic;
  double block_penalty = 1.0e6;
  std::uint64_t max_search_nodes = 2'000'000;  // exact solver expansion budget
  int local_search_sweeps = 2;  // converges on the case-study scale
};

struct MissionResult {
  int mission_id = -1;
  bool accepted = false;
  std::optional<Embedding> embedding;  // set iff accepted
  std::string block_reason;            // set iff blocked
};

struct SolveOutcome {
  std::vector<MissionResult> results;  // mission input order
  int accepted_count = 0;
  CostBreakdown total_cost;  // aggregate over accepted missions
  NetworkState state;        // after all commits
  bool optimal = true;       // false when the exact solver ran out of budget
  std::uint64_t nodes_expanded = 0;

  explicit SolveOutcome(const Network& net) : state(net) {}
};

// Admits missions one at a time in input order, committing the cheapest
// feasible candidate under the policy and blocking when none exists.
SolveOutcome solve_greedy_sequential(const std::vector<Mission>& missions, const Network& net,
                                     const VnfCatalog& catalog, OffloadPolicy policy,
                                     const SolveOptions& options = {});

// Branch and bound over per-mission candidate lists plus an explicit block
// branch. Optimal for the configured objective within the candidate limits;
// when max_search_nodes is exceeded the incumbent is returned with
// optimal = false. Intended for small instances (about <= 10 missions).
SolveOutcome solve_exact_batch(const std::vector<Mission>& missions, const Network& net,
                               const VnfCatalog& catalog, OffloadPolicy policy,
                               const SolveOptions& options = {});

// Refinement over a greedy outcome: re-embeds accepted missions when
// strictly cheaper and tries to unblock blocked ones, directly or by
// trading out one accepted mission. Keeps a move only when
// (accepted_count, total cost) improves lexicographically. Runs up to
// options.local_search_sweeps full sweeps in mission id order.
SolveOutcome improve_local_search(const SolveOutcome& outcome,
                                  const std::vector<Mission>& missions, const Network& net,
                                  const VnfCatalog& catalog, OffloadPolicy policy,
                                  const SolveOptions& options = {});

}  // namespace sagin

#endif  // SAGIN_SOLVERS_HPP
