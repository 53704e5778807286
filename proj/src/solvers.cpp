#include "sagin/solvers.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sagin/error.hpp"

namespace sagin {

std::string to_string(OffloadPolicy p) { return p == OffloadPolicy::BDO ? "bdo" : "nobdo"; }

OffloadPolicy offload_policy_from_string(const std::string& s) {
  if (s == "bdo") return OffloadPolicy::BDO;
  if (s == "nobdo") return OffloadPolicy::NoBDO;
  throw ConfigError("unknown offload policy '" + s + "' (expected bdo or nobdo)");
}

namespace {

EnumerationOptions enum_options(const SolveOptions& options, OffloadPolicy policy,
                                const Mission& m) {
  EnumerationOptions eo;
  eo.limits = options.limits;
  eo.weights = options.weights;
  eo.multipliers = options.multipliers;
  if (policy == OffloadPolicy::NoBDO) eo.hosting_restriction = m.origin;
  return eo;
}

// Rebuilds the outcome's state from scratch in result order and recomputes
// every accepted embedding's cost against the rebuild state, so install
// charges are attributed to the first admitted user of each instance and
// totals are identical no matter which solver produced the outcome.
void finalize_outcome(SolveOutcome& out, const std::vector<Mission>& missions, const Network& net,
                      const VnfCatalog& catalog, const SolveOptions& options) {
  out.state = NetworkState(net);
  out.total_cost = CostBreakdown{};
  out.accepted_count = 0;
  for (std::size_t i = 0; i < out.results.size(); ++i) {
    MissionResult& r = out.results[i];
    if (!r.accepted) continue;
    const Mission& m = missions[i];
    Embedding& e = *r.embedding;
    e.cost = marginal_cost(e, m, net, catalog, out.state, options.weights, options.multipliers);
    commit(e, m, net, catalog, out.state);
    out.total_cost.bandwidth_cost += e.cost.bandwidth_cost;
    out.total_cost.a2g_bandwidth_cost += e.cost.a2g_bandwidth_cost;
    out.total_cost.new_install_cost += e.cost.new_install_cost;
    out.total_cost.processing_cost += e.cost.processing_cost;
    out.total_cost.total += e.cost.total;
    ++out.accepted_count;
  }
}

}  // namespace

SolveOutcome solve_greedy_sequential(const std::vector<Mission>& missions, const Network& net,
                                     const VnfCatalog& catalog, OffloadPolicy policy,
                                     const SolveOptions& options) {
  SolveOutcome out(net);
  out.results.reserve(missions.size());
  for (const Mission& m : missions) {
    MissionResult r;
    r.mission_id = m.id;
    EnumerationStats stats;
    auto best = best_candidate(m, net, catalog, out.state, enum_options(options, policy, m), &stats);
    if (best) {
      commit(*best, m, net, catalog, out.state);
      r.accepted = true;
      r.embedding = std::move(best);
    } else {
      r.block_reason = stats.block_reason();
    }
    out.results.push_back(std::move(r));
  }
  finalize_outcome(out, missions, net, catalog, options);
  return out;
}

namespace {

struct ExactSearch {
  const std::vector<Mission>& missions;
  const Network& net;
  const VnfCatalog& catalog;
  OffloadPolicy policy;
  const SolveOptions& options;

  std::vector<std::vector<Embedding>> candidates;  // per mission, vs empty state
  std::vector<std::size_t> order;                  // branchable missions, scarcest first
  std::vector<double> suffix_lb;                   // install-free cost bound per depth

  NetworkState state;
  std::vector<const Embedding*> chosen;
  int accepted = 0;
  double cost = 0.0;

  std::vector<std::optional<Embedding>> best_choice;
  int best_accepted = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  double best_value = std::numeric_limits<double>::infinity();  // weighted-sum mode

  std::uint64_t expanded = 0;
  bool exhausted = false;

  ExactSearch(const std::vector<Mission>& ms, const Network& n, const VnfCatalog& c,
              OffloadPolicy p, const SolveOptions& o)
      : missions(ms), net(n), catalog(c), policy(p), options(o), state(n) {}

  double weighted_value(int acc, double total) const {
    return options.block_penalty * static_cast<double>(order.size() - static_cast<std::size_t>(acc)) +
           total;
  }

  void seed_incumbent(const SolveOutcome& g) {
    best_choice.assign(missions.size(), std::nullopt);
    for (std::size_t i = 0; i < missions.size(); ++i) {
      if (g.results[i].accepted) best_choice[i] = g.results[i].embedding;
    }
    best_accepted = g.accepted_count;
    best_cost = g.total_cost.total;
    best_value = weighted_value(best_accepted, best_cost);
  }

  bool bounded_out(std::size_t depth) const {
    const std::size_t remaining = order.size() - depth;
    if (options.objective == ObjectiveMode::Lexicographic) {
      const int potential = accepted + static_cast<int>(remaining);
      if (potential < best_accepted) return true;
      if (potential == best_accepted && cost + suffix_lb[depth] >= best_cost) return true;
      return false;
    }
    const double blocked = static_cast<double>(depth) - static_cast<double>(accepted);
    return options.block_penalty * blocked + cost + suffix_lb[depth] >= best_value;
  }

  void take_incumbent() {
    bool better;
    if (options.objective == ObjectiveMode::Lexicographic) {
      better = accepted > best_accepted || (accepted == best_accepted && cost < best_cost);
    } else {
      better = weighted_value(accepted, cost) < best_value;
    }
    if (!better) return;
    best_accepted = accepted;
    best_cost = cost;
    best_value = weighted_value(accepted, cost);
    for (std::size_t i = 0; i < missions.size(); ++i) {
      if (chosen[i]) {
        best_choice[i] = *chosen[i];
      } else {
        best_choice[i].reset();
      }
    }
  }

  void dfs(std::size_t depth) {
    if (exhausted) return;
    if (++expanded > options.max_search_nodes) {
      exhausted = true;
      return;
    }
    if (depth == order.size()) {
      take_incumbent();
      return;
    }
    if (bounded_out(depth)) return;
    const std::size_t i = order[depth];
    const Mission& m = missions[i];
    for (const Embedding& cand : candidates[i]) {
      if (exhausted) return;
      if (!check_feasible(cand, m, net, catalog, state).ok) continue;
      const CostBreakdown dyn =
          marginal_cost(cand, m, net, catalog, state, options.weights, options.multipliers);
      commit(cand, m, net, catalog, state);
      chosen[i] = &cand;
      ++accepted;
      cost += dyn.total;
      dfs(depth + 1);
      cost -= dyn.total;
      --accepted;
      chosen[i] = nullptr;
      release(cand, m, net, catalog, state);
    }
    dfs(depth + 1);  // block branch, explored last
  }
};

}  // namespace

SolveOutcome solve_exact_batch(const std::vector<Mission>& missions, const Network& net,
                               const VnfCatalog& catalog, OffloadPolicy policy,
                               const SolveOptions& options) {
  ExactSearch search(missions, net, catalog, policy, options);
  search.candidates.resize(missions.size());
  search.chosen.assign(missions.size(), nullptr);

  std::vector<EnumerationStats> static_stats(missions.size());
  const NetworkState empty(net);
  for (std::size_t i = 0; i < missions.size(); ++i) {
    search.candidates[i] = enumerate_candidates(missions[i], net, catalog, empty,
                                                enum_options(options, policy, missions[i]),
                                                &static_stats[i]);
  }

  // A candidate infeasible against the empty state stays infeasible under
  // every later state (residuals only shrink, and instance sharing can only
  // relieve installs already paid for by others); missions with no static
  // candidates are therefore blocked outright and never branched on.
  for (std::size_t i = 0; i < missions.size(); ++i) {
    if (!search.candidates[i].empty()) search.order.push_back(i);
  }
  std::stable_sort(search.order.begin(), search.order.end(), [&](std::size_t a, std::size_t b) {
    if (search.candidates[a].size() != search.candidates[b].size()) {
      return search.candidates[a].size() < search.candidates[b].size();
    }
    return missions[a].id < missions[b].id;
  });

  search.suffix_lb.assign(search.order.size() + 1, 0.0);
  for (std::size_t d = search.order.size(); d-- > 0;) {
    const std::vector<Embedding>& cs = search.candidates[search.order[d]];
    double lb = std::numeric_limits<double>::infinity();
    for (const Embedding& c : cs) {
      lb = std::min(lb, options.weights.bandwidth * c.cost.bandwidth_cost +
                            options.weights.compute * c.cost.processing_cost);
    }
    if (options.objective == ObjectiveMode::WeightedSum) lb = std::min(lb, options.block_penalty);
    search.suffix_lb[d] = search.suffix_lb[d + 1] + lb;
  }

  search.seed_incumbent(solve_greedy_sequential(missions, net, catalog, policy, options));
  search.dfs(0);

  SolveOutcome out(net);
  out.results.resize(missions.size());
  for (std::size_t i = 0; i < missions.size(); ++i) {
    MissionResult& r = out.results[i];
    r.mission_id = missions[i].id;
    if (search.best_choice[i]) {
      r.accepted = true;
      r.embedding = std::move(search.best_choice[i]);
    }
  }
  out.optimal = !search.exhausted;
  out.nodes_expanded = search.expanded;
  finalize_outcome(out, missions, net, catalog, options);

  for (std::size_t i = 0; i < missions.size(); ++i) {
    MissionResult& r = out.results[i];
    if (r.accepted) continue;
    if (search.candidates[i].empty()) {
      r.block_reason = static_stats[i].block_reason();
      continue;
    }
    EnumerationStats now;
    auto feasible_now = best_candidate(missions[i], net, catalog, out.state,
                                       enum_options(options, policy, missions[i]), &now);
    r.block_reason = feasible_now ? "not selected by the objective" : now.block_reason();
  }
  return out;
}

SolveOutcome improve_local_search(const SolveOutcome& outcome,
                                  const std::vector<Mission>& missions, const Network& net,
                                  const VnfCatalog& catalog, OffloadPolicy policy,
                                  const SolveOptions& options) {
  if (outcome.results.size() != missions.size()) {
    throw std::logic_error("improve_local_search: outcome does not match the mission list");
  }
  SolveOutcome out = outcome;
  NetworkState& st = out.state;

  std::vector<std::size_t> scan(missions.size());
  std::iota(scan.begin(), scan.end(), 0);
  std::sort(scan.begin(), scan.end(),
            [&](std::size_t a, std::size_t b) { return missions[a].id < missions[b].id; });

  for (int sweep = 0; sweep < options.local_search_sweeps; ++sweep) {
    bool improved = false;

    // (a) re-embed an accepted mission when a strictly cheaper candidate
    // exists against the state without it.
    for (std::size_t i : scan) {
      MissionResult& r = out.results[i];
      if (!r.accepted) continue;
      const Mission& m = missions[i];
      const Embedding cur = *r.embedding;
      release(cur, m, net, catalog, st);
      const double cur_now =
          marginal_cost(cur, m, net, catalog, st, options.weights, options.multipliers).total;
      auto cand = best_candidate(m, net, catalog, st, enum_options(options, policy, m));
      if (cand && cand->cost.total < cur_now) {
        commit(*cand, m, net, catalog, st);
        r.embedding = std::move(cand);
        improved = true;
      } else {
        commit(cur, m, net, catalog, st);
      }
    }

    // (b) unblock a blocked mission, directly when room appeared, otherwise
    // by trading out a single accepted donor.
    for (std::size_t i : scan) {
      if (out.results[i].accepted) continue;
      const Mission& m = missions[i];
      if (auto cand = best_candidate(m, net, catalog, st, enum_options(options, policy, m))) {
        commit(*cand, m, net, catalog, st);
        out.results[i].accepted = true;
        out.results[i].embedding = std::move(cand);
        out.results[i].block_reason.clear();
        improved = true;
        continue;
      }
      for (std::size_t j : scan) {
        if (i == j || !out.results[j].accepted) continue;
        const Mission& dm = missions[j];
        const Embedding donor = *out.results[j].embedding;
        release(donor, dm, net, catalog, st);
        const double donor_now =
            marginal_cost(donor, dm, net, catalog, st, options.weights, options.multipliers).total;
        auto cand_m = best_candidate(m, net, catalog, st, enum_options(options, policy, m));
        bool adopted = false;
        if (cand_m) {
          const double m_cost = cand_m->cost.total;
          commit(*cand_m, m, net, catalog, st);
          auto cand_d = best_candidate(dm, net, catalog, st, enum_options(options, policy, dm));
          if (cand_d) {
            // both fit: one more mission accepted
            commit(*cand_d, dm, net, catalog, st);
            out.results[j].embedding = std::move(cand_d);
            adopted = true;
          } else if (m_cost < donor_now) {
            // plain swap, kept only when strictly cheaper
            out.results[j].accepted = false;
            out.results[j].embedding.reset();
            adopted = true;
          } else {
            release(*cand_m, m, net, catalog, st);
          }
        }
        if (adopted) {
          out.results[i].accepted = true;
          out.results[i].embedding = std::move(cand_m);
          out.results[i].block_reason.clear();
          improved = true;
          break;
        }
        commit(donor, dm, net, catalog, st);
      }
    }

    if (!improved) break;
  }

  for (std::size_t i : scan) {
    MissionResult& r = out.results[i];
    if (r.accepted) continue;
    EnumerationStats stats;
    auto feasible_now =
        best_candidate(missions[i], net, catalog, st, enum_options(options, policy, missions[i]), &stats);
    r.block_reason = feasible_now ? "not selected within the sweep budget" : stats.block_reason();
  }

  finalize_outcome(out, missions, net, catalog, options);
  return out;
}

}  // namespace sagin
