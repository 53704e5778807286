#include "sagin/embedding.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sagin {

NetworkState::NetworkState(const Network& net) {
  bandwidth_capacity.reserve(net.links().size());
  for (const Link& l : net.links()) bandwidth_capacity.push_back(l.bandwidth_mbps);
  compute_capacity.reserve(net.nodes().size());
  for (const Node& n : net.nodes()) compute_capacity.push_back(n.compute_gflops);
  residual_bandwidth = bandwidth_capacity;
  residual_compute = compute_capacity;
}

int NetworkState::refcount(NodeId n, VnfId v) const {
  auto it = instances.find({n, v});
  return it == instances.end() ? 0 : it->second;
}

std::string EnumerationStats::block_reason() const {
  if (candidates > 0) return {};
  if (paths_considered == 0) return "no route within hop limit";
  if (paths_without_placement > 0) return "compute capacity";
  if (paths_bandwidth_blocked > 0) return "bandwidth capacity";
  return "delay budget";
}

namespace {

// Distinct (node, vnf) pairs the placement uses, sorted.
std::vector<std::pair<NodeId, VnfId>> used_instances(const Embedding& e, const Mission& m) {
  std::vector<std::pair<NodeId, VnfId>> used;
  for (std::size_t i = 0; i < m.chain.size(); ++i) {
    used.push_back({e.placement.assignment[i], m.chain[i]});
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return used;
}

std::string validate_structure(const Embedding& e, const Mission& m, const Network& net) {
  const Route& r = e.route;
  if (r.links.empty()) return "structure: empty route";
  if (r.nodes.size() != r.links.size() + 1) return "structure: node/link count mismatch";
  if (r.nodes.front() != m.src || r.nodes.back() != m.dst) {
    return "structure: route endpoints do not match the mission";
  }
  double delay = 0.0;
  for (std::size_t i = 0; i < r.links.size(); ++i) {
    if (r.links[i] < 0 || r.links[i] >= net.link_count()) return "structure: link id out of range";
    const Link& lk = net.link(r.links[i]);
    if (!lk.touches(r.nodes[i]) || lk.other(r.nodes[i]) != r.nodes[i + 1]) {
      return "structure: link sequence does not connect the node sequence";
    }
    delay += lk.delay_ms;
  }
  if (delay != r.total_delay_ms) return "structure: stored delay does not match link delays";
  std::vector<NodeId> sorted_nodes = r.nodes;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());
  if (std::adjacent_find(sorted_nodes.begin(), sorted_nodes.end()) != sorted_nodes.end()) {
    return "structure: route is not a simple path";
  }
  const Placement& p = e.placement;
  if (p.assignment.size() != m.chain.size() || p.route_positions.size() != m.chain.size()) {
    return "structure: placement size does not match the chain";
  }
  int prev = 0;
  for (std::size_t i = 0; i < p.assignment.size(); ++i) {
    const int rp = p.route_positions[i];
    if (rp < 0 || rp >= static_cast<int>(r.nodes.size())) return "structure: placement off the route";
    if (rp < prev) return "structure: placement violates chain order along the route";
    if (p.assignment[i] != r.nodes[static_cast<std::size_t>(rp)]) {
      return "structure: assignment node disagrees with its route position";
    }
    prev = rp;
  }
  return {};
}

// Per-node capacity requirement of the embedding against the state: new
// installs (each counted once) plus assigned processing.
std::vector<std::pair<NodeId, double>> node_requirements(const Embedding& e, const Mission& m,
                                                         const VnfCatalog& catalog,
                                                         const NetworkState& state) {
  std::vector<std::pair<NodeId, double>> need;
  auto slot = [&](NodeId n) -> double& {
    for (auto& [id, v] : need) {
      if (id == n) return v;
    }
    need.push_back({n, 0.0});
    return need.back().second;
  };
  for (const auto& [n, v] : used_instances(e, m)) {
    if (!state.has_instance(n, v)) slot(n) += catalog.type(v).install_gflops;
  }
  for (std::size_t i = 0; i < m.chain.size(); ++i) {
    slot(e.placement.assignment[i]) += m.compute_demands_gflops[i];
  }
  return need;
}

}  // namespace

std::vector<std::pair<NodeId, VnfId>> new_instances(const Embedding& e, const Mission& m,
                                                    const NetworkState& state) {
  std::vector<std::pair<NodeId, VnfId>> out;
  for (const auto& pair : used_instances(e, m)) {
    if (!state.has_instance(pair.first, pair.second)) out.push_back(pair);
  }
  return out;
}

FeasibilityCheck check_feasible(const Embedding& e, const Mission& m, const Network& net,
                                const VnfCatalog& catalog, const NetworkState& state) {
  if (std::string s = validate_structure(e, m, net); !s.empty()) return {false, s};
  for (LinkId l : e.route.links) {
    if (state.residual_bandwidth[static_cast<std::size_t>(l)] < m.bandwidth_demand_mbps) {
      return {false, "bandwidth capacity on link " + std::to_string(l)};
    }
  }
  for (const auto& [n, req] : node_requirements(e, m, catalog, state)) {
    if (state.residual_compute[static_cast<std::size_t>(n)] < req) {
      return {false, "compute capacity on node " + std::to_string(n)};
    }
  }
  if (e.route.total_delay_ms > m.delay_budget_ms) return {false, "delay budget"};
  return {true, {}};
}

CostBreakdown marginal_cost(const Embedding& e, const Mission& m, const Network& net,
                            const VnfCatalog& catalog, const NetworkState& state,
                            const Weights& weights, const SegmentMultipliers& multipliers) {
  CostBreakdown c;
  c.bandwidth_cost = m.bandwidth_demand_mbps * e.route.hop_count();
  int a2g_hops = 0;
  for (LinkId l : e.route.links) a2g_hops += (net.link(l).kind == LinkKind::A2G);
  c.a2g_bandwidth_cost = m.bandwidth_demand_mbps * a2g_hops;
  for (const auto& [n, v] : new_instances(e, m, state)) {
    c.new_install_cost += catalog.type(v).install_gflops * multipliers.of(net.node(n).segment);
  }
  for (std::size_t i = 0; i < m.chain.size(); ++i) {
    c.processing_cost += m.compute_demands_gflops[i] *
                         multipliers.of(net.node(e.placement.assignment[i]).segment);
  }
  c.total = weights.bandwidth * c.bandwidth_cost +
            weights.compute * (c.new_install_cost + c.processing_cost);
  return c;
}

bool candidate_order_less(const Embedding& x, const Embedding& y) {
  if (x.cost.total != y.cost.total) return x.cost.total < y.cost.total;
  if (x.route.hop_count() != y.route.hop_count()) return x.route.hop_count() < y.route.hop_count();
  if (x.route.nodes != y.route.nodes) return x.route.nodes < y.route.nodes;
  return x.placement.route_positions < y.placement.route_positions;
}

namespace {

// Enumerates feasible candidates for one mission and hands each to the
// visitor. Placements are generated per route in lexicographic
// route-position order; infeasible branches are pruned as soon as a node's
// accumulated requirement exceeds its residual (extensions only ever add
// load, so the cut is lossless).
void enumerate_impl(const Mission& m, const Network& net, const VnfCatalog& catalog,
                    const NetworkState& state, const EnumerationOptions& options,
                    EnumerationStats* stats, const std::function<void(Embedding&&)>& visit) {
  EnumerationStats local;
  EnumerationStats& st = stats ? *stats : local;
  st = EnumerationStats{};

  const std::vector<Route> routes =
      k_simple_paths(net, m.src, m.dst, options.limits.max_hops, options.limits.k_paths);
  const std::size_t chain_len = m.chain.size();

  for (const Route& route : routes) {
    ++st.paths_considered;
    if (route.total_delay_ms > m.delay_budget_ms) {
      ++st.paths_delay_blocked;
      continue;
    }
    bool bw_ok = true;
    for (LinkId l : route.links) {
      if (state.residual_bandwidth[static_cast<std::size_t>(l)] < m.bandwidth_demand_mbps) {
        bw_ok = false;
        break;
      }
    }
    if (!bw_ok) {
      ++st.paths_bandwidth_blocked;
      continue;
    }

    const std::size_t route_len = route.nodes.size();
    std::vector<char> hostable(route_len, 1);
    if (options.hosting_restriction) {
      for (std::size_t i = 0; i < route_len; ++i) {
        hostable[i] = net.node(route.nodes[i]).segment == *options.hosting_restriction;
      }
    }

    CostBreakdown base;
    base.bandwidth_cost = m.bandwidth_demand_mbps * route.hop_count();
    int a2g_hops = 0;
    for (LinkId l : route.links) a2g_hops += (net.link(l).kind == LinkKind::A2G);
    base.a2g_bandwidth_cost = m.bandwidth_demand_mbps * a2g_hops;

    // per-route-position scratch
    std::vector<double> extra(route_len, 0.0);             // GFLOPS claimed so far
    std::vector<std::vector<VnfId>> fresh(route_len);      // types newly installed here
    std::vector<int> positions;
    positions.reserve(chain_len);
    double install_cost_sum = 0.0;
    double processing_cost_sum = 0.0;
    bool emitted_any = false;

    std::function<void(std::size_t, std::size_t)> place = [&](std::size_t chain_pos,
                                                              std::size_t min_rp) {
      if (chain_pos == chain_len) {
        Embedding e;
        e.mission_id = m.id;
        e.route = route;
        e.placement.route_positions = positions;
        e.placement.assignment.reserve(chain_len);
        for (int rp : positions) {
          e.placement.assignment.push_back(route.nodes[static_cast<std::size_t>(rp)]);
        }
        e.cost = base;
        e.cost.new_install_cost = install_cost_sum;
        e.cost.processing_cost = processing_cost_sum;
        e.cost.total = options.weights.bandwidth * e.cost.bandwidth_cost +
                       options.weights.compute * (install_cost_sum + processing_cost_sum);
        emitted_any = true;
        ++st.candidates;
        visit(std::move(e));
        return;
      }
      const VnfId vnf = m.chain[chain_pos];
      const double demand = m.compute_demands_gflops[chain_pos];
      for (std::size_t rp = min_rp; rp < route_len; ++rp) {
        if (!hostable[rp]) continue;
        const NodeId node = route.nodes[rp];
        const double mult = options.multipliers.of(net.node(node).segment);
        const bool is_new = !state.has_instance(node, vnf) &&
                            std::find(fresh[rp].begin(), fresh[rp].end(), vnf) == fresh[rp].end();
        const double install = is_new ? catalog.type(vnf).install_gflops : 0.0;
        if (extra[rp] + demand + install > state.residual_compute[static_cast<std::size_t>(node)]) {
          continue;
        }
        extra[rp] += demand + install;
        if (is_new) fresh[rp].push_back(vnf);
        positions.push_back(static_cast<int>(rp));
        install_cost_sum += install * mult;
        processing_cost_sum += demand * mult;
        place(chain_pos + 1, rp);
        processing_cost_sum -= demand * mult;
        install_cost_sum -= install * mult;
        positions.pop_back();
        if (is_new) fresh[rp].pop_back();
        extra[rp] -= demand + install;
      }
    };
    place(0, 0);
    if (!emitted_any) ++st.paths_without_placement;
  }
}

}  // namespace

std::vector<Embedding> enumerate_candidates(const Mission& m, const Network& net,
                                            const VnfCatalog& catalog, const NetworkState& state,
                                            const EnumerationOptions& options,
                                            EnumerationStats* stats) {
  std::vector<Embedding> out;
  enumerate_impl(m, net, catalog, state, options, stats,
                 [&](Embedding&& e) { out.push_back(std::move(e)); });
  std::sort(out.begin(), out.end(), candidate_order_less);
  return out;
}

std::optional<Embedding> best_candidate(const Mission& m, const Network& net,
                                        const VnfCatalog& catalog, const NetworkState& state,
                                        const EnumerationOptions& options,
                                        EnumerationStats* stats) {
  std::optional<Embedding> best;
  enumerate_impl(m, net, catalog, state, options, stats, [&](Embedding&& e) {
    if (!best || candidate_order_less(e, *best)) best = std::move(e);
  });
  return best;
}

void commit(const Embedding& e, const Mission& m, const Network& net, const VnfCatalog& catalog,
            NetworkState& state) {
  const FeasibilityCheck check = check_feasible(e, m, net, catalog, state);
  if (!check.ok) throw std::logic_error("commit of infeasible embedding: " + check.violation);
  for (LinkId l : e.route.links) {
    state.residual_bandwidth[static_cast<std::size_t>(l)] -= m.bandwidth_demand_mbps;
  }
  for (const auto& [n, v] : used_instances(e, m)) {
    auto it = state.instances.find({n, v});
    if (it == state.instances.end()) {
      state.residual_compute[static_cast<std::size_t>(n)] -= catalog.type(v).install_gflops;
      state.instances.emplace(std::make_pair(n, v), 1);
    } else {
      ++it->second;
    }
  }
  for (std::size_t i = 0; i < m.chain.size(); ++i) {
    state.residual_compute[static_cast<std::size_t>(e.placement.assignment[i])] -=
        m.compute_demands_gflops[i];
  }
}

void release(const Embedding& e, const Mission& m, const Network& net, const VnfCatalog& catalog,
             NetworkState& state) {
  if (std::string s = validate_structure(e, m, net); !s.empty()) {
    throw std::logic_error("release of malformed embedding: " + s);
  }
  const auto used = used_instances(e, m);
  for (const auto& [n, v] : used) {
    if (state.refcount(n, v) < 1) {
      throw std::logic_error("release of embedding that is not committed: no instance (" +
                             std::to_string(n) + ", " + catalog.type(v).name + ")");
    }
  }
  for (LinkId l : e.route.links) {
    const std::size_t li = static_cast<std::size_t>(l);
    if (state.residual_bandwidth[li] + m.bandwidth_demand_mbps > state.bandwidth_capacity[li]) {
      throw std::logic_error("release would overflow bandwidth capacity of link " + std::to_string(l));
    }
  }
  // refunds per node, to validate against capacity before mutating
  std::vector<std::pair<NodeId, double>> refund;
  auto slot = [&](NodeId n) -> double& {
    for (auto& [id, v] : refund) {
      if (id == n) return v;
    }
    refund.push_back({n, 0.0});
    return refund.back().second;
  };
  for (const auto& [n, v] : used) {
    if (state.refcount(n, v) == 1) slot(n) += catalog.type(v).install_gflops;
  }
  for (std::size_t i = 0; i < m.chain.size(); ++i) {
    slot(e.placement.assignment[i]) += m.compute_demands_gflops[i];
  }
  for (const auto& [n, amount] : refund) {
    const std::size_t ni = static_cast<std::size_t>(n);
    if (state.residual_compute[ni] + amount > state.compute_capacity[ni]) {
      throw std::logic_error("release would overflow compute capacity of node " + std::to_string(n));
    }
  }

  for (LinkId l : e.route.links) {
    state.residual_bandwidth[static_cast<std::size_t>(l)] += m.bandwidth_demand_mbps;
  }
  for (const auto& [n, v] : used) {
    auto it = state.instances.find({n, v});
    if (--it->second == 0) state.instances.erase(it);
  }
  for (const auto& [n, amount] : refund) {
    state.residual_compute[static_cast<std::size_t>(n)] += amount;
  }
}

}  // namespace sagin
