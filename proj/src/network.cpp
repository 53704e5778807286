#include "sagin/network.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sagin/config_file.hpp"
#include "sagin/error.hpp"
#include "sagin/format.hpp"
#include "sagin/rng.hpp"

namespace sagin {

const char* to_string(SegmentKind s) { return s == SegmentKind::Air ? "air" : "ground"; }

const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::A2G: return "a2g";
    case LinkKind::G2G: return "g2g";
    case LinkKind::A2A: return "a2a";
  }
  return "?";
}

SegmentKind segment_from_string(const std::string& s) {
  if (s == "air") return SegmentKind::Air;
  if (s == "ground") return SegmentKind::Ground;
  throw ConfigError("unknown segment '" + s + "' (expected 'air' or 'ground')");
}

namespace {

LinkKind link_kind(SegmentKind a, SegmentKind b) {
  if (a == b) return a == SegmentKind::Air ? LinkKind::A2A : LinkKind::G2G;
  return LinkKind::A2G;
}

}  // namespace

Network::Network(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  const int n = static_cast<int>(nodes_.size());
  if (n == 0) throw ConfigError("network has no nodes");
  for (int i = 0; i < n; ++i) {
    const Node& nd = nodes_[static_cast<std::size_t>(i)];
    if (nd.id != i) {
      throw ConfigError("node ids must be dense 0..N-1; position " + std::to_string(i) +
                        " holds id " + std::to_string(nd.id));
    }
    if (!(nd.compute_gflops > 0)) {
      throw ConfigError("node " + std::to_string(nd.id) + ": compute capacity must be positive");
    }
    if (nd.segment == SegmentKind::Air) {
      if (!nd.battery_wh || !(*nd.battery_wh > 0)) {
        throw ConfigError("air node " + std::to_string(nd.id) + ": battery_wh must be positive");
      }
    } else if (nd.battery_wh) {
      throw ConfigError("ground node " + std::to_string(nd.id) + ": battery_wh is only valid on air nodes");
    }
  }
  adjacency_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t li = 0; li < links_.size(); ++li) {
    Link& lk = links_[li];
    if (lk.a == lk.b) {
      throw ConfigError("link " + std::to_string(li) + ": self-loop at node " + std::to_string(lk.a));
    }
    if (lk.a < 0 || lk.a >= n || lk.b < 0 || lk.b >= n) {
      throw ConfigError("link " + std::to_string(li) + ": endpoint out of range");
    }
    if (lk.a > lk.b) std::swap(lk.a, lk.b);
    if (!(lk.bandwidth_mbps > 0)) {
      throw ConfigError("link " + std::to_string(li) + ": bandwidth must be positive");
    }
    if (!(lk.delay_ms > 0)) {
      throw ConfigError("link " + std::to_string(li) + ": delay must be positive");
    }
    lk.kind = link_kind(node(lk.a).segment, node(lk.b).segment);
    for (auto [nb, other] : adjacency_[static_cast<std::size_t>(lk.a)]) {
      if (nb == lk.b) {
        throw ConfigError("duplicate link between nodes " + std::to_string(lk.a) + " and " +
                          std::to_string(lk.b));
      }
    }
    adjacency_[static_cast<std::size_t>(lk.a)].push_back({lk.b, static_cast<LinkId>(li)});
    adjacency_[static_cast<std::size_t>(lk.b)].push_back({lk.a, static_cast<LinkId>(li)});
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  // connectivity
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (auto [nb, li] : neighbors(cur)) {
      if (!seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        ++reached;
        stack.push_back(nb);
      }
    }
  }
  if (reached != n) throw ConfigError("network graph is not connected");
}

std::optional<LinkId> Network::link_between(NodeId a, NodeId b) const {
  for (auto [nb, li] : neighbors(a)) {
    if (nb == b) return li;
  }
  return std::nullopt;
}

std::vector<NodeId> Network::nodes_in(SegmentKind s) const {
  std::vector<NodeId> out;
  for (const Node& n : nodes_) {
    if (n.segment == s) out.push_back(n.id);
  }
  return out;
}

int Network::count_in(SegmentKind s) const {
  int c = 0;
  for (const Node& n : nodes_) c += (n.segment == s);
  return c;
}

std::vector<std::pair<int, int>> TopologyConfig::default_ground_links(int ground_count) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < ground_count; ++i) out.push_back({i, (i + 1) % ground_count});
  if (ground_count == 2) out.pop_back();  // the wrap edge duplicates {0,1}
  if (ground_count >= 7) {
    out.push_back({0, 3});
    out.push_back({2, 5});
  }
  return out;
}

Network build_case_study_network(std::uint64_t seed, const TopologyConfig& config) {
  if (config.ground_count < 1 || config.air_count < 0) {
    throw ConfigError("topology config: need at least one ground node and a non-negative air count");
  }
  auto check_range = [](double lo, double hi, const char* what) {
    if (!(lo > 0) || !(hi >= lo)) {
      throw ConfigError(std::string("topology config: invalid ") + what + " range");
    }
  };
  check_range(config.bandwidth_mbps_lo, config.bandwidth_mbps_hi, "bandwidth");
  check_range(config.compute_gflops_lo, config.compute_gflops_hi, "compute");
  check_range(config.delay_ms_lo, config.delay_ms_hi, "delay");
  if (config.air_count > 0 && !(config.air_battery_wh > 0)) {
    throw ConfigError("topology config: air battery must be positive");
  }

  const int ng = config.ground_count;
  const int na = config.air_count;
  std::vector<std::pair<int, int>> glinks =
      config.ground_links.empty() && ng > 1 ? TopologyConfig::default_ground_links(ng) : config.ground_links;

  // the ground segment must be connected on its own
  if (ng > 1) {
    std::vector<std::vector<int>> gadj(static_cast<std::size_t>(ng));
    for (auto [a, b] : glinks) {
      if (a < 0 || a >= ng || b < 0 || b >= ng) {
        throw ConfigError("topology config: ground link references node " +
                          std::to_string(std::max(a, b)) + " outside 0.." + std::to_string(ng - 1));
      }
      gadj[static_cast<std::size_t>(a)].push_back(b);
      gadj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<char> seen(static_cast<std::size_t>(ng), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int nb : gadj[static_cast<std::size_t>(cur)]) {
        if (!seen[static_cast<std::size_t>(nb)]) {
          seen[static_cast<std::size_t>(nb)] = 1;
          ++reached;
          stack.push_back(nb);
        }
      }
    }
    if (reached != ng) throw ConfigError("topology config: ground graph is not connected");
  }

  Rng rng(seed);
  std::vector<Node> nodes;
  for (int i = 0; i < ng + na; ++i) {
    Node n;
    n.id = i;
    n.segment = i < ng ? SegmentKind::Ground : SegmentKind::Air;
    n.compute_gflops = rng.uniform(config.compute_gflops_lo, config.compute_gflops_hi);
    if (n.segment == SegmentKind::Air) n.battery_wh = config.air_battery_wh;
    nodes.push_back(n);
  }

  std::vector<Link> links;
  auto add_link = [&](int a, int b) {
    Link lk;
    lk.a = a;
    lk.b = b;
    lk.bandwidth_mbps = rng.uniform(config.bandwidth_mbps_lo, config.bandwidth_mbps_hi);
    lk.delay_ms = rng.uniform(config.delay_ms_lo, config.delay_ms_hi);
    links.push_back(lk);
  };
  for (auto [a, b] : glinks) add_link(a, b);
  if (config.air_air_link) {
    for (int i = 0; i < na; ++i) {
      for (int j = i + 1; j < na; ++j) add_link(ng + i, ng + j);
    }
  }
  for (int i = 0; i < na; ++i) {
    for (int g = 0; g < ng; ++g) add_link(ng + i, g);
  }

  return Network(std::move(nodes), std::move(links));
}

Network load_network(const std::string& path) {
  ConfigFile cfg = parse_config_file(path);
  std::vector<Node> nodes;
  std::vector<Link> links;
  for (const ConfigSection& s : cfg.sections) {
    if (s.name == "node") {
      Node n;
      n.id = s.get_int("id");
      n.segment = [&] {
        try {
          return segment_from_string(s.get_string("segment"));
        } catch (const ConfigError& e) {
          throw ConfigError(s.context("segment") + ": " + e.what());
        }
      }();
      n.compute_gflops = s.get_double("compute_gflops");
      if (s.has("battery_wh")) n.battery_wh = s.get_double("battery_wh");
      nodes.push_back(n);
    } else if (s.name == "link") {
      Link lk;
      lk.a = s.get_int("a");
      lk.b = s.get_int("b");
      lk.bandwidth_mbps = s.get_double("bandwidth_mbps");
      lk.delay_ms = s.get_double("delay_ms");
      links.push_back(lk);
    } else {
      throw ConfigError(path + ":" + std::to_string(s.line) + ": unknown section [" + s.name +
                        "] in topology file (expected [node] or [link])");
    }
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& x, const Node& y) { return x.id < y.id; });
  try {
    return Network(std::move(nodes), std::move(links));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void save_network(const Network& net, const std::string& path) {
  std::ostringstream out;
  out << "# topology file: [node] and [link] sections\n";
  for (const Node& n : net.nodes()) {
    out << "\n[node]\n";
    out << "id = " << n.id << "\n";
    out << "segment = " << to_string(n.segment) << "\n";
    out << "compute_gflops = " << format_double(n.compute_gflops) << "\n";
    if (n.battery_wh) out << "battery_wh = " << format_double(*n.battery_wh) << "\n";
  }
  for (const Link& lk : net.links()) {
    out << "\n[link]\n";
    out << "a = " << lk.a << "\n";
    out << "b = " << lk.b << "\n";
    out << "bandwidth_mbps = " << format_double(lk.bandwidth_mbps) << "\n";
    out << "delay_ms = " << format_double(lk.delay_ms) << "\n";
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write topology file '" + path + "'");
  f << out.str();
}

bool route_order_less(const Route& x, const Route& y) {
  if (x.hop_count() != y.hop_count()) return x.hop_count() < y.hop_count();
  if (x.total_delay_ms != y.total_delay_ms) return x.total_delay_ms < y.total_delay_ms;
  return x.nodes < y.nodes;
}

std::vector<Route> k_simple_paths(const Network& net, NodeId src, NodeId dst, int max_hops, int k) {
  if (src == dst) throw std::invalid_argument("k_simple_paths: src == dst");
  if (max_hops < 1 || k < 1) throw std::invalid_argument("k_simple_paths: max_hops and k must be >= 1");

  std::vector<Route> result;
  std::vector<char> on_path(static_cast<std::size_t>(net.node_count()), 0);
  std::vector<NodeId> nodes{src};
  std::vector<LinkId> link_seq;
  double delay = 0.0;

  // One depth round per hop count keeps the output sorted by the dominant
  // key, so the search can stop as soon as a full round has filled k slots.
  for (int hops = 1; hops <= max_hops; ++hops) {
    std::vector<Route> batch;
    on_path[static_cast<std::size_t>(src)] = 1;
    auto dfs = [&](auto&& self, NodeId cur) -> void {
      const int used = static_cast<int>(link_seq.size());
      if (used == hops) {
        if (cur == dst) batch.push_back(Route{nodes, link_seq, delay});
        return;
      }
      // a simple path cannot revisit dst
      if (cur == dst) return;
      for (auto [nb, li] : net.neighbors(cur)) {
        if (on_path[static_cast<std::size_t>(nb)]) continue;
        on_path[static_cast<std::size_t>(nb)] = 1;
        nodes.push_back(nb);
        link_seq.push_back(li);
        delay += net.link(li).delay_ms;
        self(self, nb);
        delay -= net.link(li).delay_ms;
        link_seq.pop_back();
        nodes.pop_back();
        on_path[static_cast<std::size_t>(nb)] = 0;
      }
    };
    dfs(dfs, src);
    on_path[static_cast<std::size_t>(src)] = 0;
    std::sort(batch.begin(), batch.end(), route_order_less);
    for (auto& r : batch) {
      if (static_cast<int>(result.size()) >= k) break;
      result.push_back(std::move(r));
    }
    if (static_cast<int>(result.size()) >= k) break;
  }
  return result;
}

}  // namespace sagin
