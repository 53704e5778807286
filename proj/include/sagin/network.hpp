#ifndef SAGIN_NETWORK_HPP
#define SAGIN_NETWORK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sagin {

using NodeId = int;
using LinkId = int;

enum class SegmentKind { Air, Ground };
enum class LinkKind { A2G, G2G, A2A };

const char* to_string(SegmentKind s);
const char* to_string(LinkKind k);
SegmentKind segment_from_string(const std::string& s);

struct Node {
  NodeId id = 0;
  SegmentKind segment = SegmentKind::Ground;
  double compute_gflops = 0.0;
  std::optional<double> battery_wh;  // defined iff segment == Air

  friend bool operator==(const Node&, const Node&) = default;
};

struct Link {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  double bandwidth_mbps = 0.0;
  double delay_ms = 0.0;
  LinkKind kind = LinkKind::G2G;

  NodeId other(NodeId n) const { return n == a ? b : a; }
  bool touches(NodeId n) const { return n == a || n == b; }

  friend bool operator==(const Link&, const Link&) = default;
};

// The SAGIN graph. Immutable after construction; the constructor validates
// every structural invariant (dense ids, positive capacities, no self loops
// or duplicate links, battery iff air, connectivity) and throws ConfigError
// with a description of the first violation.
class Network {
 public:
  Network(std::vector<Node> nodes, std::vector<Link> links);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const Link& link(LinkId id) const { return links_[static_cast<std::size_t>(id)]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }

  // (neighbor, link id) pairs, sorted by neighbor id.
  const std::vector<std::pair<NodeId, LinkId>>& neighbors(NodeId id) const {
    return adjacency_[static_cast<std::size_t>(id)];
  }
  std::optional<LinkId> link_between(NodeId a, NodeId b) const;

  std::vector<NodeId> nodes_in(SegmentKind s) const;
  int count_in(SegmentKind s) const;
  bool is_air(NodeId id) const { return node(id).segment == SegmentKind::Air; }

  friend bool operator==(const Network& x, const Network& y) {
    return x.nodes_ == y.nodes_ && x.links_ == y.links_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<std::pair<NodeId, LinkId>>> adjacency_;
};

// Parameters for the built-in case-study topology: seven ground nodes
// (ids 0..6) and two air nodes (ids 7, 8) with full air-ground connectivity.
// The ground adjacency defaults to a ring over 0..6 plus the chords {0,3}
// and {2,5}; both it and the air-air link are overridable.
struct TopologyConfig {
  int ground_count = 7;
  int air_count = 2;
  std::vector<std::pair<int, int>> ground_links;  // ground ids; empty -> default ring+chords
  bool air_air_link = true;
  double bandwidth_mbps_lo = 80.0;
  double bandwidth_mbps_hi = 100.0;
  double compute_gflops_lo = 500.0;
  double compute_gflops_hi = 600.0;
  double delay_ms_lo = 10.0;
  double delay_ms_hi = 15.0;
  double air_battery_wh = 100.0;

  // The ring+chords default, materialized for a given ground node count.
  static std::vector<std::pair<int, int>> default_ground_links(int ground_count);
};

// Deterministic in (seed, config): node compute draws in id order, then link
// bandwidth/delay draws in construction order (ground links as configured,
// air-air, then air-ground pairs in ascending (air, ground) id order).
Network build_case_study_network(std::uint64_t seed, const TopologyConfig& config = TopologyConfig{});

// Topology file I/O ([node] and [link] sections, see README). save/load
// round-trips a network exactly.
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

// A loop-free src->dst path. links[i] joins nodes[i] and nodes[i+1].
struct Route {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;
  double total_delay_ms = 0.0;

  int hop_count() const { return static_cast<int>(links.size()); }
  friend bool operator==(const Route&, const Route&) = default;
};

// Canonical route order: (hop count, total delay, node sequence).
bool route_order_less(const Route& x, const Route& y);

// Up to k simple paths from src to dst with at most max_hops links, sorted by
// route_order_less; the result is a prefix of the full sorted enumeration.
std::vector<Route> k_simple_paths(const Network& net, NodeId src, NodeId dst, int max_hops, int k);

}  // namespace sagin

#endif  // SAGIN_NETWORK_HPP
