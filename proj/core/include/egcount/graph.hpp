#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace egcount {

inline constexpr int kMaxNodes = 64;

/// Node index in [0, n).
using NodeId = int;

/// Bitset over node ids; bit v set means node v is a member.
using NodeSet = std::uint64_t;

constexpr NodeSet node_bit(NodeId v) { return NodeSet{1} << v; }

constexpr NodeSet all_nodes(int n) {
  return n >= 64 ? ~NodeSet{0} : (NodeSet{1} << n) - 1;
}

/// Calls fn(v) for every member of s in increasing order.
template <typename Fn>
void for_each_node(NodeSet s, Fn&& fn) {
  while (s != 0) {
    const NodeId v = std::countr_zero(s);
    s &= s - 1;
    fn(v);
  }
}

/// Mark of the pair {u, v} as seen from the ordered query (u, v).
enum class EdgeMark : std::uint8_t {
  Absent,
  Out,  // u -> v
  In,   // v -> u
  Undirected,
};

/// Labeled partially directed graph on n nodes (1 <= n <= 64).
///
/// Each unordered pair carries exactly one mark. Adjacency is kept as three
/// per-node bit rows (children, parents, undirected neighbours) so every mark
/// lookup and neighbourhood query is O(1).
class Pdag {
 public:
  /// Throws std::invalid_argument unless 1 <= n <= kMaxNodes.
  explicit Pdag(int n);

  int size() const { return n_; }

  EdgeMark mark(NodeId u, NodeId v) const;

  bool adjacent(NodeId u, NodeId v) const { return (adjacency(u) & node_bit(v)) != 0; }
  bool has_directed(NodeId tail, NodeId head) const { return (children_[tail] & node_bit(head)) != 0; }
  bool has_undirected(NodeId u, NodeId v) const { return (undirected_[u] & node_bit(v)) != 0; }

  NodeSet children(NodeId v) const { return children_[v]; }
  NodeSet parents(NodeId v) const { return parents_[v]; }
  NodeSet undirected_neighbors(NodeId v) const { return undirected_[v]; }
  NodeSet adjacency(NodeId v) const { return children_[v] | parents_[v] | undirected_[v]; }

  void set_absent(NodeId u, NodeId v);
  void set_directed(NodeId tail, NodeId head);
  void set_undirected(NodeId u, NodeId v);

  int num_edges() const;
  int num_undirected() const;
  bool has_undirected_edges() const;

  friend bool operator==(const Pdag& a, const Pdag& b);

 private:
  void check_pair(NodeId u, NodeId v) const;

  int n_;
  std::array<NodeSet, kMaxNodes> children_{};
  std::array<NodeSet, kMaxNodes> parents_{};
  std::array<NodeSet, kMaxNodes> undirected_{};
};

/// Fully directed acyclic Pdag. Only constructible through validation.
class Dag {
 public:
  /// Throws std::invalid_argument if g has an undirected mark and
  /// CycleDetected if the directed relation is cyclic.
  static Dag from_pdag(Pdag g);

  /// The empty DAG on n nodes.
  explicit Dag(int n) : graph_(n) {}

  const Pdag& graph() const { return graph_; }
  int size() const { return graph_.size(); }

  friend bool operator==(const Dag& a, const Dag& b) { return a.graph_ == b.graph_; }

 private:
  explicit Dag(Pdag g) : graph_(std::move(g)) {}

  Pdag graph_;
};

/// Pairs {u, v} with u < v whose mark is not Absent, lexicographically sorted.
std::vector<std::pair<NodeId, NodeId>> skeleton(const Pdag& g);

/// Weak connectivity of the skeleton.
bool is_connected(const Pdag& g);

/// Topological order of the directed edges of g, smallest available source
/// first. Throws CycleDetected on a directed cycle and std::invalid_argument
/// if g has undirected marks.
std::vector<NodeId> topological_order(const Pdag& g);
std::vector<NodeId> topological_order(const Dag& d);

/// Byte string key: one byte holding n, then a 2-bit code per pair (i, j),
/// i < j, in lexicographic pair order, packed MSB first and zero-padded.
/// Codes: 00 absent, 01 i->j, 10 j->i, 11 undirected.
using CanonicalKey = std::string;

CanonicalKey canonical_key(const Pdag& g);

/// Inverse of canonical_key. Throws FormatError on malformed input.
Pdag decode_canonical_key(const CanonicalKey& key);

/// Number of unordered pairs on n nodes.
constexpr int pair_count(int n) { return n * (n - 1) / 2; }

}  // namespace egcount
