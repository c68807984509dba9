#include "egcount/graph.hpp"

#include <stdexcept>
#include <string>

#include "egcount/errors.hpp"

namespace egcount {

Pdag::Pdag(int n) : n_(n) {
  if (n < 1 || n > kMaxNodes) {
    throw std::invalid_argument("node count must be in [1, 64], got " + std::to_string(n));
  }
}

void Pdag::check_pair(NodeId u, NodeId v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw std::out_of_range("node id out of range");
  }
  if (u == v) {
    throw std::invalid_argument("self-loops are not allowed");
  }
}

EdgeMark Pdag::mark(NodeId u, NodeId v) const {
  const NodeSet b = node_bit(v);
  if (children_[u] & b) return EdgeMark::Out;
  if (parents_[u] & b) return EdgeMark::In;
  if (undirected_[u] & b) return EdgeMark::Undirected;
  return EdgeMark::Absent;
}

void Pdag::set_absent(NodeId u, NodeId v) {
  check_pair(u, v);
  const NodeSet bu = ~node_bit(u);
  const NodeSet bv = ~node_bit(v);
  children_[u] &= bv;
  parents_[u] &= bv;
  undirected_[u] &= bv;
  children_[v] &= bu;
  parents_[v] &= bu;
  undirected_[v] &= bu;
}

void Pdag::set_directed(NodeId tail, NodeId head) {
  set_absent(tail, head);
  children_[tail] |= node_bit(head);
  parents_[head] |= node_bit(tail);
}

void Pdag::set_undirected(NodeId u, NodeId v) {
  set_absent(u, v);
  undirected_[u] |= node_bit(v);
  undirected_[v] |= node_bit(u);
}

int Pdag::num_edges() const {
  int total = 0;
  for (NodeId v = 0; v < n_; ++v) total += std::popcount(adjacency(v));
  return total / 2;
}

int Pdag::num_undirected() const {
  int total = 0;
  for (NodeId v = 0; v < n_; ++v) total += std::popcount(undirected_[v]);
  return total / 2;
}

bool Pdag::has_undirected_edges() const {
  for (NodeId v = 0; v < n_; ++v) {
    if (undirected_[v] != 0) return true;
  }
  return false;
}

bool operator==(const Pdag& a, const Pdag& b) {
  if (a.n_ != b.n_) return false;
  for (NodeId v = 0; v < a.n_; ++v) {
    if (a.children_[v] != b.children_[v] || a.undirected_[v] != b.undirected_[v]) return false;
  }
  return true;
}

Dag Dag::from_pdag(Pdag g) {
  if (g.has_undirected_edges()) {
    throw std::invalid_argument("a DAG cannot carry undirected marks");
  }
  topological_order(g);
  return Dag(std::move(g));
}

std::vector<std::pair<NodeId, NodeId>> skeleton(const Pdag& g) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < g.size(); ++u) {
    // Only neighbours above u, so each pair appears once.
    const NodeSet above = g.adjacency(u) & ~all_nodes(u + 1);
    for_each_node(above, [&](NodeId v) { pairs.emplace_back(u, v); });
  }
  return pairs;
}

bool is_connected(const Pdag& g) {
  const NodeSet everything = all_nodes(g.size());
  NodeSet reached = node_bit(0);
  NodeSet frontier = reached;
  while (frontier != 0) {
    NodeSet next = 0;
    for_each_node(frontier, [&](NodeId v) { next |= g.adjacency(v); });
    frontier = next & ~reached;
    reached |= next;
  }
  return reached == everything;
}

std::vector<NodeId> topological_order(const Pdag& g) {
  if (g.has_undirected_edges()) {
    throw std::invalid_argument("topological order needs a fully directed graph");
  }
  const int n = g.size();
  std::vector<NodeId> order;
  order.reserve(n);
  NodeSet placed = 0;
  while (static_cast<int>(order.size()) < n) {
    NodeId next = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (!(placed & node_bit(v)) && (g.parents(v) & ~placed) == 0) {
        next = v;
        break;
      }
    }
    if (next < 0) throw CycleDetected("directed cycle detected");
    order.push_back(next);
    placed |= node_bit(next);
  }
  return order;
}

std::vector<NodeId> topological_order(const Dag& d) { return topological_order(d.graph()); }

namespace {

unsigned pair_code(const Pdag& g, NodeId i, NodeId j) {
  switch (g.mark(i, j)) {
    case EdgeMark::Absent: return 0b00;
    case EdgeMark::Out: return 0b01;
    case EdgeMark::In: return 0b10;
    case EdgeMark::Undirected: return 0b11;
  }
  return 0;
}

}  // namespace

CanonicalKey canonical_key(const Pdag& g) {
  const int n = g.size();
  const int bits = 2 * pair_count(n);
  CanonicalKey key(1 + (bits + 7) / 8, '\0');
  key[0] = static_cast<char>(n);
  int pos = 0;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j, pos += 2) {
      const unsigned code = pair_code(g, i, j);
      auto& byte = reinterpret_cast<unsigned char&>(key[1 + pos / 8]);
      byte |= static_cast<unsigned char>(code << (6 - pos % 8));
    }
  }
  return key;
}

Pdag decode_canonical_key(const CanonicalKey& key) {
  if (key.empty()) throw FormatError("empty canonical key");
  const int n = static_cast<unsigned char>(key[0]);
  if (n < 1 || n > kMaxNodes) throw FormatError("canonical key has invalid node count");
  const int bits = 2 * pair_count(n);
  if (key.size() != static_cast<std::size_t>(1 + (bits + 7) / 8)) {
    throw FormatError("canonical key has wrong length for n=" + std::to_string(n));
  }
  Pdag g(n);
  int pos = 0;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j, pos += 2) {
      const auto byte = static_cast<unsigned char>(key[1 + pos / 8]);
      switch ((byte >> (6 - pos % 8)) & 0b11) {
        case 0b01: g.set_directed(i, j); break;
        case 0b10: g.set_directed(j, i); break;
        case 0b11: g.set_undirected(i, j); break;
        default: break;
      }
    }
  }
  if (bits % 8 != 0) {
    const auto last = static_cast<unsigned char>(key.back());
    if ((last & ((1u << (8 - bits % 8)) - 1)) != 0) throw FormatError("canonical key has nonzero padding");
  }
  return g;
}

}  // namespace egcount
