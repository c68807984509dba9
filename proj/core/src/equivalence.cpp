#include "egcount/equivalence.hpp"

#include <algorithm>
#include <bit>

#include "egcount/errors.hpp"

namespace egcount {

std::vector<VStructure> v_structures(const Dag& d) {
  const Pdag& g = d.graph();
  std::vector<VStructure> out;
  for (NodeId c = 0; c < g.size(); ++c) {
    const NodeSet parents = g.parents(c);
    for_each_node(parents, [&](NodeId a) {
      // Parents b > a not adjacent to a.
      const NodeSet partners = parents & ~g.adjacency(a) & ~all_nodes(a + 1);
      for_each_node(partners, [&](NodeId b) { out.push_back({a, c, b}); });
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// R1: a -> b - c, a and c non-adjacent  =>  b -> c.
bool rule1(const Pdag& g, NodeId b, NodeId c) {
  return (g.parents(b) & ~g.adjacency(c) & ~node_bit(c)) != 0;
}

// R2: a -> k -> b with a - b  =>  a -> b.
bool rule2(const Pdag& g, NodeId a, NodeId b) {
  return (g.children(a) & g.parents(b)) != 0;
}

// R3: a - c -> b, a - d -> b, c and d non-adjacent, a - b  =>  a -> b.
bool rule3(const Pdag& g, NodeId a, NodeId b) {
  NodeSet candidates = g.undirected_neighbors(a) & g.parents(b);
  if (std::popcount(candidates) < 2) return false;
  while (candidates != 0) {
    const NodeId c = std::countr_zero(candidates);
    candidates &= candidates - 1;
    if ((candidates & ~g.adjacency(c)) != 0) return true;
  }
  return false;
}

// R4: a - d -> c -> b, a adjacent to c, d and b non-adjacent, a - b  =>  a -> b.
bool rule4(const Pdag& g, NodeId a, NodeId b) {
  const NodeSet cs = g.parents(b) & g.adjacency(a);
  bool fires = false;
  for_each_node(cs, [&](NodeId c) {
    if (fires) return;
    const NodeSet ds = g.undirected_neighbors(a) & g.parents(c) & ~g.adjacency(b) & ~node_bit(b);
    if (ds != 0) fires = true;
  });
  return fires;
}

}  // namespace

void meek_closure(Pdag& g) {
  const int n = g.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId u = 0; u < n; ++u) {
      NodeSet und = g.undirected_neighbors(u);
      for_each_node(und, [&](NodeId v) {
        // Every rule is checked in both directions of the undirected pair.
        if (!g.has_undirected(u, v)) return;
        if (rule1(g, u, v) || rule2(g, u, v) || rule3(g, u, v) || rule4(g, u, v)) {
          g.set_directed(u, v);
          changed = true;
        }
      });
    }
  }
}

Pdag cpdag_of_dag(const Dag& d) {
  const Pdag& dag = d.graph();
  const int n = dag.size();
  Pdag out(n);
  for (NodeId c = 0; c < n; ++c) {
    const NodeSet parents = dag.parents(c);
    for_each_node(parents, [&](NodeId a) {
      const bool in_collider = (parents & ~dag.adjacency(a) & ~node_bit(a)) != 0;
      if (in_collider) {
        out.set_directed(a, c);
      } else {
        out.set_undirected(a, c);
      }
    });
  }
  meek_closure(out);
  return out;
}

std::optional<Dag> consistent_extension(const Pdag& g) {
  const int n = g.size();
  Pdag result(n);
  for (NodeId u = 0; u < n; ++u) {
    for_each_node(g.children(u), [&](NodeId v) { result.set_directed(u, v); });
  }

  NodeSet remaining = all_nodes(n);
  while (remaining != 0) {
    NodeId chosen = -1;
    for (NodeId x = n - 1; x >= 0; --x) {
      if (!(remaining & node_bit(x))) continue;
      if (g.children(x) & remaining) continue;
      const NodeSet adj = g.adjacency(x) & remaining;
      const NodeSet und = g.undirected_neighbors(x) & remaining;
      bool ok = true;
      for_each_node(und, [&](NodeId y) {
        const NodeSet others = adj & ~node_bit(y);
        if ((others & ~g.adjacency(y)) != 0) ok = false;
      });
      if (ok) {
        chosen = x;
        break;
      }
    }
    if (chosen < 0) return std::nullopt;
    for_each_node(g.undirected_neighbors(chosen) & remaining,
                  [&](NodeId y) { result.set_directed(y, chosen); });
    remaining &= ~node_bit(chosen);
  }
  return Dag::from_pdag(std::move(result));
}

bool is_essential_graph(const Pdag& g) {
  const auto extension = consistent_extension(g);
  return extension && cpdag_of_dag(*extension) == g;
}

std::uint64_t class_size(const Dag& d) {
  const Pdag eg = cpdag_of_dag(d);
  const auto edges = skeleton(eg);
  std::vector<std::pair<NodeId, NodeId>> free;
  for (const auto& [u, v] : edges) {
    if (eg.has_undirected(u, v)) free.emplace_back(u, v);
  }
  if (free.size() > 24) throw CapExceeded("class_size: too many undirected edges to enumerate");

  const auto reference = v_structures(d);
  std::uint64_t members = 0;
  const std::uint64_t combos = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    Pdag candidate = eg;
    for (std::size_t i = 0; i < free.size(); ++i) {
      const auto [u, v] = free[i];
      if (mask & (std::uint64_t{1} << i)) {
        candidate.set_directed(v, u);
      } else {
        candidate.set_directed(u, v);
      }
    }
    try {
      const Dag member = Dag::from_pdag(std::move(candidate));
      if (v_structures(member) == reference) ++members;
    } catch (const CycleDetected&) {
    }
  }
  return members;
}

}  // namespace egcount
