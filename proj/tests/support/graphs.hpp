#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "egcount/graph.hpp"

namespace testing {

using egcount::NodeId;
using egcount::Pdag;

/// Builds a Pdag from a compact edge list: "0>1" directed, "1-2" undirected.
inline Pdag make(int n, std::initializer_list<const char*> edges) {
  Pdag g(n);
  for (const std::string e : edges) {
    const NodeId a = e[0] - '0';
    const NodeId b = e[2] - '0';
    if (e[1] == '>') g.set_directed(a, b);
    else g.set_undirected(a, b);
  }
  return g;
}

/// Pdag whose pair (i<j) codes are the base-4 digits of `code`.
inline Pdag from_code(int n, std::uint64_t code) {
  Pdag g(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      switch (code % 4) {
        case 1: g.set_directed(i, j); break;
        case 2: g.set_directed(j, i); break;
        case 3: g.set_undirected(i, j); break;
        default: break;
      }
      code /= 4;
    }
  }
  return g;
}

inline Pdag random_pdag(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mark(0, 3);
  Pdag g(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) {
      switch (mark(rng)) {
        case 1: g.set_directed(i, j); break;
        case 2: g.set_directed(j, i); break;
        case 3: g.set_undirected(i, j); break;
        default: break;
      }
    }
  return g;
}

/// Relabels node v as perm[v].
inline Pdag relabel(const Pdag& g, const std::vector<NodeId>& perm) {
  Pdag out(g.size());
  for (NodeId u = 0; u < g.size(); ++u)
    for (NodeId v = u + 1; v < g.size(); ++v) {
      switch (g.mark(u, v)) {
        case egcount::EdgeMark::Out: out.set_directed(perm[u], perm[v]); break;
        case egcount::EdgeMark::In: out.set_directed(perm[v], perm[u]); break;
        case egcount::EdgeMark::Undirected: out.set_undirected(perm[u], perm[v]); break;
        default: break;
      }
    }
  return out;
}

/// Pdag from a brute-force mark matrix (1 = i->j, 2 = undirected).
template <typename Matrix>
Pdag from_marks(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Pdag g(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j) {
      if (m[i][j] == 1) g.set_directed(i, j);
      if (m[i][j] == 2 && i < j) g.set_undirected(i, j);
    }
  return g;
}

inline std::uint64_t pow4(int e) { return std::uint64_t{1} << (2 * e); }

}  // namespace testing
