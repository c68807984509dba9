#pragma once

// Test-only ground truth built on plain adjacency matrices. Shares no code
// with the library: digraphs are enumerated over all 2^(n(n-1)) arc sets,
// acyclicity is a DFS, equivalence classes are grouped by (skeleton,
// v-structures).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace brute {

using Matrix = std::vector<std::vector<int>>;  // m[i][j] == 1 means i -> j

struct Digraph {
  int n;
  Matrix arc;
};

inline bool has_cycle_from(const Matrix& m, int v, std::vector<int>& color) {
  color[v] = 1;
  for (int w = 0; w < static_cast<int>(m.size()); ++w) {
    if (!m[v][w]) continue;
    if (color[w] == 1) return true;
    if (color[w] == 0 && has_cycle_from(m, w, color)) return true;
  }
  color[v] = 2;
  return false;
}

inline bool acyclic(const Matrix& m) {
  std::vector<int> color(m.size(), 0);
  for (int v = 0; v < static_cast<int>(m.size()); ++v) {
    if (color[v] == 0 && has_cycle_from(m, v, color)) return false;
  }
  return true;
}

inline bool weakly_connected(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j]) parent[find(i)] = find(j);
  for (int i = 1; i < n; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

/// Every DAG on n nodes, by filtering all arc subsets.
inline std::vector<Matrix> all_dags(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) arcs.emplace_back(i, j);
  std::vector<Matrix> out;
  const std::uint64_t total = std::uint64_t{1} << arcs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Matrix m(n, std::vector<int>(n, 0));
    bool two_cycle = false;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (!(mask >> a & 1)) continue;
      const auto [i, j] = arcs[a];
      if (m[j][i]) two_cycle = true;
      m[i][j] = 1;
    }
    if (!two_cycle && acyclic(m)) out.push_back(std::move(m));
  }
  return out;
}

using Skeleton = std::set<std::pair<int, int>>;
using VStructs = std::set<std::tuple<int, int, int>>;

inline Skeleton skeleton_of(const Matrix& m) {
  Skeleton s;
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j]) s.insert({std::min(i, j), std::max(i, j)});
  return s;
}

inline VStructs vstructs_of(const Matrix& m) {
  VStructs v;
  const int n = static_cast<int>(m.size());
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (a != c && b != c && m[a][c] && m[b][c] && !m[a][b] && !m[b][a]) v.insert({a, c, b});
  return v;
}

using ClassKey = std::pair<Skeleton, VStructs>;

inline ClassKey class_key(const Matrix& m) { return {skeleton_of(m), vstructs_of(m)}; }

/// Equivalence classes with their member DAGs.
inline std::map<ClassKey, std::vector<Matrix>> classes(int n) {
  std::map<ClassKey, std::vector<Matrix>> out;
  for (auto& d : all_dags(n)) out[class_key(d)].push_back(d);
  return out;
}

/// Essential graph of a class as a mark matrix: 1 = i->j compelled,
/// 2 = undirected (orientation differs among members).
inline Matrix essential_marks(const std::vector<Matrix>& members) {
  const int n = static_cast<int>(members.front().size());
  Matrix marks(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool any_ij = false, any_ji = false;
      for (const auto& d : members) {
        any_ij = any_ij || d[i][j];
        any_ji = any_ji || d[j][i];
      }
      if (any_ij && any_ji) marks[i][j] = 2;
      else if (any_ij) marks[i][j] = 1;
    }
  }
  return marks;
}

struct Census {
  std::uint64_t dags = 0, cdags = 0, egs = 0, cegs = 0, edags = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
};

inline Census census(int n) {
  Census c;
  for (const auto& [key, members] : classes(n)) {
    ++c.egs;
    c.dags += members.size();
    ++c.histogram[members.size()];
    const bool connected = weakly_connected(members.front());
    if (connected) ++c.cegs;
    if (members.size() == 1) ++c.edags;
    for (const auto& d : members)
      if (weakly_connected(d)) ++c.cdags;
  }
  return c;
}

}  // namespace brute
