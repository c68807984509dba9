#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "egcount/graph.hpp"

namespace egcount {

/// Collider a -> c <- b with a, b non-adjacent; normalized so a < b.
struct VStructure {
  NodeId a;
  NodeId c;
  NodeId b;

  friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

/// All v-structures of d, sorted.
std::vector<VStructure> v_structures(const Dag& d);

/// Orients undirected edges of g with Meek rules R1-R4 until no rule fires.
void meek_closure(Pdag& g);

/// Essential graph (CPDAG) of d's Markov equivalence class.
Pdag cpdag_of_dag(const Dag& d);

/// Dor-Tarsi extension: same skeleton, keeps every directed mark of g, adds
/// no v-structure. Peels the largest eligible sink first, so among valid
/// extensions the result orients ties from lower to higher id.
/// Returns nullopt when g admits no consistent extension.
std::optional<Dag> consistent_extension(const Pdag& g);

/// True iff g has a consistent extension d and cpdag_of_dag(d) == g.
bool is_essential_graph(const Pdag& g);

/// EG with no undirected mark. Caller guarantees g is an EG.
inline bool is_edag(const Pdag& g) { return !g.has_undirected_edges(); }

/// Number of DAGs Markov equivalent to d. Enumerates orientations of the
/// CPDAG's undirected edges; throws CapExceeded past 24 undirected edges.
std::uint64_t class_size(const Dag& d);

}  // namespace egcount
