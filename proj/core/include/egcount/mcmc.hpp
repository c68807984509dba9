#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egcount/graph.hpp"

namespace egcount {

/// The seven graph modifications of the proposal kernel.
enum class MoveKind : std::uint8_t {
  NoOp,
  AddUndirected,     // {u,v} absent      -> u - v
  DeleteUndirected,  // u - v             -> absent
  AddDirected,       // {u,v} absent      -> u -> v
  DeleteDirected,    // u -> v            -> absent
  MakeVStructure,    // u - v - w         -> u -> v <- w   (u, w non-adjacent)
  RemoveVStructure,  // u -> v <- w       -> u - v - w     (u, w non-adjacent)
};

inline constexpr std::array<MoveKind, 7> kAllMoveKinds = {
    MoveKind::NoOp,           MoveKind::AddUndirected,  MoveKind::DeleteUndirected, MoveKind::AddDirected,
    MoveKind::DeleteDirected, MoveKind::MakeVStructure, MoveKind::RemoveVStructure,
};

const char* to_string(MoveKind kind);

/// One kernel draw: an ordered pair (u, v), u != v, a third node w distinct
/// from both (or -1 when n == 2), and a modification. Only the v-structure
/// moves read w; v is the collider.
struct Move {
  NodeId u;
  NodeId v;
  NodeId w;
  MoveKind kind;
};

/// Per-chain generator. Fixed engine so sampled streams are reproducible.
using ChainRng = std::mt19937_64;

/// Applies `move` to g in place. Returns false (g untouched) when the move
/// is inapplicable to the current mark of {u, v} or is a NoOp.
bool apply_move(Pdag& g, const Move& move);

/// Draws the ordered pair uniformly among n(n-1), w uniformly among the
/// remaining n-2 nodes, and the kind uniformly among seven. Pre: n >= 2.
Move draw_move(int n, ChainRng& rng);

/// Candidate graph for one kernel draw; g itself when inapplicable.
Pdag propose(const Pdag& g, const Move& move);
Pdag propose(const Pdag& g, ChainRng& rng);

/// One Metropolis transition for the uniform target: move to the candidate
/// iff it is an essential graph. Returns true when the state changed.
/// Pre: g is an EG.
bool step_in_place(Pdag& g, ChainRng& rng);
Pdag step(const Pdag& g, ChainRng& rng);

struct ChainConfig {
  int n = 2;
  std::uint64_t steps = 1;
  std::uint64_t chains = 1;
  std::uint64_t seed = 0;
  bool record_graphs = false;
  unsigned threads = 1;

  /// Throws std::invalid_argument unless steps >= 1, chains >= 1, 1 <= n <= 40.
  void validate() const;
};

/// Terminal observation of one chain.
struct SampleRecord {
  int n = 0;
  std::uint64_t chain_index = 0;
  std::uint64_t steps = 0;
  bool is_edag = false;
  bool is_connected = false;
  double changed_fraction = 0.0;
  std::uint64_t chain_seed = 0;
  std::optional<CanonicalKey> canonical_key;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of chain `chain_index`:
///   splitmix64(master ^ splitmix64(chain_index + 0x9e3779b97f4a7c15)).
std::uint64_t derive_chain_seed(std::uint64_t master_seed, std::uint64_t chain_index);

/// Runs one chain from the empty graph for cfg.steps transitions.
SampleRecord run_chain(const ChainConfig& cfg, std::uint64_t chain_index);

/// Runs cfg.chains independent chains on cfg.threads workers. The result is
/// ordered by chain_index and does not depend on the thread count.
std::vector<SampleRecord> run_ensemble(const ChainConfig& cfg);

/// Long single chain from the empty graph: discards `burn_in` transitions,
/// then tallies the state after every `thin`-th transition until `steps`
/// total transitions have run. Used for the uniformity test only.
std::map<CanonicalKey, std::uint64_t> run_thinned_chain(int n, std::uint64_t steps, std::uint64_t seed,
                                                        std::uint64_t burn_in, std::uint64_t thin);

/// EGs reachable from the empty graph through accepted one-step
/// transitions over all draws. Throws CapExceeded for n > 4.
std::set<CanonicalKey> kernel_support_bfs(int n);

/// Draw-count symmetry over a set of states: for every ordered pair of
/// distinct states (x, y), the number of (pair, kind) draws sending x to y
/// must equal the number sending y to x.
struct SymmetryReport {
  std::size_t states = 0;
  std::size_t transitions_checked = 0;  // distinct ordered (x, y) with a nonzero count
  std::size_t asymmetric = 0;
  double min_self_loop_probability = 1.0;

  bool ok() const { return asymmetric == 0; }
};

SymmetryReport check_kernel_symmetry(const std::vector<Pdag>& states);

/// JSON Lines persistence. canonical_key is base64 in the file.
void to_json(nlohmann::json& j, const SampleRecord& r);
void from_json(const nlohmann::json& j, SampleRecord& r);
void write_jsonl(std::ostream& out, const std::vector<SampleRecord>& records);
/// Throws FormatError with the offending line number.
std::vector<SampleRecord> read_jsonl(std::istream& in);

std::string base64_encode(const std::string& bytes);
/// Throws FormatError on invalid input.
std::string base64_decode(const std::string& text);

}  // namespace egcount
