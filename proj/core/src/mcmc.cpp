#include "egcount/mcmc.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <boost/beast/core/detail/base64.hpp>
#include <nlohmann/json.hpp>

#include "egcount/equivalence.hpp"
#include "egcount/errors.hpp"

namespace egcount {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::NoOp: return "NoOp";
    case MoveKind::AddUndirected: return "AddUndirected";
    case MoveKind::DeleteUndirected: return "DeleteUndirected";
    case MoveKind::AddDirected: return "AddDirected";
    case MoveKind::DeleteDirected: return "DeleteDirected";
    case MoveKind::MakeVStructure: return "MakeVStructure";
    case MoveKind::RemoveVStructure: return "RemoveVStructure";
  }
  return "?";
}

bool apply_move(Pdag& g, const Move& move) {
  const auto [u, v, w, kind] = move;
  const EdgeMark mark = g.mark(u, v);
  switch (kind) {
    case MoveKind::NoOp:
      return false;
    case MoveKind::AddUndirected:
      if (mark != EdgeMark::Absent) return false;
      g.set_undirected(u, v);
      return true;
    case MoveKind::DeleteUndirected:
      if (mark != EdgeMark::Undirected) return false;
      g.set_absent(u, v);
      return true;
    case MoveKind::AddDirected:
      if (mark != EdgeMark::Absent) return false;
      g.set_directed(u, v);
      return true;
    case MoveKind::DeleteDirected:
      if (mark != EdgeMark::Out) return false;
      g.set_absent(u, v);
      return true;
    case MoveKind::MakeVStructure:
      if (w < 0 || mark != EdgeMark::Undirected || !g.has_undirected(w, v) || g.adjacent(u, w)) return false;
      g.set_directed(u, v);
      g.set_directed(w, v);
      return true;
    case MoveKind::RemoveVStructure:
      if (w < 0 || mark != EdgeMark::Out || !g.has_directed(w, v) || g.adjacent(u, w)) return false;
      g.set_undirected(u, v);
      g.set_undirected(w, v);
      return true;
  }
  return false;
}

Move draw_move(int n, ChainRng& rng) {
  if (n < 2) throw std::invalid_argument("draw_move needs n >= 2");
  const auto thirds = static_cast<std::uint64_t>(n > 2 ? n - 2 : 1);
  const auto ordered_pairs = static_cast<std::uint64_t>(n) * (n - 1);
  std::uniform_int_distribution<std::uint64_t> pick(0, 7 * ordered_pairs * thirds - 1);
  std::uint64_t draw = pick(rng);
  const auto kind = kAllMoveKinds[draw % 7];
  draw /= 7;
  const auto third = static_cast<NodeId>(draw % thirds);
  const std::uint64_t pair = draw / thirds;
  const auto u = static_cast<NodeId>(pair / (n - 1));
  auto v = static_cast<NodeId>(pair % (n - 1));
  if (v >= u) ++v;
  NodeId w = -1;
  if (n > 2) {
    // third-th node skipping u and v
    w = third;
    const NodeId lo = std::min(u, v);
    const NodeId hi = std::max(u, v);
    if (w >= lo) ++w;
    if (w >= hi) ++w;
  }
  return {u, v, w, kind};
}

Pdag propose(const Pdag& g, const Move& move) {
  Pdag candidate = g;
  apply_move(candidate, move);
  return candidate;
}

Pdag propose(const Pdag& g, ChainRng& rng) {
  if (g.size() < 2) return g;
  return propose(g, draw_move(g.size(), rng));
}

bool step_in_place(Pdag& g, ChainRng& rng) {
  if (g.size() < 2) return false;
  const Move move = draw_move(g.size(), rng);
  const Pdag before = g;
  if (!apply_move(g, move)) return false;
  if (is_essential_graph(g)) return true;
  g = before;
  return false;
}

Pdag step(const Pdag& g, ChainRng& rng) {
  Pdag next = g;
  step_in_place(next, rng);
  return next;
}

void ChainConfig::validate() const {
  if (n < 1 || n > 40) throw std::invalid_argument("chain node count must be in [1, 40]");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (chains < 1) throw std::invalid_argument("chains must be >= 1");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_chain_seed(std::uint64_t master_seed, std::uint64_t chain_index) {
  return splitmix64(master_seed ^ splitmix64(chain_index + 0x9e3779b97f4a7c15ULL));
}

SampleRecord run_chain(const ChainConfig& cfg, std::uint64_t chain_index) {
  cfg.validate();
  SampleRecord record;
  record.n = cfg.n;
  record.chain_index = chain_index;
  record.steps = cfg.steps;
  record.chain_seed = derive_chain_seed(cfg.seed, chain_index);

  ChainRng rng(record.chain_seed);
  Pdag state(cfg.n);
  std::uint64_t changed = 0;
  for (std::uint64_t t = 0; t < cfg.steps; ++t) {
    if (step_in_place(state, rng)) ++changed;
  }
#ifndef NDEBUG
  if (!is_essential_graph(state)) throw InternalInconsistency("chain left the space of essential graphs");
#endif
  record.is_edag = is_edag(state);
  record.is_connected = is_connected(state);
  record.changed_fraction = static_cast<double>(changed) / static_cast<double>(cfg.steps);
  if (cfg.record_graphs) record.canonical_key = canonical_key(state);
  return record;
}

std::vector<SampleRecord> run_ensemble(const ChainConfig& cfg) {
  cfg.validate();
  std::vector<SampleRecord> records(cfg.chains);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < cfg.chains; i = next++) records[i] = run_chain(cfg, i);
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, cfg.threads), cfg.chains));
  if (threads == 1) {
    worker();
    return records;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

std::map<CanonicalKey, std::uint64_t> run_thinned_chain(int n, std::uint64_t steps, std::uint64_t seed,
                                                        std::uint64_t burn_in, std::uint64_t thin) {
  if (thin == 0) throw std::invalid_argument("thin must be >= 1");
  ChainRng rng(seed);
  Pdag state(n);
  std::map<CanonicalKey, std::uint64_t> tally;
  for (std::uint64_t t = 1; t <= steps; ++t) {
    step_in_place(state, rng);
    if (t > burn_in && (t - burn_in) % thin == 0) ++tally[canonical_key(state)];
  }
  return tally;
}

namespace {

// Every equally likely draw of draw_move.
template <typename Fn>
void for_each_draw(int n, Fn&& fn) {
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      for (NodeId w = 0; w < n; ++w) {
        if (n > 2 && (w == u || w == v)) continue;
        if (n <= 2 && w > 0) break;
        for (MoveKind kind : kAllMoveKinds) fn(Move{u, v, n > 2 ? w : -1, kind});
      }
    }
  }
}

}  // namespace

std::set<CanonicalKey> kernel_support_bfs(int n) {
  if (n < 1) throw std::invalid_argument("kernel_support_bfs needs n >= 1");
  if (n > 4) throw CapExceeded("kernel_support_bfs is capped at n=4");
  std::set<CanonicalKey> seen;
  std::deque<Pdag> queue;
  const Pdag empty(n);
  seen.insert(canonical_key(empty));
  queue.push_back(empty);
  while (!queue.empty()) {
    const Pdag current = std::move(queue.front());
    queue.pop_front();
    for_each_draw(n, [&](const Move& move) {
      Pdag candidate = current;
      if (!apply_move(candidate, move) || !is_essential_graph(candidate)) return;
      if (seen.insert(canonical_key(candidate)).second) queue.push_back(std::move(candidate));
    });
  }
  return seen;
}

SymmetryReport check_kernel_symmetry(const std::vector<Pdag>& states) {
  SymmetryReport report;
  report.states = states.size();
  std::map<std::pair<CanonicalKey, CanonicalKey>, std::uint64_t> counts;
  for (const Pdag& x : states) {
    const int n = x.size();
    const auto from = canonical_key(x);
    std::uint64_t stays = 0;
    std::uint64_t draws = 0;
    for_each_draw(n, [&](const Move& move) {
      ++draws;
      Pdag candidate = x;
      if (apply_move(candidate, move) && is_essential_graph(candidate)) {
        ++counts[{from, canonical_key(candidate)}];
      } else {
        ++stays;
      }
    });
    if (draws > 0) {
      report.min_self_loop_probability =
          std::min(report.min_self_loop_probability, static_cast<double>(stays) / static_cast<double>(draws));
    }
  }
  report.transitions_checked = counts.size();
  for (const auto& [edge, count] : counts) {
    const auto reverse = counts.find({edge.second, edge.first});
    if (reverse == counts.end() || reverse->second != count) ++report.asymmetric;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string base64_encode(const std::string& bytes) {
  namespace b64 = boost::beast::detail::base64;
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::string base64_decode(const std::string& text) {
  namespace b64 = boost::beast::detail::base64;
  if (text.size() % 4 != 0) throw FormatError("base64 length must be a multiple of 4");
  const auto body = text.find_first_of('=');
  const auto valid = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' || c == '/';
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool padding_zone = body != std::string::npos && i >= body;
    if (padding_zone ? text[i] != '=' : !valid(text[i])) throw FormatError("invalid base64 character");
  }
  if (body != std::string::npos && text.size() - body > 2) throw FormatError("invalid base64 padding");
  std::string out(b64::decoded_size(text.size()), '\0');
  const auto [written, read] = b64::decode(out.data(), text.data(), text.size());
  out.resize(written);
  return out;
}

void to_json(nlohmann::json& j, const SampleRecord& r) {
  j = nlohmann::json{
      {"n", r.n},
      {"chain_index", r.chain_index},
      {"steps", r.steps},
      {"is_edag", r.is_edag},
      {"is_connected", r.is_connected},
      {"changed_fraction", r.changed_fraction},
      {"chain_seed", r.chain_seed},
  };
  if (r.canonical_key) {
    j["canonical_key"] = base64_encode(*r.canonical_key);
  } else {
    j["canonical_key"] = nullptr;
  }
}

void from_json(const nlohmann::json& j, SampleRecord& r) {
  j.at("n").get_to(r.n);
  j.at("chain_index").get_to(r.chain_index);
  j.at("steps").get_to(r.steps);
  j.at("is_edag").get_to(r.is_edag);
  j.at("is_connected").get_to(r.is_connected);
  j.at("changed_fraction").get_to(r.changed_fraction);
  j.at("chain_seed").get_to(r.chain_seed);
  r.canonical_key.reset();
  if (j.contains("canonical_key") && !j.at("canonical_key").is_null()) {
    r.canonical_key = base64_decode(j.at("canonical_key").get<std::string>());
  }
}

void write_jsonl(std::ostream& out, const std::vector<SampleRecord>& records) {
  // Field order follows SampleRecord.
  for (const auto& r : records) {
    nlohmann::ordered_json line;
    line["n"] = r.n;
    line["chain_index"] = r.chain_index;
    line["steps"] = r.steps;
    line["is_edag"] = r.is_edag;
    line["is_connected"] = r.is_connected;
    line["changed_fraction"] = r.changed_fraction;
    line["chain_seed"] = r.chain_seed;
    line["canonical_key"] = r.canonical_key ? nlohmann::ordered_json(base64_encode(*r.canonical_key)) : nlohmann::ordered_json(nullptr);
    out << line.dump() << '\n';
  }
}

std::vector<SampleRecord> read_jsonl(std::istream& in) {
  std::vector<SampleRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(nlohmann::json::parse(line).get<SampleRecord>());
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("bad sample record on line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace egcount
