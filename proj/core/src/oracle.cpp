#include "egcount/oracle.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "egcount/equivalence.hpp"
#include "egcount/errors.hpp"

namespace egcount {

namespace {

void check_cap(int n) {
  if (n < 1) throw std::invalid_argument("oracle needs n >= 1");
  if (n > kOracleMaxNodes) {
    throw CapExceeded("oracle enumeration is capped at n=" + std::to_string(kOracleMaxNodes) + ", got n=" +
                      std::to_string(n));
  }
}

bool acyclic(const Pdag& g) {
  const int n = g.size();
  NodeSet placed = 0;
  for (int round = 0; round < n; ++round) {
    NodeSet sources = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (!(placed & node_bit(v)) && (g.parents(v) & ~placed) == 0) sources |= node_bit(v);
    }
    if (sources == 0) return false;
    placed |= sources;
    if (placed == all_nodes(n)) return true;
  }
  return placed == all_nodes(n);
}

// Enumerates DAGs whose pair-(0,1) code lies in `first_codes`.
void for_each_dag_partition(int n, std::array<bool, 3> first_codes, const std::function<void(const Dag&)>& visit) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  if (pairs.empty()) {
    visit(Dag(n));
    return;
  }
  std::vector<int> code(pairs.size(), 0);
  for (;;) {
    if (first_codes[code[0]]) {
      Pdag g(n);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        if (code[p] == 1) g.set_directed(i, j);
        if (code[p] == 2) g.set_directed(j, i);
      }
      if (acyclic(g)) visit(Dag::from_pdag(std::move(g)));
    }
    std::size_t p = 0;
    while (p < code.size() && code[p] == 2) code[p++] = 0;
    if (p == code.size()) break;
    ++code[p];
  }
}

struct ClassTally {
  std::uint64_t size = 0;
  bool connected = false;
  bool fully_directed = false;
};

using Tallies = std::unordered_map<CanonicalKey, ClassTally>;

struct PartialCensus {
  std::uint64_t dags = 0;
  std::uint64_t cdags = 0;
  Tallies classes;
};

PartialCensus tally_partition(int n, std::array<bool, 3> first_codes) {
  PartialCensus part;
  for_each_dag_partition(n, first_codes, [&](const Dag& d) {
    ++part.dags;
    const bool connected = is_connected(d.graph());
    if (connected) ++part.cdags;
    const Pdag eg = cpdag_of_dag(d);
    auto& tally = part.classes[canonical_key(eg)];
    ++tally.size;
    tally.connected = connected;
    tally.fully_directed = is_edag(eg);
  });
  return part;
}

}  // namespace

void for_each_dag(int n, const std::function<void(const Dag&)>& visit) {
  check_cap(n);
  for_each_dag_partition(n, {true, true, true}, visit);
}

std::vector<Dag> enumerate_dags(int n) {
  std::vector<Dag> out;
  for_each_dag(n, [&](const Dag& d) { out.push_back(d); });
  return out;
}

OracleCensus compute_census(int n, unsigned threads) {
  check_cap(n);
  std::vector<PartialCensus> parts;
  if (n == 1 || threads <= 1) {
    parts.push_back(tally_partition(n, {true, true, true}));
  } else {
    parts.resize(3);
    std::vector<std::thread> workers;
    const unsigned used = std::min(threads, 3u);
    for (unsigned w = 0; w < used; ++w) {
      workers.emplace_back([&, w] {
        for (unsigned code = w; code < 3; code += used) {
          std::array<bool, 3> select{false, false, false};
          select[code] = true;
          parts[code] = tally_partition(n, select);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  // A class spans partitions (its members differ on pair (0,1)), so merge by key.
  PartialCensus merged;
  for (auto& part : parts) {
    merged.dags += part.dags;
    merged.cdags += part.cdags;
    for (auto& [key, tally] : part.classes) {
      auto& into = merged.classes[key];
      into.size += tally.size;
      into.connected = tally.connected;
      into.fully_directed = tally.fully_directed;
    }
  }

  OracleCensus c;
  c.n = n;
  c.n_dags = merged.dags;
  c.n_cdags = merged.cdags;
  c.n_egs = merged.classes.size();
  for (const auto& [key, tally] : merged.classes) {
    ++c.class_size_histogram[tally.size];
    if (tally.connected) ++c.n_cegs;
    if (tally.fully_directed) ++c.n_edags;
    if (tally.fully_directed != (tally.size == 1)) {
      throw InternalInconsistency("fully directed EG whose class size is not 1");
    }
  }
  return c;
}

OracleCensus census(int n) {
  check_cap(n);
  static std::mutex guard;
  static std::map<int, OracleCensus> memo;
  std::lock_guard lock(guard);
  auto it = memo.find(n);
  if (it == memo.end()) it = memo.emplace(n, compute_census(n, 1)).first;
  return it->second;
}

std::vector<Pdag> enumerate_egs(int n) {
  check_cap(n);
  std::map<CanonicalKey, Pdag> unique;
  for_each_dag(n, [&](const Dag& d) {
    Pdag eg = cpdag_of_dag(d);
    auto key = canonical_key(eg);
    unique.try_emplace(std::move(key), std::move(eg));
  });
  std::vector<Pdag> out;
  out.reserve(unique.size());
  for (auto& [key, eg] : unique) out.push_back(std::move(eg));
  return out;
}

void to_json(nlohmann::json& j, const OracleCensus& c) {
  auto histogram = nlohmann::json::array();
  for (const auto& [size, count] : c.class_size_histogram) histogram.push_back({size, count});
  j = nlohmann::json{{"n", c.n},           {"n_dags", c.n_dags}, {"n_cdags", c.n_cdags},
                     {"n_egs", c.n_egs},   {"n_cegs", c.n_cegs}, {"n_edags", c.n_edags},
                     {"class_size_histogram", histogram}};
}

}  // namespace egcount
