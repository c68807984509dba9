#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "egcount/graph.hpp"

namespace egcount {

/// Hard cap for brute-force enumeration.
inline constexpr int kOracleMaxNodes = 5;

/// Exact census of every quantity the sampler estimates.
struct OracleCensus {
  int n = 0;
  std::uint64_t n_dags = 0;
  std::uint64_t n_cdags = 0;
  std::uint64_t n_egs = 0;
  std::uint64_t n_cegs = 0;
  std::uint64_t n_edags = 0;
  std::map<std::uint64_t, std::uint64_t> class_size_histogram;  // size -> number of classes

  friend bool operator==(const OracleCensus&, const OracleCensus&) = default;
};

/// Visits every labeled DAG on n nodes once. Pair codes (absent, i->j, j->i)
/// are enumerated in base 3 and cyclic combinations skipped.
/// Throws CapExceeded for n > kOracleMaxNodes.
void for_each_dag(int n, const std::function<void(const Dag&)>& visit);

std::vector<Dag> enumerate_dags(int n);

/// Census computed over `threads` partitions of the pair-(0,1) code. Results
/// are memoized per n for the default call.
OracleCensus census(int n);
OracleCensus compute_census(int n, unsigned threads);

/// Every distinct EG on n nodes, sorted by canonical key.
std::vector<Pdag> enumerate_egs(int n);

void to_json(nlohmann::json& j, const OracleCensus& c);

}  // namespace egcount
