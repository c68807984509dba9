#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "egcount/graph.hpp"

namespace egcount {

/// Published 5-decimal exact ratios used as regression targets.
namespace reference {

/// #EGs/#DAGs and #EDAGs/#EGs for n = 2..10.
struct EgRow {
  int n;
  const char* eg_dag;
  const char* edag_eg;
};

inline constexpr std::array<EgRow, 9> kExactEgRatios = {{
    {2, "0.66667", "0.50000"},
    {3, "0.44000", "0.36364"},
    {4, "0.34070", "0.31892"},
    {5, "0.29992", "0.29788"},
    {6, "0.28238", "0.28667"},
    {7, "0.27443", "0.28068"},
    {8, "0.27068", "0.27754"},
    {9, "0.26888", "0.27590"},
    {10, "0.26799", "0.27507"},
}};

/// #CDAGs/#DAGs for n = 2..31.
inline constexpr std::array<const char*, 30> kCdagDagRatios = {
    "0.66667", "0.72000", "0.82136", "0.90263", "0.95115", "0.97605", "0.98821", "0.99415",
    "0.99708", "0.99854", "0.99927", "0.99964", "0.99982", "0.99991", "0.99995", "0.99998",
    "0.99999", "0.99999", "1.00000", "1.00000", "1.00000", "1.00000", "1.00000", "1.00000",
    "1.00000", "1.00000", "1.00000", "1.00000", "1.00000", "1.00000",
};

}  // namespace reference

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  void add(std::string name, bool passed, std::string detail = {});
};

/// Census vs recursions, census invariants, and published exact ratios.
/// Pre: 1 <= n <= 5.
SuiteResult verify_oracle(int n);

/// Finite-n Wright conditions and the CDAG/DAG ratio's approach to 1.
/// Pre: 2 <= max_n <= 40.
SuiteResult verify_wright(int max_n);

/// Kernel support equals the EG set and the draw counts are symmetric.
/// Pre: 1 <= n <= 4.
SuiteResult verify_kernel(int n);

struct UniformityStats {
  std::uint64_t draws = 0;
  std::size_t states = 0;
  double total_variation = 0.0;
  double chi_square = 0.0;
  double p_value = 0.0;
  bool all_states_valid = true;
};

/// Compares a tally over canonical keys with the uniform law on `support`.
/// States outside the support make all_states_valid false.
UniformityStats uniformity_stats(const std::map<CanonicalKey, std::uint64_t>& tally,
                                 const std::vector<CanonicalKey>& support);

struct UniformityConfig {
  int n = 3;
  std::uint64_t steps = 2'000'000;
  std::uint64_t burn_in = 10'000;
  std::uint64_t thin = 200;
  std::uint64_t seed = 20130;
  double max_total_variation = 0.02;
  double min_p_value = 0.001;
};

/// Pre: 1 <= cfg.n <= 5.
SuiteResult verify_uniformity(const UniformityConfig& cfg);

}  // namespace egcount
