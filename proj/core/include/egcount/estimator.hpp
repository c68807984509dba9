#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "egcount/exact_counts.hpp"
#include "egcount/mcmc.hpp"

namespace egcount {

/// How R' counts EDAGs. Literal: every sampled EDAG over sampled CEGs.
/// ConnectedOnly: sampled connected EDAGs over sampled CEGs (sensitivity
/// analysis only).
enum class RPrimeMode { Literal, ConnectedOnly };

/// Counts observed in a sample.
struct SampleTally {
  int n = 0;
  std::uint64_t size = 0;
  std::uint64_t edags = 0;
  std::uint64_t connected = 0;
  std::uint64_t connected_edags = 0;
  double changed_fraction_sum = 0.0;

  /// Throws std::invalid_argument when records disagree on n.
  static SampleTally of(std::span<const SampleRecord> records);
};

struct EstimateReport {
  int n = 0;
  std::uint64_t sample_size = 0;
  std::uint64_t sample_edags = 0;
  std::uint64_t sample_connected = 0;
  std::uint64_t sample_connected_edags = 0;
  RPrimeMode r_prime_mode = RPrimeMode::Literal;

  double r = 0.0;        // EDAG fraction of the sample
  double r_prime = 0.0;  // sampled EDAGs / sampled CEGs
  double est_eg_dag = 0.0;
  double est_ceg_cdag = 0.0;
  double est_ceg_eg = 0.0;
  double est_edag_eg = 0.0;  // same as r; Table-1 column form
  double mean_changed_fraction = 0.0;

  // The same estimates as exact rationals of the sample counts.
  ExactRatio r_exact{0, 1};
  ExactRatio r_prime_exact{0, 1};
  ExactRatio est_eg_dag_exact{0, 1};
  ExactRatio est_ceg_cdag_exact{0, 1};
  ExactRatio est_ceg_eg_exact{0, 1};

  ExactRatio exact_cdag_dag{0, 1};

  double est_n_egs = 0.0;
  double est_n_cegs = 0.0;

  double se_r = 0.0;
  double se_eg_dag = 0.0;
  double se_ceg_eg = 0.0;
  bool low_count_warning = false;

  // Inputs carried for approx_counts / standard_errors.
  BigCount edags = 0;
  BigCount dags = 1;
  BigCount cdags = 1;
};

/// Ratio estimates from a sample. Throws DegenerateSample when the sample
/// has no EDAG or no connected record, std::invalid_argument when records
/// are empty or disagree on n. Also fills approximate counts and standard
/// errors.
EstimateReport estimate(std::span<const SampleRecord> records, const BigCount& edags, const BigCount& dags,
                        const BigCount& cdags, RPrimeMode mode = RPrimeMode::Literal);

/// (est #EGs, est #CEGs) = (est_eg_dag * dags, est_ceg_eg * est #EGs).
std::pair<double, double> approx_counts(const EstimateReport& report, const BigCount& dags);

/// Binomial and first-order delta-method standard errors. A sample of size
/// one yields zeros. Sets low_count_warning when a numerator count is < 30.
EstimateReport standard_errors(EstimateReport report);

void to_json(nlohmann::json& j, const EstimateReport& r);

}  // namespace egcount
