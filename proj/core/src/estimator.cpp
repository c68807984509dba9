#include "egcount/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "egcount/errors.hpp"

namespace egcount {

namespace {

constexpr std::uint64_t kLowCount = 30;

}  // namespace

SampleTally SampleTally::of(std::span<const SampleRecord> records) {
  SampleTally t;
  if (records.empty()) return t;
  t.n = records.front().n;
  for (const auto& r : records) {
    if (r.n != t.n) throw std::invalid_argument("sample mixes node counts");
    ++t.size;
    if (r.is_edag) ++t.edags;
    if (r.is_connected) ++t.connected;
    if (r.is_edag && r.is_connected) ++t.connected_edags;
    t.changed_fraction_sum += r.changed_fraction;
  }
  return t;
}

EstimateReport estimate(std::span<const SampleRecord> records, const BigCount& edags, const BigCount& dags,
                        const BigCount& cdags, RPrimeMode mode) {
  if (records.empty()) throw std::invalid_argument("cannot estimate from an empty sample");
  const SampleTally t = SampleTally::of(records);
  const std::uint64_t r_prime_numerator = mode == RPrimeMode::Literal ? t.edags : t.connected_edags;
  if (t.edags == 0) throw DegenerateSample("no EDAG in the sample; increase chains or steps");
  if (t.connected == 0) throw DegenerateSample("no connected EG in the sample; increase chains or steps");
  if (r_prime_numerator == 0) throw DegenerateSample("no connected EDAG in the sample; increase chains or steps");

  EstimateReport rep;
  rep.n = t.n;
  rep.sample_size = t.size;
  rep.sample_edags = t.edags;
  rep.sample_connected = t.connected;
  rep.sample_connected_edags = t.connected_edags;
  rep.r_prime_mode = mode;
  rep.edags = edags;
  rep.dags = dags;
  rep.cdags = cdags;

  const BigCount size(t.size);
  rep.r_exact = ExactRatio(BigCount(t.edags), size);
  rep.r_prime_exact = ExactRatio(BigCount(r_prime_numerator), BigCount(t.connected));
  // (edags / dags) / (k / N) = edags N / (dags k)
  rep.est_eg_dag_exact = ExactRatio(edags * size, dags * t.edags);
  rep.est_ceg_cdag_exact = ExactRatio(edags * t.connected, cdags * r_prime_numerator);
  rep.est_ceg_eg_exact = ExactRatio(BigCount(t.connected), size);
  rep.exact_cdag_dag = ExactRatio(cdags, dags);

  rep.r = rep.r_exact.to_double();
  rep.est_edag_eg = rep.r;
  rep.r_prime = rep.r_prime_exact.to_double();
  rep.est_eg_dag = rep.est_eg_dag_exact.to_double();
  rep.est_ceg_cdag = rep.est_ceg_cdag_exact.to_double();
  rep.est_ceg_eg = rep.est_ceg_eg_exact.to_double();
  rep.mean_changed_fraction = t.changed_fraction_sum / static_cast<double>(t.size);

  std::tie(rep.est_n_egs, rep.est_n_cegs) = approx_counts(rep, dags);
  return standard_errors(std::move(rep));
}

std::pair<double, double> approx_counts(const EstimateReport& report, const BigCount& dags) {
  const double n_egs =
      ExactRatio(report.est_eg_dag_exact.numerator() * dags, report.est_eg_dag_exact.denominator()).to_double();
  return {n_egs, report.est_ceg_eg * n_egs};
}

EstimateReport standard_errors(EstimateReport report) {
  const auto size = static_cast<double>(report.sample_size);
  if (report.sample_size >= 2) {
    const double r = report.r;
    const double edag_dag = ExactRatio(report.edags, report.dags).to_double();
    const double p = report.est_ceg_eg;
    report.se_r = std::sqrt(r * (1.0 - r) / size);
    report.se_eg_dag = r > 0.0 ? edag_dag * report.se_r / (r * r) : 0.0;
    report.se_ceg_eg = std::sqrt(p * (1.0 - p) / size);
  } else {
    report.se_r = report.se_eg_dag = report.se_ceg_eg = 0.0;
  }
  report.low_count_warning = report.sample_edags < kLowCount || report.sample_connected < kLowCount;
  return report;
}

void to_json(nlohmann::json& j, const EstimateReport& r) {
  auto ratio = [](const ExactRatio& x) {
    return nlohmann::json{{"numerator", x.numerator().str()},
                          {"denominator", x.denominator().str()},
                          {"value", x.to_double()},
                          {"rendered", x.render(5)}};
  };
  auto five = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", x);
    return std::string(buf);
  };
  j = nlohmann::json{
      {"n", r.n},
      {"sample_size", r.sample_size},
      {"sample_edags", r.sample_edags},
      {"sample_connected", r.sample_connected},
      {"sample_connected_edags", r.sample_connected_edags},
      {"r_prime_mode", r.r_prime_mode == RPrimeMode::Literal ? "literal" : "connected_only"},
      {"r", r.r},
      {"r_prime", r.r_prime},
      {"est_eg_dag", r.est_eg_dag},
      {"est_edag_eg", r.est_edag_eg},
      {"est_ceg_cdag", r.est_ceg_cdag},
      {"est_ceg_eg", r.est_ceg_eg},
      {"exact_cdag_dag", ratio(r.exact_cdag_dag)},
      {"est_n_egs", r.est_n_egs},
      {"est_n_cegs", r.est_n_cegs},
      {"se_r", r.se_r},
      {"se_eg_dag", r.se_eg_dag},
      {"se_ceg_eg", r.se_ceg_eg},
      {"low_count_warning", r.low_count_warning},
      {"mean_changed_fraction", r.mean_changed_fraction},
      {"edags", r.edags.str()},
      {"dags", r.dags.str()},
      {"cdags", r.cdags.str()},
      {"rendered",
       {{"est_eg_dag", five(r.est_eg_dag)},
        {"est_edag_eg", five(r.est_edag_eg)},
        {"est_ceg_cdag", five(r.est_ceg_cdag)},
        {"est_ceg_eg", five(r.est_ceg_eg)},
        {"exact_cdag_dag", r.exact_cdag_dag.render(5)}}},
  };
}

}  // namespace egcount
