#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "egcount/equivalence.hpp"
#include "egcount/errors.hpp"
#include "egcount/estimator.hpp"
#include "egcount/oracle.hpp"

using namespace egcount;

namespace {

SampleRecord rec(int n, bool edag, bool connected) {
  SampleRecord r;
  r.n = n;
  r.steps = 1;
  r.is_edag = edag;
  r.is_connected = connected;
  return r;
}

std::vector<SampleRecord> full_eg_set(int n) {
  std::vector<SampleRecord> out;
  for (const auto& g : enumerate_egs(n)) out.push_back(rec(n, is_edag(g), is_connected(g)));
  return out;
}

std::vector<SampleRecord> with_counts(int n, std::uint64_t size, std::uint64_t edags, std::uint64_t connected) {
  std::vector<SampleRecord> out;
  for (std::uint64_t i = 0; i < size; ++i) out.push_back(rec(n, i < edags, i < connected));
  return out;
}

}  // namespace

TEST_CASE("n = 2 uniform sample") {
  const auto report = estimate(full_eg_set(2), 1, 3, 2);
  CHECK(report.r == 0.5);
  CHECK(report.est_eg_dag_exact == ExactRatio(2, 3));
  CHECK(report.est_eg_dag_exact.render() == "0.66667");
  CHECK(report.est_edag_eg == 0.5);
  // The only EDAG is the disconnected empty graph; R' still counts it.
  CHECK(report.r_prime == 1.0);
  CHECK(report.est_ceg_cdag_exact == ExactRatio(1, 2));
  CHECK(report.est_n_egs == doctest::Approx(2.0));
  CHECK_THROWS_AS(estimate(full_eg_set(2), 1, 3, 2, RPrimeMode::ConnectedOnly), DegenerateSample);
}

TEST_CASE("n = 3 full EG set") {
  const auto report = estimate(full_eg_set(3), 4, 25, 18);
  CHECK(report.sample_size == 11);
  CHECK(report.sample_edags == 4);
  CHECK(report.sample_connected == 7);
  CHECK(report.r_exact == ExactRatio(4, 11));
  CHECK(report.est_eg_dag_exact == ExactRatio(11, 25));
  CHECK(report.est_eg_dag_exact.render() == "0.44000");
  CHECK(report.r_prime_exact == ExactRatio(4, 7));
  CHECK(report.est_ceg_cdag_exact == ExactRatio(7, 18));
  CHECK(report.est_ceg_cdag_exact.render() == "0.38889");
  CHECK(report.est_ceg_eg_exact == ExactRatio(7, 11));
  CHECK(report.est_eg_dag == doctest::Approx(0.44));
  CHECK(report.exact_cdag_dag == ExactRatio(18, 25));
  const auto [egs, cegs] = approx_counts(report, 25);
  CHECK(egs == doctest::Approx(11.0));
  CHECK(cegs == doctest::Approx(7.0));
  CHECK(report.r_prime * report.sample_connected == doctest::Approx(report.sample_edags));
}

TEST_CASE("plug-in exactness for the complete EG set, n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    const auto c = census(n);
    const auto report = estimate(full_eg_set(n), c.n_edags, c.n_dags, c.n_cdags);
    CHECK(report.est_eg_dag_exact == ExactRatio(c.n_egs, c.n_dags));
    CHECK(report.est_ceg_cdag_exact == ExactRatio(c.n_cegs, c.n_cdags));
    CHECK(report.est_ceg_eg_exact == ExactRatio(c.n_cegs, c.n_egs));
  }
}

TEST_CASE("degenerate and invalid samples") {
  CHECK_THROWS_AS(estimate(with_counts(3, 10, 0, 5), 4, 25, 18), DegenerateSample);
  CHECK_THROWS_AS(estimate(with_counts(3, 10, 3, 0), 4, 25, 18), DegenerateSample);
  CHECK_THROWS_AS(estimate({}, 4, 25, 18), std::invalid_argument);
  auto mixed = with_counts(3, 4, 2, 2);
  mixed.push_back(rec(4, true, true));
  CHECK_THROWS_AS(estimate(mixed, 4, 25, 18), std::invalid_argument);
}

TEST_CASE("ConnectedOnly counts connected EDAGs in R'") {
  // 10 records: 4 EDAGs of which 2 connected; 6 connected overall.
  std::vector<SampleRecord> records;
  for (int i = 0; i < 10; ++i) records.push_back(rec(3, i < 4, i >= 2 && i < 8));
  const auto literal = estimate(records, 4, 25, 18);
  const auto strict = estimate(records, 4, 25, 18, RPrimeMode::ConnectedOnly);
  CHECK(literal.r_prime_exact == ExactRatio(4, 6));
  CHECK(strict.r_prime_exact == ExactRatio(2, 6));
  CHECK(literal.est_eg_dag == strict.est_eg_dag);
}

TEST_CASE("standard errors") {
  const auto half = estimate(with_counts(3, 10000, 5000, 10000), 4, 25, 18);
  CHECK(half.se_r == doctest::Approx(0.005));
  CHECK(half.se_ceg_eg == 0.0);
  CHECK_FALSE(half.low_count_warning);

  const auto all = estimate(with_counts(3, 500, 500, 500), 4, 25, 18);
  CHECK(all.se_r == 0.0);

  const auto quarter = estimate(with_counts(4, 10000, 2500, 9000), 59, 543, 446);
  const double se_r = std::sqrt(0.25 * 0.75 / 10000);
  CHECK(quarter.se_r == doctest::Approx(0.0043301).epsilon(1e-4));
  CHECK(quarter.se_eg_dag == doctest::Approx(59.0 / 543 * se_r / 0.0625));
  CHECK(quarter.se_ceg_eg == doctest::Approx(std::sqrt(0.9 * 0.1 / 10000)));

  const auto small = estimate(with_counts(3, 100, 20, 90), 4, 25, 18);
  CHECK(small.low_count_warning);

  const auto single = estimate(with_counts(3, 1, 1, 1), 4, 25, 18);
  CHECK(single.se_r == 0.0);
  CHECK(single.se_eg_dag == 0.0);
}

TEST_CASE("estimates do not depend on record order") {
  auto records = with_counts(4, 300, 90, 280);
  const nlohmann::json base = estimate(records, 59, 543, 446);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(records.begin(), records.end(), rng);
    const nlohmann::json again = estimate(records, 59, 543, 446);
    CHECK(again == base);
  }
}

TEST_CASE("report JSON carries rendered strings") {
  const nlohmann::json j = estimate(full_eg_set(3), 4, 25, 18);
  CHECK(j.at("n") == 3);
  CHECK(j.at("sample_size") == 11);
  CHECK(j.at("rendered").at("est_eg_dag") == "0.44000");
  CHECK(j.at("est_eg_dag").get<double>() == doctest::Approx(0.44));
}
