#include <doctest.h>

#include <cmath>
#include <sstream>

#include "brute_force.hpp"
#include "egcount/errors.hpp"
#include "egcount/exact_counts.hpp"
#include "egcount/verify.hpp"

using namespace egcount;

TEST_CASE("count_dags and count_cdags match the brute-force oracle, n <= 4") {
  CHECK(count_dags(0) == 1);
  for (int n = 1; n <= 4; ++n) {
    const auto c = brute::census(n);
    CHECK(count_dags(n) == c.dags);
    CHECK(count_cdags(n) == c.cdags);
  }
}

TEST_CASE("known counts") {
  CHECK(count_dags(1) == 1);
  CHECK(count_dags(3) == 25);
  CHECK(count_dags(4) == 543);
  CHECK(count_dags(5) == 29281);
  CHECK(count_dags(6) == 3781503);
  CHECK(count_cdags(2) == 2);
  CHECK(count_cdags(3) == 18);
  CHECK(count_cdags(4) == 446);
  CHECK(count_cdags(6) == 3596762);
}

TEST_CASE("counts are available up to 64 nodes and grow") {
  for (int n = 2; n <= kMaxCountNodes; ++n) {
    CHECK(count_dags(n) > count_dags(n - 1));
    CHECK(count_cdags(n) <= count_dags(n));
  }
  CHECK_THROWS(count_dags(65));
  CHECK_THROWS(count_cdags(0));
}

TEST_CASE("binomial") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(128, 64) == BigCount("23951146041928082866135587776380551750"));
  CHECK_THROWS(binomial(4, 5));
  CHECK_THROWS(binomial(129, 1));
}

TEST_CASE("ExactRatio rendering rounds half to even") {
  CHECK(ExactRatio(2, 3).render() == "0.66667");
  CHECK(ExactRatio(18, 25).render() == "0.72000");
  CHECK(ExactRatio(1, 8).render(2) == "0.12");
  CHECK(ExactRatio(3, 8).render(2) == "0.38");
  CHECK(ExactRatio(5, 8).render(2) == "0.62");
  CHECK(ExactRatio(1, 2).render(0) == "0");
  CHECK(ExactRatio(3, 2).render(0) == "2");
  CHECK(ExactRatio(0, 7).render() == "0.00000");
  CHECK(ExactRatio(7, 7).render() == "1.00000");
  CHECK(ExactRatio(1, 200000).render() == "0.00000");
  CHECK(ExactRatio(3, 200000).render() == "0.00002");
  CHECK_THROWS(ExactRatio(1, 2).render(-1));
}

TEST_CASE("ExactRatio compares by cross-multiplication") {
  CHECK(ExactRatio(6, 4) == ExactRatio(3, 2));
  CHECK(ExactRatio(1, 3) < ExactRatio(1, 2));
  CHECK(ExactRatio(2, 3) > ExactRatio(3, 5));
  CHECK(ExactRatio(1, 3).to_double() == doctest::Approx(1.0 / 3));
  CHECK(ExactRatio(count_cdags(64), count_dags(64)).to_double() == doctest::Approx(1.0));
}

TEST_CASE("CDAG/DAG column matches the published values for n = 2..31") {
  for (int n = 2; n <= 31; ++n) {
    CAPTURE(n);
    CHECK(exact_cdag_dag_ratio(n).render() == reference::kCdagDagRatios[n - 2]);
  }
  CHECK(exact_cdag_dag_ratio(2) == ExactRatio(2, 3));
}

TEST_CASE("CDAG/DAG ratio increases strictly towards one") {
  for (int n = 2; n < 31; ++n) CHECK(exact_cdag_dag_ratio(n + 1) > exact_cdag_dag_ratio(n));
  const auto r31 = exact_cdag_dag_ratio(31);
  // 1 - r < 1e-5  <=>  1e5 (den - num) < den
  CHECK(100000 * (r31.denominator() - r31.numerator()) < r31.denominator());
}

TEST_CASE("Wright conditions: worked values") {
  const auto report = wright_conditions_report(4);
  REQUIRE(report.growth.front().n == 2);
  CHECK(report.growth.front().log_ratio == doctest::Approx(std::log(1.5)));
  CHECK(report.growth.front().lower_bound == doctest::Approx(0.0));
  REQUIRE(report.series.size() == 2);
  CHECK(report.series[0].k == 1);
  CHECK(report.series[0].term == BigRational(2, 3));
  CHECK(report.series[0].bound == 2);
  CHECK(report.series[0].term_within_bound);
  // A_4 / A_2^2 = 543/9 >= 2^2 C(2,1) = 8
  CHECK(report.series[1].pair_count_holds);
  CHECK(report.series[1].term == BigRational(9 * 24, 4 * 543));
}

TEST_CASE("Wright conditions hold up to 31 nodes") {
  const auto report = wright_conditions_report(31);
  CHECK(report.growth.size() == 30);
  CHECK(report.convexity.size() == 29);
  CHECK(report.series.size() == 15);
  CHECK(report.growth_ok());
  CHECK(report.convexity_ok());
  CHECK(report.series_ok());
  for (const auto& row : report.series) CHECK(row.partial_sum <= row.bound_partial_sum);
  for (const auto& row : report.growth) CHECK(row.log_ratio > row.lower_bound);
  CHECK_THROWS(wright_conditions_report(1));
  CHECK_THROWS(wright_conditions_report(41));
}

TEST_CASE("EDAG provider: oracle backend") {
  const auto p = EdagCountProvider::oracle();
  CHECK(p.covers(5));
  CHECK_FALSE(p.covers(6));
  CHECK(p.count(2) == 1);
  CHECK(p.count(3) == 4);
  CHECK(p.count(4) == 59);
  CHECK_THROWS_AS(p.count(6), NotCovered);
}

TEST_CASE("EDAG provider: table backend") {
  std::istringstream good("n,count\n3,4\n10,123456789012345678901234567890\n");
  const auto p = EdagCountProvider::from_table(good);
  CHECK(p.covers(10));
  CHECK_FALSE(p.covers(4));
  CHECK(p.count(10) == BigCount("123456789012345678901234567890"));
  CHECK_THROWS_AS(p.count(4), NotCovered);

  auto rejects = [](const char* text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(EdagCountProvider::from_table(in), FormatError);
  };
  rejects("");
  rejects("count,n\n");
  rejects("n,count\n3;4\n");
  rejects("n,count\n3,x\n");
  rejects("n,count\n0,1\n");
  rejects("n,count\n3,4\n3,4\n");
  rejects("n,count\n4,58\n");  // disagrees with the oracle
  CHECK_THROWS_AS(EdagCountProvider::from_table_file("/nonexistent/edags.csv"), FormatError);
}

TEST_CASE("shipped EDAG table loads") {
  const auto p = EdagCountProvider::from_table_file(EGCOUNT_DATA_DIR "/edag_counts.csv");
  for (int n = 1; n <= 5; ++n) CHECK(p.count(n) == EdagCountProvider::oracle().count(n));
}
