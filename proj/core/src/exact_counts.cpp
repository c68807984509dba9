#include "egcount/exact_counts.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "egcount/errors.hpp"
#include "egcount/oracle.hpp"

namespace egcount {

namespace mp = boost::multiprecision;

ExactRatio::ExactRatio(BigCount numerator, BigCount denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ <= 0) throw std::invalid_argument("ExactRatio denominator must be positive");
  if (num_ < 0) throw std::invalid_argument("ExactRatio numerator must be nonnegative");
}

std::string ExactRatio::render(int places) const {
  if (places < 0) throw std::invalid_argument("places must be nonnegative");
  BigCount scale = mp::pow(BigCount(10), static_cast<unsigned>(places));
  BigCount scaled = num_ * scale;
  BigCount quotient = scaled / den_;
  BigCount twice_remainder = 2 * (scaled % den_);
  if (twice_remainder > den_ || (twice_remainder == den_ && (quotient & 1) != 0)) {
    ++quotient;
  }
  std::string digits = quotient.str();
  if (places == 0) return digits;
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - places, 1, '.');
  return digits;
}

double ExactRatio::to_double() const {
  // Operands past the double range go through logs.
  const double num = num_.convert_to<double>();
  const double den = den_.convert_to<double>();
  if (std::isfinite(num) && std::isfinite(den)) return num / den;
  return std::exp(log_big(num_) - log_big(den_));
}

bool operator==(const ExactRatio& a, const ExactRatio& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

bool operator<(const ExactRatio& a, const ExactRatio& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

double log_big(const BigCount& x) {
  if (x <= 0) throw std::domain_error("log_big of a nonpositive value");
  const std::size_t bits = mp::msb(x) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigCount top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

namespace {

struct CountTables {
  std::vector<std::vector<BigCount>> pascal;  // pascal[n][k]
  std::vector<BigCount> dags;
  std::vector<BigCount> cdags;
};

CountTables build_tables() {
  CountTables t;
  const int max_binomial = 2 * kMaxCountNodes;
  t.pascal.resize(max_binomial + 1);
  for (int n = 0; n <= max_binomial; ++n) {
    t.pascal[n].resize(n + 1);
    t.pascal[n][0] = t.pascal[n][n] = 1;
    for (int k = 1; k < n; ++k) t.pascal[n][k] = t.pascal[n - 1][k - 1] + t.pascal[n - 1][k];
  }

  // A_n = sum_{k=1..n} (-1)^{k+1} C(n,k) 2^{k(n-k)} A_{n-k}
  t.dags.assign(kMaxCountNodes + 1, BigCount(0));
  t.dags[0] = 1;
  for (int n = 1; n <= kMaxCountNodes; ++n) {
    BigCount total = 0;
    for (int k = 1; k <= n; ++k) {
      BigCount term = t.pascal[n][k] * t.dags[n - k];
      term <<= static_cast<unsigned>(k * (n - k));
      if (k % 2 == 1) {
        total += term;
      } else {
        total -= term;
      }
    }
    t.dags[n] = total;
  }

  // a_n = A_n - (sum_{k=1..n-1} k C(n,k) a_k A_{n-k}) / n
  t.cdags.assign(kMaxCountNodes + 1, BigCount(0));
  for (int n = 1; n <= kMaxCountNodes; ++n) {
    BigCount sum = 0;
    for (int k = 1; k < n; ++k) sum += k * t.pascal[n][k] * t.cdags[k] * t.dags[n - k];
    if (sum % n != 0) {
      throw InternalInconsistency("connected-DAG recursion: inexact division at n=" + std::to_string(n));
    }
    t.cdags[n] = t.dags[n] - sum / n;
  }
  return t;
}

const CountTables& tables() {
  static const CountTables t = build_tables();
  return t;
}

void check_count_range(int n, int lo) {
  if (n < lo || n > kMaxCountNodes) {
    throw std::out_of_range("node count " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " +
                            std::to_string(kMaxCountNodes) + "]");
  }
}

}  // namespace

const BigCount& binomial(int n, int k) {
  const auto& t = tables();
  if (n < 0 || n >= static_cast<int>(t.pascal.size()) || k < 0 || k > n) {
    throw std::out_of_range("binomial arguments out of range");
  }
  return t.pascal[n][k];
}

const BigCount& count_dags(int n) {
  check_count_range(n, 0);
  return tables().dags[n];
}

const BigCount& count_cdags(int n) {
  check_count_range(n, 1);
  return tables().cdags[n];
}

ExactRatio exact_cdag_dag_ratio(int n) {
  check_count_range(n, 1);
  return ExactRatio(count_cdags(n), count_dags(n));
}

// ---------------------------------------------------------------------------

EdagCountProvider EdagCountProvider::oracle() { return EdagCountProvider(Backend::Oracle, "oracle"); }

EdagCountProvider EdagCountProvider::from_table(std::istream& csv, std::string source) {
  EdagCountProvider provider(Backend::TableFile, std::move(source));
  std::string line;
  if (!std::getline(csv, line)) throw FormatError("EDAG table is empty: " + provider.source_);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,count") throw FormatError("EDAG table header must be \"n,count\": " + provider.source_);

  int line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const std::string where = provider.source_ + ":" + std::to_string(line_no);
    if (comma == std::string::npos) throw FormatError("expected \"n,count\" at " + where);
    const std::string n_text = line.substr(0, comma);
    const std::string count_text = line.substr(comma + 1);
    if (n_text.empty() || count_text.empty() ||
        n_text.find_first_not_of("0123456789") != std::string::npos ||
        count_text.find_first_not_of("0123456789") != std::string::npos || n_text.size() > 3) {
      throw FormatError("malformed row at " + where);
    }
    const int n = std::stoi(n_text);
    if (n < 1 || n > kMaxCountNodes) throw FormatError("node count out of range at " + where);
    if (provider.table_.count(n)) throw FormatError("duplicate n at " + where);
    BigCount value(count_text);
    if (n <= kOracleMaxNodes && value != census(n).n_edags) {
      throw FormatError("EDAG table disagrees with the oracle for n=" + std::to_string(n) + " at " + where);
    }
    provider.table_.emplace(n, std::move(value));
  }
  return provider;
}

EdagCountProvider EdagCountProvider::from_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open EDAG table " + path.string());
  return from_table(in, path.string());
}

bool EdagCountProvider::covers(int n) const {
  if (backend_ == Backend::Oracle) return n >= 1 && n <= kOracleMaxNodes;
  return table_.count(n) != 0;
}

BigCount EdagCountProvider::count(int n) const {
  if (!covers(n)) {
    throw NotCovered("no EDAG count for n=" + std::to_string(n) + " from " + source_);
  }
  if (backend_ == Backend::Oracle) return BigCount(census(n).n_edags);
  return table_.at(n);
}

// ---------------------------------------------------------------------------

bool WrightReport::growth_ok() const {
  for (const auto& row : growth) {
    if (!row.exceeds_bound) return false;
  }
  return true;
}

bool WrightReport::convexity_ok() const {
  for (const auto& row : convexity) {
    if (!row.holds) return false;
  }
  return true;
}

bool WrightReport::series_ok() const {
  for (const auto& row : series) {
    if (!row.term_within_bound || !row.pair_count_holds || row.partial_sum > row.bound_partial_sum) return false;
  }
  return true;
}

WrightReport wright_conditions_report(int max_n) {
  if (max_n < 2 || max_n > 40) throw std::out_of_range("wright_conditions_report needs 2 <= N <= 40");
  WrightReport report;
  report.max_n = max_n;

  for (int n = 2; n <= max_n; ++n) {
    const BigCount& a_n = count_dags(n);
    const BigCount& a_prev = count_dags(n - 1);
    const BigCount floor_value = a_prev << static_cast<unsigned>(n - 1);
    WrightReport::GrowthRow row;
    row.n = n;
    row.log_ratio = log_big(a_n) - log_big(a_prev) - std::log(static_cast<double>(n));
    row.lower_bound = (n - 1) * std::numbers::ln2 - std::log(static_cast<double>(n));
    row.exceeds_bound = a_n > floor_value;
    row.meets_bound = a_n >= floor_value;
    report.growth.push_back(row);
  }

  for (int n = 2; n <= max_n - 1; ++n) {
    const BigCount& a_next = count_dags(n + 1);
    const BigCount& a_n = count_dags(n);
    const BigCount& a_prev = count_dags(n - 1);
    const BigCount product = a_next * a_prev;
    const BigCount square = a_n * a_n;
    report.convexity.push_back({n, n * product >= (n + 1) * square, product >= 2 * square});
  }

  BigRational partial = 0;
  BigRational bound_partial = 0;
  for (int k = 1; 2 * k <= max_n; ++k) {
    const BigCount& a_k = count_dags(k);
    const BigCount& a_2k = count_dags(2 * k);
    const BigCount square = a_k * a_k;
    WrightReport::SeriesRow row;
    row.k = k;
    // (A_k/k!)^2 / (A_2k/(2k)!) = A_k^2 C(2k,k) / A_2k
    row.term = BigRational(square * binomial(2 * k, k), a_2k);
    row.bound = BigRational(BigCount(4 * k - 2), BigCount(k) * k * k);
    partial += row.term;
    bound_partial += row.bound;
    row.partial_sum = partial;
    row.bound_partial_sum = bound_partial;
    row.term_within_bound = row.term <= row.bound;
    row.pair_count_holds = a_2k >= BigCount(k) * k * binomial(2 * k - 2, k - 1) * square;
    report.series.push_back(std::move(row));
  }
  return report;
}

}  // namespace egcount
