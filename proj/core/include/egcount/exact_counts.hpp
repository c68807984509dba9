#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace egcount {

/// Arbitrary-precision nonnegative integer.
using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// numerator / denominator with denominator > 0. Equality and ordering use
/// cross-multiplication, so unreduced and reduced forms compare equal.
class ExactRatio {
 public:
  ExactRatio(BigCount numerator, BigCount denominator);

  const BigCount& numerator() const { return num_; }
  const BigCount& denominator() const { return den_; }

  /// Decimal string rounded half-to-even at `places` decimals.
  std::string render(int places = 5) const;
  double to_double() const;

  friend bool operator==(const ExactRatio& a, const ExactRatio& b);
  friend bool operator<(const ExactRatio& a, const ExactRatio& b);
  friend bool operator>(const ExactRatio& a, const ExactRatio& b) { return b < a; }

 private:
  BigCount num_;
  BigCount den_;
};

/// Largest n served by the memoized count tables.
inline constexpr int kMaxCountNodes = 64;

/// C(n, k) from a memoized Pascal triangle, 0 <= n <= 2 * kMaxCountNodes.
const BigCount& binomial(int n, int k);

/// Labeled DAGs on n nodes, 0 <= n <= 64 (A_0 = 1).
const BigCount& count_dags(int n);

/// Weakly connected labeled DAGs on n nodes, 1 <= n <= 64.
const BigCount& count_cdags(int n);

/// #CDAGs / #DAGs.
ExactRatio exact_cdag_dag_ratio(int n);

/// Source of exact essential-DAG counts.
///
/// The Oracle backend runs the brute-force census (n <= 5). The table
/// backend serves an operator-supplied CSV ("n,count" header); rows with
/// n <= 5 are checked against the census when the table is loaded.
class EdagCountProvider {
 public:
  enum class Backend { Oracle, TableFile };

  static EdagCountProvider oracle();
  /// Throws FormatError on a malformed table or a row that disagrees with the oracle.
  static EdagCountProvider from_table(std::istream& csv, std::string source = "<stream>");
  static EdagCountProvider from_table_file(const std::filesystem::path& path);

  Backend backend() const { return backend_; }
  const std::string& source() const { return source_; }
  bool covers(int n) const;
  /// Throws NotCovered when n is outside the provider's range.
  BigCount count(int n) const;

 private:
  EdagCountProvider(Backend backend, std::string source) : backend_(backend), source_(std::move(source)) {}

  Backend backend_;
  std::string source_;
  std::map<int, BigCount> table_;
};

/// Finite-n evidence for the three sufficient conditions under which almost
/// every labeled DAG is connected. All pass/fail flags come from exact
/// integer comparisons; the double fields are for display only.
struct WrightReport {
  struct GrowthRow {
    int n;
    double log_ratio;    // log((A_n/n!) / (A_{n-1}/(n-1)!))
    double lower_bound;  // log(2^{n-1} / n)
    bool exceeds_bound;  // A_n > 2^{n-1} A_{n-1}, strict
    bool meets_bound;    // A_n >= 2^{n-1} A_{n-1}
  };
  struct ConvexityRow {
    int n;
    bool holds;  // n A_{n+1} A_{n-1} >= (n+1) A_n^2
    bool doubling_holds;  // A_{n+1} A_{n-1} >= 2 A_n^2
  };
  struct SeriesRow {
    int k;
    BigRational term;          // (A_k/k!)^2 / (A_{2k}/(2k)!)
    BigRational bound;         // (4k - 2) / k^3
    BigRational partial_sum;
    BigRational bound_partial_sum;
    bool term_within_bound;
    bool pair_count_holds;     // A_{2k} >= k^2 C(2k-2, k-1) A_k^2
  };

  int max_n;
  std::vector<GrowthRow> growth;          // n = 2..N
  std::vector<ConvexityRow> convexity;    // n = 2..N-1
  std::vector<SeriesRow> series;          // k = 1..N/2

  bool growth_ok() const;
  bool convexity_ok() const;
  bool series_ok() const;
  bool all_ok() const { return growth_ok() && convexity_ok() && series_ok(); }
};

/// Pre: 2 <= max_n <= 40.
WrightReport wright_conditions_report(int max_n);

/// Natural log of a positive big integer.
double log_big(const BigCount& x);

}  // namespace egcount
