#include "egcount/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "egcount/equivalence.hpp"
#include "egcount/exact_counts.hpp"
#include "egcount/mcmc.hpp"
#include "egcount/oracle.hpp"

namespace egcount {

bool SuiteResult::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

void SuiteResult::add(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

namespace {

std::string ratio_text(std::uint64_t num, std::uint64_t den) {
  return ExactRatio(BigCount(num), BigCount(den)).render(5);
}

}  // namespace

SuiteResult verify_oracle(int n) {
  SuiteResult out{"oracle", {}};
  const OracleCensus c = compute_census(n, 1);

  std::ostringstream counts;
  counts << "dags=" << c.n_dags << " cdags=" << c.n_cdags << " egs=" << c.n_egs << " cegs=" << c.n_cegs
         << " edags=" << c.n_edags;
  out.add("census counts", true, counts.str());
  out.add("#DAGs equals recursion", BigCount(c.n_dags) == count_dags(n),
          std::to_string(c.n_dags) + " vs " + count_dags(n).str());
  out.add("#CDAGs equals recursion", BigCount(c.n_cdags) == count_cdags(n),
          std::to_string(c.n_cdags) + " vs " + count_cdags(n).str());

  std::uint64_t weighted = 0;
  std::uint64_t classes = 0;
  for (const auto& [size, number] : c.class_size_histogram) {
    weighted += size * number;
    classes += number;
  }
  const auto singletons = c.class_size_histogram.count(1) ? c.class_size_histogram.at(1) : 0;
  out.add("histogram sums to #DAGs", weighted == c.n_dags);
  out.add("histogram classes equal #EGs", classes == c.n_egs);
  out.add("#EDAGs equals singleton classes", singletons == c.n_edags);
  out.add("ordering invariants", c.n_cdags <= c.n_dags && c.n_cegs <= c.n_egs && c.n_edags <= c.n_egs);

  for (const auto& row : reference::kExactEgRatios) {
    if (row.n != n) continue;
    const auto eg_dag = ratio_text(c.n_egs, c.n_dags);
    const auto edag_eg = ratio_text(c.n_edags, c.n_egs);
    out.add("#EGs/#DAGs matches published exact", eg_dag == row.eg_dag, eg_dag + " vs " + row.eg_dag);
    out.add("#EDAGs/#EGs matches published exact", edag_eg == row.edag_eg, edag_eg + " vs " + row.edag_eg);
  }
  return out;
}

SuiteResult verify_wright(int max_n) {
  SuiteResult out{"wright", {}};
  const WrightReport report = wright_conditions_report(max_n);

  out.add("(i) A_n > 2^(n-1) A_(n-1) for 2..N", report.growth_ok(),
          "log ratio at N: " + std::to_string(report.growth.back().log_ratio) + " >= " +
              std::to_string(report.growth.back().lower_bound));
  out.add("(ii) log-convexity for 2..N-1", report.convexity_ok(), std::to_string(report.convexity.size()) + " rows");
  bool terms = true;
  bool pairs = true;
  bool partials = true;
  for (const auto& row : report.series) {
    terms = terms && row.term_within_bound;
    pairs = pairs && row.pair_count_holds;
    partials = partials && row.partial_sum <= row.bound_partial_sum;
  }
  out.add("(iii) terms <= (4k-2)/k^3", terms, std::to_string(report.series.size()) + " terms");
  out.add("(iii) A_2k >= k^2 C(2k-2,k-1) A_k^2", pairs);
  out.add("(iii) partial sums within bound partial sums", partials,
          report.series.empty() ? "" : "sum = " + std::to_string(report.series.back().partial_sum.convert_to<double>()));

  bool increasing = true;
  const int top = std::min(max_n, kMaxCountNodes);
  for (int n = 2; n < top; ++n) {
    if (!(exact_cdag_dag_ratio(n + 1) > exact_cdag_dag_ratio(n))) increasing = false;
  }
  out.add("#CDAGs/#DAGs strictly increasing for 2..N", increasing);
  if (top >= 20) {
    const ExactRatio last = exact_cdag_dag_ratio(top);
    // 1 - a/A < 1e-5  <=>  (A - a) * 10^5 < A
    const bool close = (last.denominator() - last.numerator()) * 100000 < last.denominator();
    out.add("1 - #CDAGs/#DAGs < 1e-5 at N", close, "ratio at N: " + last.render(10));
  }
  return out;
}

SuiteResult verify_kernel(int n) {
  SuiteResult out{"kernel", {}};
  const auto reachable = kernel_support_bfs(n);
  const auto egs = enumerate_egs(n);
  std::set<CanonicalKey> eg_keys;
  for (const auto& g : egs) eg_keys.insert(canonical_key(g));

  out.add("reachable set equals EG set", reachable == eg_keys,
          std::to_string(reachable.size()) + " reachable, " + std::to_string(eg_keys.size()) + " EGs");
  const SymmetryReport sym = check_kernel_symmetry(egs);
  out.add("draw counts symmetric", sym.ok(),
          std::to_string(sym.transitions_checked) + " transitions, " + std::to_string(sym.asymmetric) + " asymmetric");
  out.add("self-loop probability >= 1/7", sym.min_self_loop_probability >= 1.0 / 7.0 - 1e-12,
          "min " + std::to_string(sym.min_self_loop_probability));
  return out;
}

UniformityStats uniformity_stats(const std::map<CanonicalKey, std::uint64_t>& tally,
                                 const std::vector<CanonicalKey>& support) {
  UniformityStats s;
  s.states = support.size();
  if (support.empty()) throw std::invalid_argument("uniformity_stats needs a nonempty support");
  std::set<CanonicalKey> allowed(support.begin(), support.end());
  for (const auto& [key, count] : tally) {
    s.draws += count;
    if (!allowed.count(key)) s.all_states_valid = false;
  }
  if (s.draws == 0) return s;
  const double expected = static_cast<double>(s.draws) / static_cast<double>(s.states);
  const double uniform = 1.0 / static_cast<double>(s.states);
  for (const auto& key : support) {
    const auto it = tally.find(key);
    const double observed = it == tally.end() ? 0.0 : static_cast<double>(it->second);
    s.total_variation += std::abs(observed / static_cast<double>(s.draws) - uniform);
    s.chi_square += (observed - expected) * (observed - expected) / expected;
  }
  s.total_variation /= 2.0;
  const double df = static_cast<double>(s.states - 1);
  s.p_value = df > 0 ? boost::math::gamma_q(df / 2.0, s.chi_square / 2.0) : 1.0;
  return s;
}

SuiteResult verify_uniformity(const UniformityConfig& cfg) {
  SuiteResult out{"uniformity", {}};
  const auto egs = enumerate_egs(cfg.n);
  std::vector<CanonicalKey> support;
  for (const auto& g : egs) support.push_back(canonical_key(g));
  const auto tally = run_thinned_chain(cfg.n, cfg.steps, cfg.seed, cfg.burn_in, cfg.thin);
  const UniformityStats s = uniformity_stats(tally, support);

  out.add("every visited state is an EG", s.all_states_valid);
  out.add("total variation < " + std::to_string(cfg.max_total_variation), s.total_variation < cfg.max_total_variation,
          "TV=" + std::to_string(s.total_variation) + " over " + std::to_string(s.draws) + " draws");
  out.add("chi-square p-value > " + std::to_string(cfg.min_p_value), s.p_value > cfg.min_p_value,
          "chi2=" + std::to_string(s.chi_square) + " p=" + std::to_string(s.p_value));
  return out;
}

}  // namespace egcount
