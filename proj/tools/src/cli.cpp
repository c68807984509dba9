#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "egcount/equivalence.hpp"
#include "egcount/errors.hpp"
#include "egcount/estimator.hpp"
#include "egcount/exact_counts.hpp"
#include "egcount/mcmc.hpp"
#include "egcount/oracle.hpp"
#include "egcount/verify.hpp"
#include "egcount/version.hpp"

namespace egcount::cli {

namespace {

using nlohmann::json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

unsigned default_threads(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("EG_CENSUS_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return static_cast<unsigned>(parsed);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string five(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(5) << x;
  return s.str();
}

std::string join_args(const std::vector<std::string>& args) {
  std::string line = "egcount";
  for (const auto& a : args) line += " " + a;
  return line;
}

EdagCountProvider make_provider(const std::string& table) {
  return table.empty() ? EdagCountProvider::oracle() : EdagCountProvider::from_table_file(table);
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write " + path);
  f << doc.dump(2) << '\n';
  if (!f) throw std::ios_base::failure("error writing " + path);
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

void print_suite(std::ostream& out, const SuiteResult& suite) {
  for (const auto& c : suite.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << suite.suite << ": " << c.name;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << '\n';
  }
  out << suite.suite << ": " << (suite.passed() ? "PASS" : "FAIL") << '\n';
}

// ---------------------------------------------------------------------------

struct CountOptions {
  int nodes = 0;
  std::string what = "table";
  std::string edag_table;
  int places = 5;
  bool csv = false;
};

int cmd_count(const CountOptions& o, std::ostream& out) {
  if (o.what == "dags") {
    out << count_dags(o.nodes) << '\n';
  } else if (o.what == "cdags") {
    out << count_cdags(o.nodes) << '\n';
  } else if (o.what == "edags") {
    out << make_provider(o.edag_table).count(o.nodes) << '\n';
  } else {
    if (o.csv) {
      out << "n,dags,cdags,cdag_dag\n";
    } else {
      out << std::setw(5) << "NODES" << "  " << std::setw(12) << "#CDAGs/#DAGs" << "  #DAGs / #CDAGs\n";
    }
    for (int n = 2; n <= o.nodes; ++n) {
      const auto ratio = exact_cdag_dag_ratio(n).render(o.places);
      if (o.csv) {
        out << n << ',' << count_dags(n) << ',' << count_cdags(n) << ',' << ratio << '\n';
      } else {
        out << std::setw(5) << n << "  " << std::setw(12) << ratio << "  " << count_dags(n) << " / "
            << count_cdags(n) << '\n';
      }
    }
  }
  return kOk;
}

struct OracleOptions {
  int nodes = 0;
  std::string json_path;
  int threads = 0;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
  const OracleCensus c = compute_census(o.nodes, default_threads(o.threads));
  auto ratio = [](std::uint64_t a, std::uint64_t b) { return ExactRatio(BigCount(a), BigCount(b)).render(5); };
  out << "n        " << c.n << '\n'
      << "n_dags   " << c.n_dags << '\n'
      << "n_cdags  " << c.n_cdags << '\n'
      << "n_egs    " << c.n_egs << '\n'
      << "n_cegs   " << c.n_cegs << '\n'
      << "n_edags  " << c.n_edags << '\n'
      << "#EGs/#DAGs     " << ratio(c.n_egs, c.n_dags) << '\n'
      << "#EDAGs/#EGs    " << ratio(c.n_edags, c.n_egs) << '\n'
      << "#CEGs/#CDAGs   " << ratio(c.n_cegs, c.n_cdags) << '\n'
      << "#CEGs/#EGs     " << ratio(c.n_cegs, c.n_egs) << '\n'
      << "#CDAGs/#DAGs   " << ratio(c.n_cdags, c.n_dags) << '\n'
      << "class sizes    {";
  bool first = true;
  for (const auto& [size, count] : c.class_size_histogram) {
    out << (first ? "" : ", ") << size << ":" << count;
    first = false;
  }
  out << "}\n";
  if (!o.json_path.empty()) write_json_file(o.json_path, json(c));
  return kOk;
}

struct SampleOptions {
  int nodes = 0;
  std::uint64_t chains = 0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  bool emit_graphs = false;
  bool paper_preset = false;
  bool dry_run = false;
  bool chains_set = false;
  bool steps_set = false;
  int threads = 0;
};

int cmd_sample(const SampleOptions& o, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  ChainConfig cfg;
  cfg.n = o.nodes;
  cfg.chains = o.chains;
  cfg.steps = o.steps;
  cfg.seed = o.seed;
  cfg.record_graphs = o.emit_graphs;
  cfg.threads = default_threads(o.threads);
  if (o.paper_preset) {
    if (!o.chains_set) cfg.chains = 10'000;
    if (!o.steps_set) cfg.steps = o.nodes == 31 ? 2'000'000 : 1'000'000;
  }
  if (!o.paper_preset && (!o.chains_set || !o.steps_set)) {
    err << "sample: --chains and --steps are required unless --paper-preset is given\n";
    return kUsage;
  }
  cfg.validate();

  const std::string started = utc_now();
  const auto records = o.dry_run ? std::vector<SampleRecord>{} : run_ensemble(cfg);

  json manifest = {
      {"schema_version", kSchemaVersion},
      {"software_version", kVersion},
      {"command_line", join_args(args)},
      {"config",
       {{"n", cfg.n},
        {"steps", cfg.steps},
        {"chains", cfg.chains},
        {"seed", cfg.seed},
        {"record_graphs", cfg.record_graphs},
        {"threads", cfg.threads},
        {"paper_preset", o.paper_preset}}},
      {"master_seed", cfg.seed},
      {"chain_seed_rule", "splitmix64(seed ^ splitmix64(chain_index + 0x9e3779b97f4a7c15))"},
      {"canonical_key_format", "byte n, then 2-bit codes per pair i<j (00 absent, 01 i->j, 10 j->i, 11 undirected), "
                               "MSB-first, base64"},
      {"start_time", started},
      {"end_time", utc_now()},
  };
  json seeds = json::array();
  for (const auto& r : records) seeds.push_back(r.chain_seed);
  manifest["chain_seeds"] = std::move(seeds);
  if (o.dry_run) {
    // Resolved configuration only; nothing is sampled or written.
    manifest.erase("chain_seeds");
    out << manifest.dump(2) << '\n';
    return kOk;
  }

  if (o.out_path.empty()) {
    write_jsonl(out, records);
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot write " + o.out_path);
    write_jsonl(f, records);
    if (!f) throw std::ios_base::failure("error writing " + o.out_path);
    write_json_file(manifest_path(o.out_path), manifest);
    err << "wrote " << records.size() << " records to " << o.out_path << " (steps=" << cfg.steps
        << ", chains=" << cfg.chains << ")\n";
  }
  return kOk;
}

struct EstimateOptions {
  std::string in_path;
  std::string edag_table;
  std::string json_path;
  bool strict_connected = false;
};

int cmd_estimate(const EstimateOptions& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.in_path);
  if (!in) throw std::ios_base::failure("cannot open " + o.in_path);
  const auto records = read_jsonl(in);
  if (records.empty()) {
    err << "estimate: " << o.in_path << " contains no sample records\n";
    return kUsage;
  }
  const int n = records.front().n;
  const auto provider = make_provider(o.edag_table);
  const auto mode = o.strict_connected ? RPrimeMode::ConnectedOnly : RPrimeMode::Literal;
  EstimateReport rep;
  try {
    rep = estimate(records, provider.count(n), count_dags(n), count_cdags(n), mode);
  } catch (const DegenerateSample& e) {
    err << "estimate: " << e.what() << " (sample of " << records.size() << " records)\n";
    return kUsage;
  }

  out << "NODES  #EGs/#DAGs  #EDAGs/#EGs  #CEGs/#CDAGs  #CEGs/#EGs  #CDAGs/#DAGs\n"
      << std::setw(5) << n << "  " << std::setw(11) << five(rep.est_eg_dag) << "  " << std::setw(11)
      << five(rep.est_edag_eg) << "  " << std::setw(12) << five(rep.est_ceg_cdag) << "  " << std::setw(10)
      << five(rep.est_ceg_eg) << "  " << std::setw(12) << rep.exact_cdag_dag.render(5) << '\n'
      << "sample size        " << rep.sample_size << " (EDAGs " << rep.sample_edags << ", connected "
      << rep.sample_connected << ")\n"
      << "R                  " << rep.r << " (se " << rep.se_r << ")\n"
      << "R'                 " << rep.r_prime << (o.strict_connected ? " (connected EDAGs only)" : "") << '\n'
      << "se #EGs/#DAGs      " << rep.se_eg_dag << '\n'
      << "se #CEGs/#EGs      " << rep.se_ceg_eg << '\n'
      << "approx #EGs        " << rep.est_n_egs << '\n'
      << "approx #CEGs       " << rep.est_n_cegs << '\n'
      << "mean changed frac  " << rep.mean_changed_fraction << '\n';
  if (rep.low_count_warning) out << "warning: a numerator count is below 30; standard errors are unreliable\n";

  if (!o.json_path.empty()) {
    json doc = rep;
    json meta = {{"software_version", kVersion},
                 {"schema_version", kSchemaVersion},
                 {"steps", records.front().steps},
                 {"chains", records.size()},
                 {"seed", nullptr},
                 {"edag_source", provider.source()},
                 {"input", o.in_path}};
    std::ifstream manifest_in(manifest_path(o.in_path));
    if (manifest_in) {
      const auto manifest = json::parse(manifest_in, nullptr, false);
      if (!manifest.is_discarded() && manifest.contains("master_seed")) meta["seed"] = manifest["master_seed"];
      meta["manifest"] = manifest_path(o.in_path);
    }
    doc["metadata"] = std::move(meta);
    write_json_file(o.json_path, doc);
  }
  return kOk;
}

struct VerifyOptions {
  std::string suite;
  int nodes = 0;
  std::uint64_t steps = 2'000'000;
  std::uint64_t seed = 20130;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  SuiteResult result;
  if (o.suite == "oracle") {
    result = verify_oracle(o.nodes > 0 ? o.nodes : 5);
  } else if (o.suite == "wright") {
    result = verify_wright(o.nodes > 0 ? o.nodes : 31);
  } else if (o.suite == "kernel") {
    result = verify_kernel(o.nodes > 0 ? o.nodes : 4);
  } else {
    UniformityConfig cfg;
    if (o.nodes > 0) cfg.n = o.nodes;
    cfg.steps = o.steps;
    cfg.seed = o.seed;
    result = verify_uniformity(cfg);
  }
  print_suite(out, result);
  return result.passed() ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counts and MCMC estimates for DAGs and essential graphs", "egcount"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CountOptions count_opts;
  auto* count = app.add_subcommand("count", "Exact DAG / connected DAG / essential DAG counts");
  count->add_option("--nodes,-n", count_opts.nodes, "Node count N")->required()->check(CLI::Range(1, 64));
  count->add_option("--what", count_opts.what, "dags | cdags | edags | table")
      ->check(CLI::IsMember({"dags", "cdags", "edags", "table"}));
  count->add_option("--edag-table", count_opts.edag_table, "CSV of n,count for essential DAGs");
  count->add_option("--places", count_opts.places, "Decimal places for ratios")->check(CLI::Range(0, 50));
  count->add_flag("--csv", count_opts.csv, "CSV output for --what table");

  OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Brute-force census (N <= 5)");
  oracle->add_option("--nodes,-n", oracle_opts.nodes, "Node count N")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--json", oracle_opts.json_path, "Write the census as JSON");
  oracle->add_option("--threads", oracle_opts.threads, "Worker threads");

  SampleOptions sample_opts;
  auto* sample = app.add_subcommand("sample", "Run MCMC chains over essential graphs");
  sample->add_option("--nodes,-n", sample_opts.nodes, "Node count N")->required()->check(CLI::Range(1, 40));
  auto* chains_opt = sample->add_option("--chains", sample_opts.chains, "Number of chains")
                         ->check(CLI::PositiveNumber);
  auto* steps_opt = sample->add_option("--steps", sample_opts.steps, "Transitions per chain")
                        ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_opts.seed, "Master seed");
  sample->add_option("--out", sample_opts.out_path, "JSONL output (manifest written next to it)");
  sample->add_flag("--emit-graphs", sample_opts.emit_graphs, "Record terminal graphs (base64 canonical key)");
  sample->add_flag("--paper-preset", sample_opts.paper_preset,
                   "10^4 chains x 10^6 steps, doubled to 2x10^6 steps at N=31");
  sample->add_option("--threads", sample_opts.threads, "Worker threads");
  sample->add_flag("--dry-run", sample_opts.dry_run, "Print the resolved manifest without sampling");

  EstimateOptions estimate_opts;
  auto* est = app.add_subcommand("estimate", "Ratio estimates from a JSONL sample");
  est->add_option("--in", estimate_opts.in_path, "Sample JSONL")->required();
  est->add_option("--edag-table", estimate_opts.edag_table, "CSV of n,count for essential DAGs");
  est->add_option("--json", estimate_opts.json_path, "Write the report as JSON");
  est->add_flag("--strict-connected", estimate_opts.strict_connected,
                "Count only connected EDAGs in R' (sensitivity analysis)");

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", verify_opts.suite, "oracle | wright | kernel | uniformity")
      ->required()
      ->check(CLI::IsMember({"oracle", "wright", "kernel", "uniformity"}));
  verify->add_option("--nodes,-n", verify_opts.nodes, "Node count (suite default when omitted)");
  verify->add_option("--steps", verify_opts.steps, "Chain length for the uniformity suite");
  verify->add_option("--seed", verify_opts.seed, "Seed for the uniformity suite");

  std::vector<std::string> argv_storage{"egcount"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count) return cmd_count(count_opts, out);
    if (*oracle) return cmd_oracle(oracle_opts, out);
    if (*sample) {
      sample_opts.chains_set = chains_opt->count() > 0;
      sample_opts.steps_set = steps_opt->count() > 0;
      return cmd_sample(sample_opts, args, out, err);
    }
    if (*est) return cmd_estimate(estimate_opts, out, err);
    if (*verify) return cmd_verify(verify_opts, out);
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace egcount::cli
