// uidim: command-line front end for UI-dimension analysis, rule-based
// bounds, sampling simulations and Rademacher complexity.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "uidim/dimension.hpp"
#include "uidim/errors.hpp"
#include "uidim/io.hpp"
#include "uidim/rademacher.hpp"
#include "uidim/rules.hpp"
#include "uidim/sampling.hpp"
#include "uidim/scenarios.hpp"
#include "uidim/set_family.hpp"

namespace {

using uidim::io::json;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kPrecondition = 3,
  kInfeasible = 4,
  kUnsound = 5,
};

struct RunConfig {
  std::string input;
  std::string out;
  std::string csv;
  std::string format = "text";
  std::uint64_t seed = uidim::kDefaultSeed;
  unsigned threads = 1;
  std::size_t max_ground = 20;
  std::size_t max_expansion = 1'000'000;

  // compose
  bool verify = false;

  // simulate
  std::string kind;
  std::size_t t = 1000;
  double p = 0.5;
  double r = 1.0;
  std::size_t d = 2;
  std::size_t t_min = 16;
  std::size_t trials = 10'000;
  std::size_t n = 0;

  // rademacher
  bool exact = false;
  std::size_t mc_samples = 0;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out, "Write the JSON report to this path");
  cmd->add_option("--format", cfg.format, "Standard output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1U, 256U));
  cmd->add_option("--max-ground", cfg.max_ground, "Largest ground set for exact enumeration");
}

// An empty csv means the subcommand has no tabular output.
void emit(const RunConfig& cfg, const json& report, const std::string& text, const std::string& csv = {}) {
  if (!cfg.out.empty()) uidim::io::write_file(cfg.out, report.dump(2) + "\n");
  if (cfg.format == "json")
    std::cout << report.dump(2) << "\n";
  else if (cfg.format == "csv")
    std::cout << csv;
  else
    std::cout << text;
}

std::string names(const uidim::GroundSet& g, const uidim::Subset& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : g.names_of(s)) {
    out += (first ? "" : ",") + n;
    first = false;
  }
  return out + "}";
}

int cmd_analyze(const RunConfig& cfg) {
  const auto family = uidim::io::parse_family(uidim::io::read_file(cfg.input));
  uidim::ExactOptions opts{cfg.max_ground, cfg.threads};
  const auto dims = uidim::analyze_dimensions(family, opts);
  const auto bounded = uidim::min_boundedness(family);
  const bool inequality = uidim::check_ui_vc_inequality(family, opts);
  const auto& g = *family.ground();

  json report;
  report["universe_size"] = family.universe();
  report["members"] = family.size();
  report["ui_dim"] = dims.ui_dim;
  report["ui_witness"] = uidim::io::subset_to_json(g, dims.ui_witness);
  report["vc_dim"] = dims.vc_dim;
  report["vc_witness"] = uidim::io::subset_to_json(g, dims.vc_witness);
  report["min_d"] = bounded.min_d;
  report["boundedness"] = uidim::io::boundedness_to_json(bounded);
  report["vc_upper_from_ui"] = uidim::vc_upper_bound_from_ui(dims.ui_dim);
  report["ui_vc_inequality"] = inequality;

  std::ostringstream os;
  os << "members:   " << family.size() << " over " << family.universe() << " elements\n"
     << "ui_dim:    " << dims.ui_dim << "  witness " << names(g, dims.ui_witness) << "\n"
     << "vc_dim:    " << dims.vc_dim << "  witness " << names(g, dims.vc_witness) << "\n"
     << "min_d:     " << bounded.min_d << "\n"
     << "ui->vc:    vc_dim <= " << uidim::vc_upper_bound_from_ui(dims.ui_dim)
     << (inequality ? "  (growth inequality holds)\n" : "  (growth inequality VIOLATED)\n");
  std::ostringstream csv;
  csv << "j,count,ceiling\n";
  for (const auto& [j, slice] : bounded.per_j) csv << j << ',' << slice.count << ',' << slice.ceiling << '\n';
  emit(cfg, report, os.str(), csv.str());
  return inequality ? kOk : kUnsound;
}

int cmd_compose(const RunConfig& cfg) {
  if (cfg.format == "csv") {
    std::cerr << "error: compose has no CSV output; use --format text or json\n";
    return kUsage;
  }
  const auto expr = uidim::io::parse_expr(uidim::io::read_file(cfg.input));
  uidim::RuleOptions rule_opts{{cfg.max_ground, cfg.threads}};
  uidim::ExpandOptions expand_opts{cfg.max_expansion};

  json report;
  std::ostringstream os;
  int code = kOk;
  if (cfg.verify) {
    const auto v = uidim::verify_bound(expr, expand_opts, rule_opts);
    report["bound"] = v.bound;
    report["final_dimension"] = v.derivation.final_dimension();
    report["derivation"] = uidim::io::derivation_to_json(v.derivation);
    report["verification"] = {{"exact", v.exact}, {"bound", v.bound}, {"sound", v.sound}};
    os << "bound:           " << v.bound << "\n"
       << "final dimension: " << v.derivation.final_dimension() << "\n"
       << "exact:           " << v.exact << "\n"
       << "sound:           " << (v.sound ? "yes" : "NO") << "\n";
    if (!v.sound) code = kUnsound;
  } else {
    const auto d = uidim::eval_bound(expr, rule_opts);
    report["bound"] = d.bound;
    report["final_dimension"] = d.final_dimension();
    report["derivation"] = uidim::io::derivation_to_json(d);
    os << "bound:           " << d.bound << "\n"
       << "final dimension: " << d.final_dimension() << "\n";
  }
  emit(cfg, report, os.str());
  return code;
}

int cmd_simulate(const RunConfig& cfg) {
  uidim::SimOptions opts{cfg.threads};
  uidim::TrialBatch batch;
  if (cfg.kind == "deterministic") {
    batch = uidim::simulate_deterministic(cfg.t, cfg.p, cfg.r, cfg.trials, cfg.seed, opts);
  } else if (cfg.kind == "random-set") {
    const auto family = cfg.input.empty()
                            ? uidim::expand(uidim::two_axis_union(cfg.n ? cfg.n : 200),
                                            uidim::ExpandOptions{cfg.max_expansion})
                            : uidim::io::parse_family(uidim::io::read_file(cfg.input));
    batch = uidim::simulate_random_set(family, cfg.p, cfg.d, cfg.t_min, cfg.trials, cfg.seed, opts);
  } else {
    batch = uidim::simulate_quarterplane(cfg.n ? cfg.n : 10'000, cfg.p, cfg.t_min, cfg.trials, cfg.seed, opts);
  }
  const auto summary = uidim::io::batch_summary(batch);
  if (!cfg.csv.empty()) uidim::io::write_file(cfg.csv, uidim::io::batch_csv(batch));

  std::ostringstream os;
  os << "kind:              " << batch.kind << "\n"
     << "trials:            " << batch.trials << "\n"
     << "failures:          " << batch.failures << "\n"
     << "empirical rate:    " << batch.empirical_rate << "\n";
  if (batch.theoretical_bound) os << "theoretical bound: " << *batch.theoretical_bound << "\n";
  if (batch.stated_bound) os << "stated bound:      " << *batch.stated_bound << "\n";
  os << "max imbalance:     " << summary["max_imbalance"].get<double>() << "\n"
     << "max ratio:         " << summary["max_ratio"].get<double>() << "\n";
  emit(cfg, summary, os.str(), uidim::io::batch_csv(batch));
  return kOk;
}

int cmd_rademacher(const RunConfig& cfg) {
  const auto family = uidim::io::parse_family(uidim::io::read_file(cfg.input));
  uidim::RadOptions opts;
  opts.threads = cfg.threads;
  if (cfg.max_ground != 20) opts.max_ground = cfg.max_ground;
  const auto report = cfg.mc_samples > 0 ? uidim::rademacher_mc(family, cfg.mc_samples, cfg.seed, opts)
                                         : uidim::rademacher_exact(family, opts);
  if (!cfg.csv.empty()) uidim::io::write_file(cfg.csv, uidim::slices_csv(report));

  std::ostringstream os;
  os << "m:        " << report.m << "\n"
     << "m*Rad:    " << report.value;
  if (report.std_error) os << "  (se " << *report.std_error << ")";
  os << "\nmassart:  " << report.massart << "\n";
  emit(cfg, uidim::io::rad_to_json(report), os.str(), uidim::slices_csv(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UI dimension of set families: exact computation, composition rules, "
               "sampling simulations and Rademacher complexity"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* analyze = app.add_subcommand("analyze", "Exact UI/VC dimension and boundedness of a family file");
  analyze->add_option("family", cfg.input, "Family JSON file")->required()->check(CLI::ExistingFile);
  add_common(analyze, cfg);

  auto* compose = app.add_subcommand("compose", "Rule-based UI dimension bound of an expression file");
  compose->add_option("expression", cfg.input, "Expression JSON file")->required()->check(CLI::ExistingFile);
  compose->add_flag("--verify", cfg.verify, "Expand the support and compare with the exact dimension");
  compose->add_option("--max-expansion", cfg.max_expansion, "Cap on combined sets per node");
  add_common(compose, cfg);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the sampling tail bounds");
  simulate->add_option("kind", cfg.kind, "deterministic | random-set | quarterplane")
      ->required()
      ->check(CLI::IsMember({"deterministic", "random-set", "quarterplane"}));
  simulate->add_option("--t", cfg.t, "Set size (deterministic)");
  simulate->add_option("--p", cfg.p, "Probability of red");
  simulate->add_option("--r", cfg.r, "Threshold multiplier r (deterministic)");
  simulate->add_option("--d", cfg.d, "Claimed boundedness d (random-set)");
  simulate->add_option("--t-min", cfg.t_min, "Smallest set size considered");
  simulate->add_option("--trials", cfg.trials, "Number of trials");
  simulate->add_option("--seed", cfg.seed, "Master seed");
  simulate->add_option("--n", cfg.n, "Scenario size (random-set default 200, quarterplane default 10000)");
  simulate->add_option("--family", cfg.input, "Family JSON file (random-set)")->check(CLI::ExistingFile);
  simulate->add_option("--csv", cfg.csv, "Write per-trial records as CSV");
  add_common(simulate, cfg);

  auto* rad = app.add_subcommand("rademacher", "Rademacher complexity of a family file");
  rad->add_option("family", cfg.input, "Family JSON file")->required()->check(CLI::ExistingFile);
  auto* exact_flag = rad->add_flag("--exact", cfg.exact, "Exact enumeration (default)");
  rad->add_option("--mc", cfg.mc_samples, "Monte Carlo estimate with this many samples")->excludes(exact_flag);
  rad->add_option("--seed", cfg.seed, "Seed for --mc");
  rad->add_option("--csv", cfg.csv, "Write per-cardinality slices as CSV");
  add_common(rad, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (compose->parsed()) return cmd_compose(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    return cmd_rademacher(cfg);
  } catch (const uidim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const uidim::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const uidim::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  }
}
