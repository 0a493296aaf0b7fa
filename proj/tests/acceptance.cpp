// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: uidim_acceptance --cli PATH [--only N]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "uidim/dimension.hpp"
#include "uidim/errors.hpp"
#include "uidim/io.hpp"
#include "uidim/rademacher.hpp"
#include "uidim/rules.hpp"
#include "uidim/sampling.hpp"
#include "uidim/scenarios.hpp"

using namespace uidim;

namespace {

// Pinned tolerances.
constexpr double kSigmas = 3.0;      // Monte Carlo slack on failure rates
constexpr double kRadSe = 4.0;       // Monte Carlo slack on Rademacher estimates
constexpr double kFloatEps = 1e-9;   // floating comparisons of closed forms
constexpr std::size_t kQuarterSeedsNeeded = 95;

std::string g_cli;

struct Outcome {
  bool pass = true;
  std::string note;
};

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

double mc_slack(double p, std::size_t trials) {
  return kSigmas * std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

// Every family of at most 6 distinct members over 5 elements, then 10^4
// random families over 10 elements. Shared by criteria 1 and 9.
void for_each_corpus_family(const std::function<void(const SetFamily&)>& fn) {
  auto g5 = GroundSet::indexed(5);
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int next) {
    std::vector<Subset> sets;
    for (int m : pick) sets.push_back(Subset::from_mask(5, static_cast<std::uint64_t>(m)));
    fn(make_family(g5, std::move(sets)));
    if (pick.size() == 6) return;
    for (int m = next; m < 32; ++m) {
      pick.push_back(m);
      rec(m + 1);
      pick.pop_back();
    }
  };
  rec(0);

  auto g10 = GroundSet::indexed(10);
  auto rng = make_stream(1001, 0);
  for (int i = 0; i < 10'000; ++i) fn(gen::random_family(rng, g10, 12));
}

Outcome chain_equivalence() {
  std::size_t families = 0, mismatches = 0, chains = 0;
  for_each_corpus_family([&](const SetFamily& f) {
    ++families;
    const bool chain = is_chain(f);
    chains += chain;
    if (chain != (ui_dimension_exact(f).dim <= 1)) ++mismatches;
  });
  return {mismatches == 0, std::to_string(families) + " families, " + std::to_string(chains) + " chains, " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome rule_soundness() {
  auto rng = make_stream(1002, 0);
  std::map<std::size_t, std::size_t> gaps;
  std::size_t unsound = 0;
  for (int i = 0; i < 200; ++i) {
    const auto m = gen::uniform_int(rng, 2, 12);
    const auto depth = gen::uniform_int(rng, 1, 3);
    const auto e = gen::feasible_expr(rng, GroundSet::indexed(m), depth);
    const auto v = verify_bound(e);
    if (!v.sound) ++unsound;
    else ++gaps[v.derivation.final_dimension() - v.exact];
  }
  std::ostringstream os;
  os << unsound << " unsound of 200; gap histogram";
  for (const auto& [gap, count] : gaps) os << " " << gap << ":" << count;
  return {unsound == 0, os.str()};
}

Outcome restriction_monotone() {
  auto rng = make_stream(1003, 0);
  std::size_t raised = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto m = gen::uniform_int(rng, 1, 12);
    const auto f = gen::random_family(rng, GroundSet::indexed(m), 16);
    const auto h = gen::random_subset(rng, m, uniform01(rng));
    if (ui_dimension_exact(restrict(f, h)).dim > ui_dimension_exact(f).dim) ++raised;
  }
  return {raised == 0, "1000 pairs, " + std::to_string(raised) + " increases"};
}

Outcome deterministic_tail() {
  constexpr std::size_t kTrials = 100'000;
  Outcome out;
  std::ostringstream os;
  std::uint64_t seed = 1004;
  for (std::size_t t : {100, 1000}) {
    for (double r : {1.0, 1.5}) {
      for (double p : {0.3, 0.5}) {
        const auto b = simulate_deterministic(t, p, r, kTrials, seed++);
        const double bound = *b.theoretical_bound;
        const double exact = oracle::binomial_two_sided_tail(t, p, r * sqln(static_cast<double>(t)));
        const bool under = b.empirical_rate <= bound + mc_slack(bound, kTrials);
        const bool matches = std::fabs(b.empirical_rate - exact) <= mc_slack(exact, kTrials);
        if (!under || !matches) out.pass = false;
        os << " [t=" << t << " r=" << r << " p=" << p << " rate=" << b.empirical_rate << " exact=" << exact
           << " bound=" << bound << (under && matches ? "" : " !") << "]";
      }
    }
  }
  out.note = os.str();
  return out;
}

Outcome random_set_tail() {
  constexpr std::size_t kTrials = 10'000;
  const auto f = expand(two_axis_union(200));
  Outcome out;
  std::ostringstream os;
  os << f.size() << " members;";
  for (std::size_t t_min : {16, 64}) {
    const auto b = simulate_random_set(f, 0.5, 2, t_min, kTrials, 1005 + t_min);
    const double stated = 4.0 / static_cast<double>(t_min);
    const bool ok = b.empirical_rate <= stated + mc_slack(stated, kTrials);
    if (!ok) out.pass = false;
    os << " [t_min=" << t_min << " rate=" << b.empirical_rate << " bound=" << stated << (ok ? "" : " !") << "]";
  }
  out.note = os.str();
  return out;
}

Outcome quarterplane_blowup() {
  Outcome out;
  std::ostringstream os;
  for (std::size_t n : {2, 4, 8, 16, 32}) {
    const auto got = min_boundedness(quarterplane_family(n)).min_d;
    if (got != 1 + ceil_log2(n)) {
      out.pass = false;
      os << " n=" << n << " min_d=" << got << " !";
    }
  }
  std::size_t above = 0;
  double lowest = 1e300;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto c = color_population(10'000, 0.5, stream_seed(1006, s));
    const double ratio = worst_run_violation(c, 2, 1.0).ratio();
    lowest = std::min(lowest, ratio);
    if (ratio > 1.0) ++above;
  }
  if (above < kQuarterSeedsNeeded) out.pass = false;
  os << " min_d matches for n=2..32; ratio > 1 in " << above << "/100 seeds (lowest " << lowest << ")";
  out.note = os.str();
  return out;
}

Outcome cascade() {
  std::size_t bad = 0, points = 0;
  for (std::size_t d = 1; d <= 6; ++d) {
    const double dd = static_cast<double>(d);
    for (std::size_t j = 2; j <= 10'000; ++j) {
      const double jj = static_cast<double>(j);
      // Compare logs: the left side underflows quickly.
      const double lhs = std::log(2.0) + (dd - 1) * std::log(jj + 1) - 2 * dd * dd * std::log(jj);
      const double rhs = std::log(4.0) - 2 * std::log(jj);
      ++points;
      if (lhs > rhs + kFloatEps) ++bad;
    }
  }
  // At j = 1 the left side is 2^d and the right side 4: neither is a probability.
  bool vacuous = true;
  for (std::size_t d = 2; d <= 6; ++d) {
    const double lhs = 2.0 * std::pow(2.0, static_cast<double>(d) - 1);
    if (!(lhs > 1.0 && 4.0 > 1.0)) vacuous = false;
  }
  return {bad == 0 && vacuous,
          std::to_string(points) + " grid points, " + std::to_string(bad) + " violations; j=1 vacuous: " +
              (vacuous ? "yes" : "no")};
}

Outcome rademacher_checks() {
  auto rng = make_stream(1008, 0);
  std::size_t mc_bad = 0, massart_bad = 0, slice_bad = 0, slices = 0, families = 0;
  double worst_z = 0;
  while (families < 50) {
    const auto m = gen::uniform_int(rng, 2, 12);
    const auto f = gen::random_family(rng, GroundSet::indexed(m), 24);
    if (f.empty()) continue;
    ++families;
    const auto exact = rademacher_exact(f);
    const auto mc = rademacher_mc(f, 100'000, stream_seed(1008, families));
    const double diff = std::fabs(mc.value - exact.value);
    const double se = *mc.std_error;
    if (diff > kRadSe * se + kFloatEps) ++mc_bad;
    if (se > 0) worst_z = std::max(worst_z, diff / se);
    if (exact.value > exact.massart + kFloatEps) ++massart_bad;
    for (const auto& s : exact.slices) {
      ++slices;
      if (*s.value > slice_bound(s.j, exact.slice_d) + kFloatEps) ++slice_bad;
    }
  }
  std::ostringstream os;
  os << "50 families; mc outside 4 SE: " << mc_bad << " (max z " << worst_z << "); massart violations: "
     << massart_bad << "; slice violations: " << slice_bad << " of " << slices;
  return {mc_bad == 0 && massart_bad == 0 && slice_bad == 0, os.str()};
}

Outcome growth_inequality() {
  std::size_t families = 0, failures = 0;
  for_each_corpus_family([&](const SetFamily& f) {
    ++families;
    if (!check_ui_vc_inequality(f)) ++failures;
  });
  bool halfline_ok = true;
  std::size_t previous = 0;
  std::ostringstream os;
  for (std::size_t rows : {2, 4, 8, 16}) {
    const auto d = analyze_dimensions(halfline_family(rows, 1));
    if (d.vc_dim > 1 || d.ui_dim <= previous) halfline_ok = false;
    previous = d.ui_dim;
    os << " n=" << rows << ":ui" << d.ui_dim << "/vc" << d.vc_dim;
  }
  return {failures == 0 && halfline_ok,
          std::to_string(families) + " families, " + std::to_string(failures) + " failures; half-lines" + os.str()};
}

int run_cli(const std::string& args, std::string& out) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  out.clear();
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_determinism() {
  if (g_cli.empty()) return {false, "no --cli given"};
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "uidim_acceptance";
  fs::create_directories(dir);
  const auto fam = (dir / "family.json").string();
  auto rng = make_stream(1010, 0);
  io::write_file(fam, io::family_to_json(gen::random_family(rng, GroundSet::indexed(9), 12)).dump());

  const std::vector<std::string> commands = {
      "simulate deterministic --t 500 --trials 3000 --seed 11",
      "simulate random-set --n 120 --t-min 16 --trials 400 --seed 12",
      "simulate quarterplane --n 3000 --trials 40 --seed 13",
      "rademacher " + fam + " --mc 20000 --seed 14",
      "analyze " + fam,
  };
  std::size_t mismatches = 0, errors = 0;
  for (const auto& c : commands) {
    std::string reference;
    for (unsigned threads : {1U, 4U, 1U, 4U}) {
      const auto out_path = (dir / "out.json").string();
      std::string console;
      const int code = run_cli(c + " --threads " + std::to_string(threads) + " --out " + out_path, console);
      if (code != 0) {
        ++errors;
        continue;
      }
      const auto json = io::read_file(out_path);
      if (reference.empty())
        reference = json;
      else if (json != reference)
        ++mismatches;
    }
  }
  fs::remove_all(dir);
  return {mismatches == 0 && errors == 0, std::to_string(commands.size()) + " commands x threads {1,4} x 2 runs; " +
                                              std::to_string(mismatches) + " mismatches, " + std::to_string(errors) +
                                              " errors"};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) g_cli = argv[++i];
    else if (a == "--only" && i + 1 < argc) only = std::stoi(argv[++i]);
  }

  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"chain <=> ui_dim <= 1", chain_equivalence},
      {"composition rule soundness", rule_soundness},
      {"restriction never raises ui_dim", restriction_monotone},
      {"fixed-set tail bound", deterministic_tail},
      {"random-set tail bound", random_set_tail},
      {"quarter-plane blowup", quarterplane_blowup},
      {"union-bound cascade", cascade},
      {"rademacher estimates and bounds", rademacher_checks},
      {"ui/vc growth inequality", growth_inequality},
      {"cli determinism", cli_determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<std::size_t>(only) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%.1fs) -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                o.note.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
