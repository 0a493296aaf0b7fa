#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uidim/rng.hpp"
#include "uidim/set_family.hpp"
#include "uidim/subset.hpp"

namespace uidim {

/// sqrt(t ln t). Throws std::domain_error for t < 1.
double sqln(double t);

struct FailureBound {
  double raw = 0;  // 2 exp(-2 q^2 / t), may exceed 1
  double probability() const noexcept { return raw > 1.0 ? 1.0 : raw; }
};

/// Hoeffding bound on P(|reds - p t| > q) for a fixed set of t elements.
FailureBound hoeffding_failure_bound(std::size_t t, double q);

/// Red elements of a Bernoulli(p) coloring. Element i is red iff the i-th
/// uniform01 draw of make_stream(seed, 0) is below p.
struct Coloring {
  Subset red;
  double p = 0.5;
  std::uint64_t seed = kDefaultSeed;

  std::size_t universe() const noexcept { return red.universe(); }
};

/// Throws PreconditionError unless 0 < p <= 1.
Coloring color_population(std::size_t universe, double p, std::uint64_t seed);
inline Coloring color_population(const GroundSet& ground, double p, std::uint64_t seed) {
  return color_population(ground.size(), p, seed);
}

inline double imbalance_of(std::size_t reds, std::size_t size, double p) {
  const double diff = static_cast<double>(reds) - p * static_cast<double>(size);
  return diff < 0 ? -diff : diff;
}

struct ImbalanceRecord {
  Subset set;
  std::size_t size = 0;
  std::size_t reds = 0;
  double imbalance = 0;  // |reds - p * size|
  std::optional<double> bound_value;
  bool exceeded = false;  // imbalance >= bound_value

  /// imbalance / bound_value; infinite when the threshold is 0.
  double ratio() const;
};

/// Member with |h| >= t_min of largest imbalance (first in bitmask order on
/// ties). With d supplied, bound_value = d * sqln(|h|).
/// Throws EmptySelectionError when no member has |h| >= t_min.
ImbalanceRecord worst_imbalance(const SetFamily& f, const Coloring& c, std::size_t t_min,
                                std::optional<double> d = std::nullopt);

/// Member with |h| >= t_min maximizing imbalance / (d * sqln(|h|)): the
/// adversary's best attempt to break the size-indexed threshold.
/// Requires t_min >= 2 so every threshold is positive.
ImbalanceRecord worst_violation(const SetFamily& f, const Coloring& c, std::size_t t_min, double d);

/// Adversaries over all contiguous runs of the coloring's elements, i.e. the
/// quarter-plane support on a diagonal antichain, in O(n) and pruned O(n^2)
/// time. Results agree with worst_imbalance / worst_violation applied to
/// quarterplane_family(n), without materializing its n(n+1)/2 members.
ImbalanceRecord worst_run_imbalance(const Coloring& c, std::size_t t_min);
ImbalanceRecord worst_run_violation(const Coloring& c, std::size_t t_min, double d);

struct TrialBatch {
  std::string kind;
  std::vector<std::pair<std::string, double>> params;
  std::size_t trials = 0;
  std::uint64_t master_seed = kDefaultSeed;
  std::vector<ImbalanceRecord> records;
  std::size_t failures = 0;
  double empirical_rate = 0;
  /// Rigorous bound clamped to [0, 1]; absent when no bound applies.
  std::optional<double> theoretical_bound;
  std::optional<double> raw_bound;
  /// The lemma's stated approximate form where it differs from the rigorous one.
  std::optional<double> stated_bound;
};

struct SimOptions {
  unsigned threads = 1;
};

/// Fixed set of t elements; a trial fails when its imbalance >= r sqln(t).
/// Bound 2 / t^(2 r^2). Trial i uses color_population(m, p, stream_seed(master_seed, i))
/// in every simulate_* function.
TrialBatch simulate_deterministic(std::size_t t, double p, double r, std::size_t trials,
                                  std::uint64_t master_seed, const SimOptions& opts = {});

/// A trial fails when some member with |h| >= t_min has imbalance >=
/// d sqln(|h|). Bound 4 / (t_min - 1) (stated form 4 / t_min). Throws
/// PreconditionError unless the family is d-bounded.
TrialBatch simulate_random_set(const SetFamily& f, double p, std::size_t d, std::size_t t_min,
                               std::size_t trials, std::uint64_t master_seed, const SimOptions& opts = {});

/// Quarter-plane support on n diagonal points; records the run maximizing
/// imbalance / sqln(t) per trial. No bound applies.
TrialBatch simulate_quarterplane(std::size_t n, double p, std::size_t t_min, std::size_t trials,
                                 std::uint64_t master_seed, const SimOptions& opts = {});

/// Tail of the union-bound cascade, sum_{j >= t_min} 4 / j^2 <= 4 / (t_min - 1),
/// clamped to 1. Requires t_min >= 2.
double random_set_failure_bound(std::size_t t_min);

}  // namespace uidim
