#include "uidim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uidim/detail/parallel.hpp"
#include "uidim/errors.hpp"

namespace uidim {

namespace {

constexpr std::size_t kTrialsPerChunk = 256;

void require_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw PreconditionError("p must lie in (0, 1], got " + std::to_string(p));
}

template <class Trial>
void run_trials(TrialBatch& batch, std::size_t trials, const SimOptions& opts, Trial trial) {
  if (trials == 0) throw PreconditionError("trials must be at least 1");
  batch.trials = trials;
  batch.records.assign(trials, ImbalanceRecord{});
  const auto chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  detail::parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    const auto last = std::min(trials, (c + 1) * kTrialsPerChunk);
    for (auto i = c * kTrialsPerChunk; i < last; ++i) batch.records[i] = trial(i);
  });
  batch.failures = static_cast<std::size_t>(
      std::count_if(batch.records.begin(), batch.records.end(), [](const auto& r) { return r.exceeded; }));
  batch.empirical_rate = static_cast<double>(batch.failures) / static_cast<double>(trials);
}

ImbalanceRecord make_record(Subset set, std::size_t reds, double p, std::optional<double> threshold) {
  ImbalanceRecord r;
  r.size = set.count();
  r.set = std::move(set);
  r.reds = reds;
  r.imbalance = imbalance_of(reds, r.size, p);
  r.bound_value = threshold;
  r.exceeded = threshold && r.imbalance >= *threshold;
  return r;
}

}  // namespace

double sqln(double t) {
  if (!(t >= 1.0)) throw std::domain_error("sqln requires t >= 1");
  return std::sqrt(t * std::log(t));
}

FailureBound hoeffding_failure_bound(std::size_t t, double q) {
  if (t == 0) throw PreconditionError("hoeffding bound requires t >= 1");
  if (q < 0) throw PreconditionError("hoeffding bound requires q >= 0");
  return {2.0 * std::exp(-2.0 * q * q / static_cast<double>(t))};
}

Coloring color_population(std::size_t universe, double p, std::uint64_t seed) {
  require_probability(p);
  Coloring c{Subset(universe), p, seed};
  auto rng = make_stream(seed, 0);
  for (std::size_t i = 0; i < universe; ++i)
    if (bernoulli(rng, p)) c.red.set(i);
  return c;
}

double ImbalanceRecord::ratio() const {
  if (!bound_value) return 0.0;
  if (*bound_value <= 0.0) return imbalance > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return imbalance / *bound_value;
}

ImbalanceRecord worst_imbalance(const SetFamily& f, const Coloring& c, std::size_t t_min,
                                std::optional<double> d) {
  const Subset* best = nullptr;
  std::size_t best_reds = 0;
  double best_imb = -1;
  for (const auto& h : f.sets()) {
    const auto t = h.count();
    if (t < t_min) continue;
    const auto reds = h.intersection_count(c.red);
    const auto imb = imbalance_of(reds, t, c.p);
    if (imb > best_imb) {
      best = &h;
      best_reds = reds;
      best_imb = imb;
    }
  }
  if (!best) throw EmptySelectionError("no member has cardinality >= " + std::to_string(t_min));
  std::optional<double> threshold;
  if (d) threshold = *d * sqln(static_cast<double>(std::max<std::size_t>(best->count(), 1)));
  return make_record(*best, best_reds, c.p, threshold);
}

ImbalanceRecord worst_violation(const SetFamily& f, const Coloring& c, std::size_t t_min, double d) {
  if (t_min < 2) throw PreconditionError("size-indexed thresholds need t_min >= 2");
  const Subset* best = nullptr;
  std::size_t best_reds = 0;
  double best_ratio = -1;
  for (const auto& h : f.sets()) {
    const auto t = h.count();
    if (t < t_min) continue;
    const auto reds = h.intersection_count(c.red);
    const auto ratio = imbalance_of(reds, t, c.p) / (d * sqln(static_cast<double>(t)));
    if (ratio > best_ratio) {
      best = &h;
      best_reds = reds;
      best_ratio = ratio;
    }
  }
  if (!best) throw EmptySelectionError("no member has cardinality >= " + std::to_string(t_min));
  return make_record(*best, best_reds, c.p, d * sqln(static_cast<double>(best->count())));
}

namespace {

std::vector<std::size_t> red_prefix(const Coloring& c) {
  const auto n = c.universe();
  std::vector<std::size_t> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (c.red.test(i) ? 1 : 0);
  return prefix;
}

}  // namespace

ImbalanceRecord worst_run_imbalance(const Coloring& c, std::size_t t_min) {
  const auto n = c.universe();
  const auto min_len = std::max<std::size_t>(t_min, 1);
  if (min_len > n) throw EmptySelectionError("no run has length >= " + std::to_string(t_min));
  const auto prefix = red_prefix(c);
  auto drift = [&](std::size_t k) { return static_cast<double>(prefix[k]) - c.p * static_cast<double>(k); };

  // Run [lo, hi) has imbalance |drift(hi) - drift(lo)|. Scan hi upward and keep
  // the latest argmax / argmin of drift over admissible lo; the smallest
  // bitmask among ties is the run with the smallest hi, then the largest lo.
  std::size_t lo_max = 0, lo_min = 0;
  std::size_t best_lo = 0, best_hi = 0;
  double best = -1;
  for (std::size_t hi = min_len; hi <= n; ++hi) {
    const auto cand = hi - min_len;
    if (cand == 0 || drift(cand) >= drift(lo_max)) lo_max = cand;
    if (cand == 0 || drift(cand) <= drift(lo_min)) lo_min = cand;
    for (auto lo : {std::max(lo_max, lo_min), std::min(lo_max, lo_min)}) {
      const auto imb = imbalance_of(prefix[hi] - prefix[lo], hi - lo, c.p);
      if (imb > best) {
        best = imb;
        best_lo = lo;
        best_hi = hi;
      }
    }
  }
  return make_record(Subset::range(n, best_lo, best_hi), prefix[best_hi] - prefix[best_lo], c.p,
                     std::nullopt);
}

ImbalanceRecord worst_run_violation(const Coloring& c, std::size_t t_min, double d) {
  if (t_min < 2) throw PreconditionError("size-indexed thresholds need t_min >= 2");
  const auto n = c.universe();
  if (t_min > n) throw EmptySelectionError("no run has length >= " + std::to_string(t_min));
  const auto prefix = red_prefix(c);

  // Every run's imbalance is at most the range of the drift walk, which
  // bounds the achievable ratio for long runs.
  double hi_drift = 0, lo_drift = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto v = static_cast<double>(prefix[k]) - c.p * static_cast<double>(k);
    hi_drift = std::max(hi_drift, v);
    lo_drift = std::min(lo_drift, v);
  }
  const double range = (hi_drift - lo_drift) * (1 + 1e-12) + 1e-9;
  const double heavier = std::max(c.p, 1.0 - c.p);

  double best_ratio = -1;
  std::size_t best_start = 0, best_len = t_min;
  for (std::size_t len = t_min; len <= n; ++len) {
    const auto threshold = d * sqln(static_cast<double>(len));
    if (range / threshold <= best_ratio) break;
    if (heavier * static_cast<double>(len) / threshold <= best_ratio) continue;
    for (std::size_t start = 0; start + len <= n; ++start) {
      const auto imb = imbalance_of(prefix[start + len] - prefix[start], len, c.p);
      const auto ratio = imb / threshold;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_start = start;
        best_len = len;
      }
    }
  }
  return make_record(Subset::range(n, best_start, best_start + best_len),
                     prefix[best_start + best_len] - prefix[best_start], c.p,
                     d * sqln(static_cast<double>(best_len)));
}

double random_set_failure_bound(std::size_t t_min) {
  if (t_min < 2) throw PreconditionError("tail bound needs t_min >= 2");
  return std::min(1.0, 4.0 / static_cast<double>(t_min - 1));
}

TrialBatch simulate_deterministic(std::size_t t, double p, double r, std::size_t trials,
                                  std::uint64_t master_seed, const SimOptions& opts) {
  if (t < 2) throw PreconditionError("deterministic simulation needs t >= 2");
  if (!(r >= 1.0)) throw PreconditionError("deterministic simulation needs r >= 1");
  require_probability(p);
  TrialBatch batch;
  batch.kind = "deterministic";
  batch.params = {{"t", static_cast<double>(t)}, {"p", p}, {"r", r}};
  batch.master_seed = master_seed;
  batch.raw_bound = 2.0 * std::pow(static_cast<double>(t), -2.0 * r * r);
  batch.theoretical_bound = std::min(1.0, *batch.raw_bound);
  const double threshold = r * sqln(static_cast<double>(t));
  const auto set = Subset::full(t);
  run_trials(batch, trials, opts, [&](std::size_t i) {
    const auto c = color_population(t, p, stream_seed(master_seed, i));
    return make_record(set, c.red.count(), p, threshold);
  });
  return batch;
}

TrialBatch simulate_random_set(const SetFamily& f, double p, std::size_t d, std::size_t t_min,
                               std::size_t trials, std::uint64_t master_seed, const SimOptions& opts) {
  require_probability(p);
  if (d == 0) throw PreconditionError("d must be at least 1");
  if (t_min < 2) throw PreconditionError("random-set simulation needs t_min >= 2");
  if (!is_d_bounded(f, d)) {
    const auto report = min_boundedness(f);
    throw PreconditionError("family is not " + std::to_string(d) + "-bounded (smallest d is " +
                            std::to_string(report.min_d) + ")");
  }
  std::vector<Subset> eligible;
  for (const auto& h : f.sets())
    if (h.count() >= t_min) eligible.push_back(h);
  if (eligible.empty()) throw EmptySelectionError("no member has cardinality >= " + std::to_string(t_min));
  const auto candidates = make_family(f.ground(), std::move(eligible));

  TrialBatch batch;
  batch.kind = "random-set";
  batch.params = {{"p", p}, {"d", static_cast<double>(d)}, {"t_min", static_cast<double>(t_min)},
                  {"members", static_cast<double>(f.size())}, {"m", static_cast<double>(f.universe())}};
  batch.master_seed = master_seed;
  batch.raw_bound = 4.0 / static_cast<double>(t_min - 1);
  batch.theoretical_bound = random_set_failure_bound(t_min);
  batch.stated_bound = std::min(1.0, 4.0 / static_cast<double>(t_min));
  const auto m = f.universe();
  run_trials(batch, trials, opts, [&](std::size_t i) {
    const auto c = color_population(m, p, stream_seed(master_seed, i));
    return worst_violation(candidates, c, t_min, static_cast<double>(d));
  });
  return batch;
}

TrialBatch simulate_quarterplane(std::size_t n, double p, std::size_t t_min, std::size_t trials,
                                 std::uint64_t master_seed, const SimOptions& opts) {
  require_probability(p);
  if (t_min < 2) throw PreconditionError("quarter-plane simulation needs t_min >= 2");
  if (n < t_min) throw PreconditionError("quarter-plane simulation needs n >= t_min");
  TrialBatch batch;
  batch.kind = "quarterplane";
  batch.params = {{"n", static_cast<double>(n)}, {"p", p}, {"t_min", static_cast<double>(t_min)}};
  batch.master_seed = master_seed;
  run_trials(batch, trials, opts, [&](std::size_t i) {
    const auto c = color_population(n, p, stream_seed(master_seed, i));
    return worst_run_violation(c, t_min, 1.0);
  });
  return batch;
}

}  // namespace uidim
