#include "uidim/rademacher.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "uidim/detail/parallel.hpp"
#include "uidim/errors.hpp"
#include "uidim/rng.hpp"

namespace uidim {

namespace {

constexpr std::size_t kSamplesPerBlock = 1024;

void require_nonempty(const SetFamily& f) {
  if (f.empty()) throw PreconditionError("Rademacher complexity of an empty family is undefined");
}

// Exact E[max_h sum_{i in h} sigma_i] over all sign patterns of `scope`.
double exact_expected_sup(const std::vector<std::uint64_t>& members, unsigned threads) {
  std::uint64_t scope = 0;
  for (auto h : members) scope |= h;
  const auto k = static_cast<unsigned>(std::popcount(scope));
  const std::uint64_t total = std::uint64_t{1} << k;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 64));
  std::vector<std::int64_t> partial(chunks, 0);

  detail::parallel_chunks(chunks, threads, [&](std::size_t c) {
    const auto first = total * c / chunks;
    const auto last = total * (c + 1) / chunks;
    // Position the submask walk at compressed index `first`.
    std::uint64_t neg = 0;
    {
      std::uint64_t bits = first, mask = scope;
      for (std::uint64_t b = 1; mask != 0; b <<= 1) {
        const auto low = mask & (~mask + 1);
        if (bits & b) neg |= low;
        mask &= mask - 1;
      }
    }
    std::int64_t sum = 0;
    for (auto i = first; i < last; ++i) {
      // `neg` holds the elements with sigma = -1.
      std::int64_t best = std::numeric_limits<std::int64_t>::min();
      for (auto h : members) {
        const auto v = static_cast<std::int64_t>(std::popcount(h)) -
                       2 * static_cast<std::int64_t>(std::popcount(h & neg));
        best = std::max(best, v);
      }
      sum += best;
      neg = (neg - scope) & scope;
    }
    partial[c] = sum;
  });

  std::int64_t sum = 0;
  for (auto s : partial) sum += s;
  return static_cast<double>(sum) / static_cast<double>(total);
}

std::vector<std::uint64_t> masks_of(const SetFamily& f) {
  std::vector<std::uint64_t> out;
  for (const auto& s : f.sets()) out.push_back(s.mask());
  return out;
}

void fill_common(RadReport& r, const SetFamily& f) {
  r.m = f.universe();
  r.massart = massart_bound(f.size(), std::sqrt(static_cast<double>(f.max_cardinality())));
  r.slice_d = min_boundedness(f).min_d;
  for (const auto& [j, count] : f.profile()) {
    if (j == 0) continue;
    r.slices.push_back({j, count, std::nullopt, slice_bound(j, r.slice_d)});
  }
}

}  // namespace

RadReport rademacher_exact(const SetFamily& f, const RadOptions& opts) {
  require_nonempty(f);
  if (f.universe() > opts.max_ground || f.universe() > 62) {
    throw InfeasibleError("exact Rademacher computation infeasible: ground of " +
                          std::to_string(f.universe()) + " elements exceeds the limit of " +
                          std::to_string(std::min<std::size_t>(opts.max_ground, 62)));
  }
  RadReport r;
  r.method = RadReport::Method::exact;
  r.value = exact_expected_sup(masks_of(f), opts.threads);
  fill_common(r, f);
  if (opts.exact_slices) {
    for (auto& s : r.slices) s.value = exact_expected_sup(masks_of(cardinality_slice(f, s.j)), opts.threads);
  }
  return r;
}

RadReport rademacher_mc(const SetFamily& f, std::size_t samples, std::uint64_t seed, const RadOptions& opts) {
  require_nonempty(f);
  if (samples == 0) throw PreconditionError("Monte Carlo estimate needs at least one sample");
  const auto m = f.universe();
  const auto words = (m + 63) / 64;
  const std::uint64_t tail_mask = (m % 64) == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (m % 64)) - 1;

  const auto blocks = (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
  std::vector<std::int64_t> sums(blocks, 0), squares(blocks, 0);
  detail::parallel_chunks(blocks, opts.threads, [&](std::size_t b) {
    auto rng = make_stream(seed, b);
    std::vector<std::uint64_t> neg(words);
    const auto last = std::min(samples, (b + 1) * kSamplesPerBlock);
    std::int64_t sum = 0, sq = 0;
    for (auto s = b * kSamplesPerBlock; s < last; ++s) {
      for (std::size_t w = 0; w < words; ++w) neg[w] = rng();
      if (words > 0) neg[words - 1] &= tail_mask;
      std::int64_t best = std::numeric_limits<std::int64_t>::min();
      for (const auto& h : f.sets()) {
        const auto hw = h.words();
        std::int64_t v = 0;
        for (std::size_t w = 0; w < words; ++w)
          v += std::popcount(hw[w]) - 2 * std::popcount(hw[w] & neg[w]);
        best = std::max(best, v);
      }
      sum += best;
      sq += best * best;
    }
    sums[b] = sum;
    squares[b] = sq;
  });

  std::int64_t sum = 0, sq = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    sum += sums[b];
    sq += squares[b];
  }
  const auto n = static_cast<double>(samples);
  RadReport r;
  r.method = RadReport::Method::monte_carlo;
  r.samples = samples;
  r.seed = seed;
  r.value = static_cast<double>(sum) / n;
  double se = 0;
  if (samples > 1) {
    const double var = (static_cast<double>(sq) - static_cast<double>(sum) * r.value) / (n - 1);
    se = std::sqrt(std::max(0.0, var) / n);
  }
  r.std_error = se;
  fill_common(r, f);
  return r;
}

double massart_bound(std::size_t n_vectors, double norm) {
  if (n_vectors == 0) throw PreconditionError("Massart bound needs N >= 1");
  if (norm < 0) throw PreconditionError("Massart bound needs a non-negative norm");
  return norm * std::sqrt(2.0 * std::log(static_cast<double>(n_vectors)));
}

double slice_bound(std::size_t j, std::size_t d) {
  if (j == 0 || d == 0) throw PreconditionError("slice bound needs j >= 1 and d >= 1");
  const auto jd = static_cast<double>(j);
  return std::sqrt(2.0 * static_cast<double>(d - 1) * jd * std::log(jd + 1.0));
}

double vc_rad_bound(std::size_t vc_dim, std::size_t m) {
  if (vc_dim == 0 || vc_dim > m) throw std::domain_error("VC-based bound needs 1 <= D <= m");
  const auto dd = static_cast<double>(vc_dim);
  const auto mm = static_cast<double>(m);
  return std::sqrt(mm * 2.0 * dd * std::log(std::numbers::e * mm / dd));
}

std::string slices_csv(const RadReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "j,count,exact,bound\n";
  for (const auto& s : report.slices) {
    os << s.j << ',' << s.count << ',';
    if (s.value) os << *s.value;
    os << ',' << s.bound << '\n';
  }
  return os.str();
}

}  // namespace uidim
