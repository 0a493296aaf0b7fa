#include "uidim/dimension.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "uidim/detail/parallel.hpp"
#include "uidim/errors.hpp"

namespace uidim {

namespace {

// Ground sets beyond this size cannot be enumerated with 64-bit masks.
constexpr std::size_t kHardGroundLimit = 62;
// Dedup via a direct-indexed bitmap up to this many elements.
constexpr std::size_t kBitmapLimit = 24;

void require_feasible(const SetFamily& f, const ExactOptions& opts, const char* what) {
  const auto m = f.universe();
  if (m > opts.max_ground || m > kHardGroundLimit) {
    throw InfeasibleError(std::string("exact computation infeasible: ") + what + " over a ground of " +
                          std::to_string(m) + " elements exceeds the limit of " +
                          std::to_string(std::min(opts.max_ground, kHardGroundLimit)) +
                          "; use the rule engine for an upper bound");
  }
}

std::uint64_t full_mask(std::size_t m) {
  return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

std::vector<std::uint64_t> masks_of(const SetFamily& f) {
  std::vector<std::uint64_t> out;
  out.reserve(f.size());
  for (const auto& s : f.sets()) out.push_back(s.mask());
  return out;
}

// Scatter the low bits of `bits` into the positions set in `mask` (pdep).
std::uint64_t deposit(std::uint64_t bits, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t b = 1; mask != 0; b <<= 1) {
    const auto low = mask & (~mask + 1);
    if (bits & b) out |= low;
    mask &= mask - 1;
  }
  return out;
}

// Gather the bits of x at the positions set in mask into the low bits (pext).
std::uint64_t extract(std::uint64_t x, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t b = 1; mask != 0; b <<= 1) {
    const auto low = mask & (~mask + 1);
    if (x & low) out |= b;
    mask &= mask - 1;
  }
  return out;
}

// Counts distinct members of H ∩ h per cardinality.
class RestrictionCounter {
 public:
  explicit RestrictionCounter(std::size_t m) : m_(m), by_card_(m + 1, 0) {
    if (m <= kBitmapLimit) seen_.assign(((std::size_t{1} << m) + 63) / 64, 0);
  }

  // Fills by_card() and returns the number of distinct restrictions.
  std::size_t count(const std::vector<std::uint64_t>& members, std::uint64_t h) {
    std::fill(by_card_.begin(), by_card_.end(), 0);
    std::size_t distinct = 0;
    if (!seen_.empty()) {
      touched_.clear();
      for (auto f : members) {
        const auto r = f & h;
        auto& word = seen_[r >> 6];
        const auto bit = std::uint64_t{1} << (r & 63);
        if (word & bit) continue;
        word |= bit;
        touched_.push_back(r);
        ++by_card_[static_cast<std::size_t>(std::popcount(r))];
        ++distinct;
      }
      for (auto r : touched_) seen_[r >> 6] = 0;
    } else {
      touched_.clear();
      for (auto f : members) touched_.push_back(f & h);
      std::sort(touched_.begin(), touched_.end());
      touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
      for (auto r : touched_) ++by_card_[static_cast<std::size_t>(std::popcount(r))];
      distinct = touched_.size();
    }
    return distinct;
  }

  // Smallest d for which the last counted restriction is d-bounded.
  std::size_t min_d() const {
    std::size_t d = 1;
    for (std::size_t j = 1; j <= m_; ++j) {
      const auto c = by_card_[j];
      if (c < 2) continue;
      std::size_t dj = d;
      while (saturating_pow(j + 1, dj - 1) < c) ++dj;
      d = dj;
    }
    return d;
  }

 private:
  std::size_t m_;
  std::vector<std::size_t> by_card_;
  std::vector<std::uint64_t> seen_;
  std::vector<std::uint64_t> touched_;
};

struct ChunkBest {
  std::size_t dim = 0;
  std::uint64_t witness = 0;
};

}  // namespace

UiResult ui_dimension_exact(const SetFamily& f, const ExactOptions& opts) {
  require_feasible(f, opts, "UI dimension");
  const auto m = f.universe();
  const auto members = masks_of(f);
  std::uint64_t scope = full_mask(m);
  if (opts.prune_to_union) {
    scope = 0;
    for (auto s : members) scope |= s;
  }
  const auto k = static_cast<unsigned>(std::popcount(scope));
  const std::uint64_t total = std::uint64_t{1} << k;

  // Submasks of `scope` are visited in increasing order; chunk c covers the
  // compressed indices [c*total/chunks, (c+1)*total/chunks).
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 64));
  std::vector<ChunkBest> best(chunks);
  detail::parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    const auto first = total * c / chunks;
    const auto last = total * (c + 1) / chunks;
    RestrictionCounter counter(m);
    ChunkBest local;
    auto h = deposit(first, scope);
    for (auto i = first; i < last; ++i) {
      counter.count(members, h);
      const auto d = counter.min_d();
      if (d > local.dim) local = {d, h};
      h = (h - scope) & scope;
    }
    best[c] = local;
  });

  ChunkBest overall{1, 0};
  for (const auto& b : best)
    if (b.dim > overall.dim) overall = b;
  return {overall.dim, Subset::from_mask(m, overall.witness)};
}

VcResult vc_dimension_exact(const SetFamily& f, const ExactOptions& opts) {
  require_feasible(f, opts, "VC dimension");
  const auto m = f.universe();
  VcResult result{0, Subset(m)};
  if (f.empty()) return result;

  const auto members = masks_of(f);
  std::uint64_t scope = 0;
  for (auto s : members) scope |= s;
  const auto k = static_cast<std::size_t>(std::popcount(scope));

  std::vector<std::uint64_t> seen;
  for (std::size_t dim = 1; dim <= k; ++dim) {
    if (dim >= 63 || members.size() < (std::uint64_t{1} << dim)) break;
    const std::uint64_t patterns = std::uint64_t{1} << dim;
    seen.assign((patterns + 63) / 64, 0);
    bool found = false;
    // Gosper's hack over k-bit compressed indices with `dim` bits set.
    const std::uint64_t limit = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k);
    for (std::uint64_t c = (std::uint64_t{1} << dim) - 1; c < limit;) {
      const auto h = deposit(c, scope);
      std::fill(seen.begin(), seen.end(), 0);
      std::uint64_t distinct = 0;
      for (auto s : members) {
        const auto p = extract(s, h);
        auto& word = seen[p >> 6];
        const auto bit = std::uint64_t{1} << (p & 63);
        if (!(word & bit)) {
          word |= bit;
          ++distinct;
        }
      }
      if (distinct == patterns) {
        result = {dim, Subset::from_mask(m, h)};
        found = true;
        break;
      }
      const auto lowest = c & (~c + 1);
      const auto ripple = c + lowest;
      if (ripple == 0) break;
      c = (((ripple ^ c) >> 2) / lowest) | ripple;
    }
    // Shattering is inherited by subsets: no shattered set of size dim means
    // none of any larger size.
    if (!found) break;
  }
  return result;
}

DimensionReport analyze_dimensions(const SetFamily& f, const ExactOptions& opts) {
  auto ui = ui_dimension_exact(f, opts);
  auto vc = vc_dimension_exact(f, opts);
  return {ui.dim, std::move(ui.witness), vc.dim, std::move(vc.witness)};
}

bool check_ui_vc_inequality(const SetFamily& f, const ExactOptions& opts) {
  const auto d = ui_dimension_exact(f, opts).dim;
  const auto m = f.universe();
  std::vector<std::uint64_t> rhs(m + 1, 0);
  std::uint64_t acc = 0;
  for (std::size_t s = 0; s <= m; ++s) {
    const auto term = saturating_pow(s + 1, d - 1);
    acc = acc > ~std::uint64_t{0} - term ? ~std::uint64_t{0} : acc + term;
    rhs[s] = acc;
  }
  const auto members = masks_of(f);
  const std::uint64_t total = std::uint64_t{1} << m;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 64));
  std::vector<char> ok(chunks, 1);
  detail::parallel_chunks(chunks, opts.threads, [&](std::size_t c) {
    RestrictionCounter counter(m);
    for (auto h = total * c / chunks; h < total * (c + 1) / chunks; ++h) {
      if (counter.count(members, h) > rhs[static_cast<std::size_t>(std::popcount(h))]) {
        ok[c] = 0;
        return;
      }
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; });
}

std::size_t vc_upper_bound_from_ui(std::size_t d) {
  long double sum = 0;
  long double pow2 = 1;
  for (std::size_t dim = 0;; ++dim) {
    long double term = 1;
    for (std::size_t e = 1; e < d; ++e) term *= static_cast<long double>(dim + 1);
    sum += term;
    if (sum < pow2) return dim - 1;
    pow2 *= 2;
  }
}

std::size_t restriction_count(const SetFamily& f, const Subset& h) {
  std::vector<Subset> r;
  r.reserve(f.size());
  for (const auto& s : f.sets()) r.push_back(s & h);
  std::sort(r.begin(), r.end());
  return static_cast<std::size_t>(std::unique(r.begin(), r.end()) - r.begin());
}

}  // namespace uidim
