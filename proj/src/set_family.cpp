#include "uidim/set_family.hpp"

#include <algorithm>
#include <limits>

#include "uidim/errors.hpp"

namespace uidim {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw ValidationError("duplicate element in universe: \"" + names_[i] + "\"");
  }
}

std::shared_ptr<const GroundSet> GroundSet::indexed(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return std::make_shared<const GroundSet>(std::move(names));
}

std::optional<std::size_t> GroundSet::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Subset GroundSet::subset(const std::vector<std::string>& names) const {
  Subset s(size());
  for (const auto& n : names) {
    auto idx = index_of(n);
    if (!idx) throw ValidationError("element \"" + n + "\" is not in the universe");
    s.set(*idx);
  }
  return s;
}

std::vector<std::string> GroundSet::names_of(const Subset& s) const {
  std::vector<std::string> out;
  for (auto i : s.indices()) out.push_back(names_.at(i));
  return out;
}

std::size_t SetFamily::count_of_cardinality(std::size_t j) const {
  auto it = profile_.find(j);
  return it == profile_.end() ? 0 : it->second;
}

std::size_t SetFamily::max_cardinality() const {
  return profile_.empty() ? 0 : profile_.rbegin()->first;
}

Subset SetFamily::support_union() const {
  Subset u(universe());
  for (const auto& s : sets_) u |= s;
  return u;
}

SetFamily make_family(GroundPtr ground, std::vector<Subset> sets) {
  if (!ground) throw ValidationError("family requires a ground set");
  for (const auto& s : sets) {
    if (s.universe() != ground->size())
      throw ValidationError("subset over a universe of size " + std::to_string(s.universe()) +
                            ", expected " + std::to_string(ground->size()));
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  SetFamily f;
  f.ground_ = std::move(ground);
  f.sets_ = std::move(sets);
  for (const auto& s : f.sets_) ++f.profile_[s.count()];
  return f;
}

SetFamily make_family(GroundPtr ground, const std::vector<std::vector<std::string>>& sets) {
  if (!ground) throw ValidationError("family requires a ground set");
  std::vector<Subset> subsets;
  subsets.reserve(sets.size());
  for (const auto& names : sets) subsets.push_back(ground->subset(names));
  return make_family(std::move(ground), std::move(subsets));
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kMax / base) return kMax;
    r *= base;
  }
  return r;
}

namespace {

// Smallest d >= 1 with count <= (j+1)^(d-1).
std::size_t dimension_for_slice(std::size_t j, std::size_t count) {
  std::size_t d = 1;
  while (saturating_pow(j + 1, d - 1) < count) ++d;
  return d;
}

}  // namespace

bool is_d_bounded(const SetFamily& f, std::size_t d) {
  if (d == 0) throw PreconditionError("d-boundedness requires d >= 1");
  for (const auto& [j, count] : f.profile()) {
    if (j == 0) continue;
    if (count > saturating_pow(j + 1, d - 1)) return false;
  }
  return true;
}

std::size_t min_bounded_dimension(const std::map<std::size_t, std::size_t>& profile) {
  std::size_t d = 1;
  for (const auto& [j, count] : profile) {
    if (j == 0 || count < 2) continue;
    d = std::max(d, dimension_for_slice(j, count));
  }
  return d;
}

BoundednessReport min_boundedness(const SetFamily& f) {
  BoundednessReport report;
  for (const auto& [j, count] : f.profile()) {
    if (j == 0 || count < 2) continue;
    auto dj = dimension_for_slice(j, count);
    if (dj > report.min_d) {
      report.min_d = dj;
      report.violating_j = j;
    }
  }
  for (const auto& [j, count] : f.profile()) {
    if (j == 0) continue;
    report.per_j[j] = SliceCount{count, saturating_pow(j + 1, report.min_d - 1)};
  }
  return report;
}

SetFamily restrict(const SetFamily& f, const Subset& mask) {
  std::vector<Subset> out;
  out.reserve(f.size());
  for (const auto& s : f.sets()) out.push_back(s & mask);
  return make_family(f.ground(), std::move(out));
}

SetFamily subtract(const SetFamily& f, const Subset& mask) {
  std::vector<Subset> out;
  out.reserve(f.size());
  for (const auto& s : f.sets()) out.push_back(s - mask);
  return make_family(f.ground(), std::move(out));
}

SetFamily cardinality_slice(const SetFamily& f, std::size_t j) {
  std::vector<Subset> out;
  for (const auto& s : f.sets())
    if (s.count() == j) out.push_back(s);
  return make_family(f.ground(), std::move(out));
}

bool is_chain(const SetFamily& f) {
  std::vector<const Subset*> order;
  order.reserve(f.size());
  for (const auto& s : f.sets()) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(),
                   [](const Subset* a, const Subset* b) { return a->count() < b->count(); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!order[i - 1]->is_strict_subset_of(*order[i])) return false;
  }
  return true;
}

}  // namespace uidim
