#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uidim/subset.hpp"

namespace uidim {

/// Ordered finite universe of named elements. Index order is the order the
/// names were given in and fixes the bit layout of every Subset over it.
class GroundSet {
 public:
  /// Throws ValidationError on duplicate names.
  explicit GroundSet(std::vector<std::string> names);
  /// Elements named `<prefix>1 .. <prefix>n`.
  static std::shared_ptr<const GroundSet> indexed(std::size_t n, std::string_view prefix = "e");

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Throws ValidationError naming the first unknown element.
  Subset subset(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(const Subset& s) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

/// Deduplicated collection of subsets of one ground set. Members are kept in
/// ascending bitmask order, which is also the tie-break order used by every
/// "first maximizer" search in the library.
class SetFamily {
 public:
  SetFamily() = default;

  const GroundPtr& ground() const noexcept { return ground_; }
  std::size_t universe() const noexcept { return ground_ ? ground_->size() : 0; }
  const std::vector<Subset>& sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }
  /// Cardinality j -> number of members of cardinality j.
  const std::map<std::size_t, std::size_t>& profile() const noexcept { return profile_; }
  std::size_t count_of_cardinality(std::size_t j) const;
  std::size_t max_cardinality() const;
  /// Union of all members.
  Subset support_union() const;

  friend SetFamily make_family(GroundPtr ground, std::vector<Subset> sets);

 private:
  GroundPtr ground_;
  std::vector<Subset> sets_;
  std::map<std::size_t, std::size_t> profile_;
};

/// Collapses duplicates and computes the profile. Throws ValidationError when
/// a subset is over a universe of a different size.
SetFamily make_family(GroundPtr ground, std::vector<Subset> sets);
/// Name-based construction; throws ValidationError naming an unknown element.
SetFamily make_family(GroundPtr ground, const std::vector<std::vector<std::string>>& sets);

/// (j+1)^e, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

struct SliceCount {
  std::size_t count = 0;
  std::uint64_t ceiling = 0;  // (j+1)^(d-1) at the reported d
};

struct BoundednessReport {
  std::map<std::size_t, SliceCount> per_j;  // j >= 1 only
  std::size_t min_d = 1;
  /// Cardinality at which the family fails (min_d - 1)-boundedness.
  std::optional<std::size_t> violating_j;
};

/// True iff for every j >= 1 the family has at most (j+1)^(d-1) members of
/// cardinality j. Requires d >= 1.
bool is_d_bounded(const SetFamily& f, std::size_t d);

/// Smallest d >= 1 for which the family is d-bounded.
BoundednessReport min_boundedness(const SetFamily& f);
/// Same quantity from a bare cardinality profile.
std::size_t min_bounded_dimension(const std::map<std::size_t, std::size_t>& profile);

/// { h ∩ mask : h ∈ F }, deduplicated.
SetFamily restrict(const SetFamily& f, const Subset& mask);
/// { h \ mask : h ∈ F }, deduplicated.
SetFamily subtract(const SetFamily& f, const Subset& mask);
/// Members of cardinality exactly j.
SetFamily cardinality_slice(const SetFamily& f, std::size_t j);

/// True iff the members form a strictly increasing chain under containment.
bool is_chain(const SetFamily& f);

}  // namespace uidim
