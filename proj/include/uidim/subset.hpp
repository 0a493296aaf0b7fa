#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace uidim {

/// Subset of a ground set of fixed size, stored as a packed bitmask over
/// ground-set indices. Ordering compares the masks as unsigned integers
/// (element 0 is the least significant bit).
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static Subset from_indices(std::size_t universe, std::initializer_list<std::size_t> idx) {
    return from_indices(universe, std::span<const std::size_t>(idx.begin(), idx.size()));
  }
  static Subset from_indices(std::size_t universe, std::span<const std::size_t> idx);
  /// Requires universe <= 64.
  static Subset from_mask(std::size_t universe, std::uint64_t mask);
  static Subset full(std::size_t universe);
  /// Contiguous index range [first, last); empty when first >= last.
  static Subset range(std::size_t universe, std::size_t first, std::size_t last);

  std::size_t universe() const noexcept { return universe_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Low 64 bits; exact when universe <= 64.
  std::uint64_t mask() const noexcept { return words_.empty() ? 0 : words_[0]; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::vector<std::size_t> indices() const;

  Subset& operator&=(const Subset& o) noexcept;
  Subset& operator|=(const Subset& o) noexcept;
  /// Set difference.
  Subset& operator-=(const Subset& o) noexcept;

  friend Subset operator&(Subset a, const Subset& b) noexcept { return a &= b; }
  friend Subset operator|(Subset a, const Subset& b) noexcept { return a |= b; }
  friend Subset operator-(Subset a, const Subset& b) noexcept { return a -= b; }

  /// |*this ∩ o| without materializing the intersection.
  std::size_t intersection_count(const Subset& o) const noexcept;

  bool is_subset_of(const Subset& o) const noexcept;
  bool is_strict_subset_of(const Subset& o) const noexcept {
    return is_subset_of(o) && count() < o.count();
  }

  friend bool operator==(const Subset& a, const Subset& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace uidim

template <>
struct std::hash<uidim::Subset> {
  std::size_t operator()(const uidim::Subset& s) const noexcept { return s.hash(); }
};
