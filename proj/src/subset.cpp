#include "uidim/subset.hpp"

#include <cassert>

namespace uidim {

Subset Subset::from_indices(std::size_t universe, std::span<const std::size_t> idx) {
  Subset s(universe);
  for (auto i : idx) {
    assert(i < universe);
    s.set(i);
  }
  return s;
}

Subset Subset::from_mask(std::size_t universe, std::uint64_t mask) {
  assert(universe <= 64);
  Subset s(universe);
  if (!s.words_.empty()) {
    s.words_[0] = universe == 64 ? mask : mask & ((std::uint64_t{1} << universe) - 1);
  }
  return s;
}

Subset Subset::full(std::size_t universe) { return range(universe, 0, universe); }

Subset Subset::range(std::size_t universe, std::size_t first, std::size_t last) {
  Subset s(universe);
  for (std::size_t i = first; i < last && i < universe; ++i) s.set(i);
  return s;
}

std::vector<std::size_t> Subset::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

Subset& Subset::operator&=(const Subset& o) noexcept {
  assert(universe_ == o.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Subset& Subset::operator|=(const Subset& o) noexcept {
  assert(universe_ == o.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Subset& Subset::operator-=(const Subset& o) noexcept {
  assert(universe_ == o.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

std::size_t Subset::intersection_count(const Subset& o) const noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
  return c;
}

bool Subset::is_subset_of(const Subset& o) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~o.words_[i]) != 0) return false;
  return true;
}

std::strong_ordering operator<=>(const Subset& a, const Subset& b) noexcept {
  if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t Subset::hash() const noexcept {
  // FNV-style mix over the words.
  std::uint64_t h = 1469598103934665603ULL ^ universe_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace uidim
