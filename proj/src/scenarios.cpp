#include "uidim/scenarios.hpp"

#include <string>
#include <vector>

#include "uidim/errors.hpp"

namespace uidim {

namespace {

GroundPtr diagonal_ground(std::size_t n) { return GroundSet::indexed(n, "p"); }

// {x > a} over x = 1..n, for a = n, n-1, ..., 0: empty set up to the full set.
std::vector<Subset> suffix_chain(std::size_t n) {
  std::vector<Subset> out;
  for (std::size_t a = n + 1; a-- > 0;) out.push_back(Subset::range(n, a, n));
  return out;
}

// {y > b} with y = n+1-i, i.e. i < n+1-b: prefixes from empty to full.
std::vector<Subset> prefix_chain(std::size_t n) {
  std::vector<Subset> out;
  for (std::size_t len = 0; len <= n; ++len) out.push_back(Subset::range(n, 0, len));
  return out;
}

}  // namespace

SetFamily quarterplane_family(std::size_t n) {
  if (n == 0) throw PreconditionError("quarter-plane family needs n >= 1");
  auto ground = diagonal_ground(n);
  std::vector<Subset> sets;
  // Threshold a stands for x > a (a + 1/2 between grid coordinates); same for b.
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = 0; b <= n; ++b) {
      Subset s(n);
      for (std::size_t i = 1; i <= n; ++i) {
        const auto x = i;
        const auto y = n + 1 - i;
        if (x > a && y > b) s.set(i - 1);
      }
      if (!s.empty()) sets.push_back(std::move(s));
    }
  }
  return make_family(std::move(ground), std::move(sets));
}

SetFamily halfline_family(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw PreconditionError("half-line family needs a nonempty grid");
  std::vector<std::string> names;
  for (std::size_t r = 1; r <= rows; ++r)
    for (std::size_t c = 1; c <= cols; ++c) names.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
  auto ground = std::make_shared<const GroundSet>(std::move(names));
  const auto m = rows * cols;
  std::vector<Subset> sets{Subset(m)};
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t start = 0; start < cols; ++start)
      sets.push_back(Subset::range(m, r * cols + start, (r + 1) * cols));
  return make_family(std::move(ground), std::move(sets));
}

FamilyExpr two_axis_union(std::size_t n) {
  auto ground = diagonal_ground(n);
  return FamilyExpr::union_of({FamilyExpr::chain(ground, suffix_chain(n)),
                               FamilyExpr::chain(ground, prefix_chain(n))});
}

FamilyExpr two_axis_intersection(std::size_t n) {
  auto ground = diagonal_ground(n);
  return FamilyExpr::intersect({FamilyExpr::chain(ground, suffix_chain(n)),
                                FamilyExpr::chain(ground, prefix_chain(n))});
}

}  // namespace uidim
