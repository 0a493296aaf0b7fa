#pragma once

#include <cstddef>

#include "uidim/rules.hpp"
#include "uidim/set_family.hpp"

namespace uidim {

/// Points p1..pn at (i, n+1-i): a diagonal antichain in the plane. The
/// family is every nonempty intersection of the points with an upper-right
/// quarter-plane {x > a, y > b}, swept over thresholds between coordinates.
/// Each such set is a contiguous run p_lo..p_hi.
SetFamily quarterplane_family(std::size_t n);

/// Grid of `rows` x `cols` points named r<row>c<col>. Members are the
/// intersections with horizontal half-lines {(x, y0) : x > x0}: every row
/// suffix, plus the empty set. With cols = 1 the points sit on a diagonal and
/// the family is the empty set plus all singletons.
SetFamily halfline_family(std::size_t rows, std::size_t cols);

/// Union of the two axis chains on the diagonal antichain of n points:
/// {x > px} (suffixes, including the empty and full set) and {y > py}
/// (prefixes, likewise).
FamilyExpr two_axis_union(std::size_t n);

/// Intersection of the same two chains, with no cardinality bound.
/// Evaluating its bound raises InapplicableRuleError.
FamilyExpr two_axis_intersection(std::size_t n);

}  // namespace uidim
