#pragma once

#include <cstddef>
#include <cstdint>

#include "uidim/set_family.hpp"
#include "uidim/subset.hpp"

namespace uidim {

struct ExactOptions {
  /// Largest ground set accepted; enumeration visits up to 2^m subsets.
  std::size_t max_ground = 20;
  unsigned threads = 1;
  /// Enumerate only restrictions to subsets of the union of all members.
  /// Elements outside that union never change any H ∩ h', so the result and
  /// the first-maximizer witness are the same either way.
  bool prune_to_union = true;
};

struct UiResult {
  std::size_t dim = 1;
  Subset witness;
};

struct VcResult {
  std::size_t dim = 0;
  Subset witness;
};

struct DimensionReport {
  std::size_t ui_dim = 1;
  Subset ui_witness;
  std::size_t vc_dim = 0;
  Subset vc_witness;
};

/// Exact UI dimension: the max over all h' of the smallest d for which
/// H ∩ h' is d-bounded. The witness is the numerically smallest h' attaining
/// the max. Throws InfeasibleError when the ground exceeds opts.max_ground.
UiResult ui_dimension_exact(const SetFamily& f, const ExactOptions& opts = {});

/// Exact VC dimension with the numerically smallest shattered witness of that
/// size. The empty family has VC dimension 0 and an empty witness.
VcResult vc_dimension_exact(const SetFamily& f, const ExactOptions& opts = {});

DimensionReport analyze_dimensions(const SetFamily& f, const ExactOptions& opts = {});

/// Checks |H ∩ h'| <= sum_{j=0}^{|h'|} (j+1)^(d-1), d = UI dimension, for every
/// h' ⊆ ground. A false result means an implementation bug.
bool check_ui_vc_inequality(const SetFamily& f, const ExactOptions& opts = {});

/// Upper bound on the VC dimension implied by UI dimension d: one less than
/// the smallest D with sum_{j=0}^{D} (j+1)^(d-1) < 2^D.
std::size_t vc_upper_bound_from_ui(std::size_t d);

/// |H ∩ h'|: number of distinct restrictions of the members to h'.
std::size_t restriction_count(const SetFamily& f, const Subset& h);

}  // namespace uidim
