#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uidim/dimension.hpp"
#include "uidim/set_family.hpp"

namespace uidim {

class FamilyExpr;

/// Support ordered by containment: each set strictly contains the previous.
struct ChainLeaf {
  std::vector<Subset> sets;
};

/// Support with a single, fixed set.
struct DeterministicLeaf {
  Subset set;
};

/// Arbitrary finite support with an optional caller-supplied dimension.
struct ExplicitLeaf {
  SetFamily family;
  std::optional<std::size_t> declared_dim;
};

struct UnionNode {
  std::vector<FamilyExpr> children;
};

/// Intersection of the children. When `bounded` is set, every member of that
/// child's support must have cardinality < k.
struct IntersectNode {
  std::vector<FamilyExpr> children;
  std::optional<std::size_t> bounded;
  std::size_t k = 0;
};

/// Expression tree describing the support of a composite random set.
class FamilyExpr {
 public:
  using Node = std::variant<ChainLeaf, DeterministicLeaf, ExplicitLeaf, UnionNode, IntersectNode>;

  /// Throws ValidationError unless the sets are strictly nested in order.
  static FamilyExpr chain(GroundPtr ground, std::vector<Subset> sets);
  static FamilyExpr deterministic(GroundPtr ground, Subset set);
  static FamilyExpr explicit_family(SetFamily family, std::optional<std::size_t> declared_dim = {});
  static FamilyExpr union_of(std::vector<FamilyExpr> children);
  /// Throws ValidationError if `bounded` is out of range.
  static FamilyExpr intersect(std::vector<FamilyExpr> children,
                              std::optional<std::size_t> bounded = {}, std::size_t k = 0);

  const GroundPtr& ground() const noexcept { return ground_; }
  const Node& node() const noexcept { return node_; }

 private:
  FamilyExpr(GroundPtr ground, Node node) : ground_(std::move(ground)), node_(std::move(node)) {}

  GroundPtr ground_;
  Node node_;
};

/// Audit trail of a bound: which rule fired at each node and with what inputs.
struct BoundDerivation {
  std::string node;    // chain | det | explicit | union | intersect
  std::string rule;    // name of the rule applied
  std::string detail;  // the arithmetic, e.g. "ceil((0 + 1) * log2(5)) = 3"
  std::size_t bound = 0;
  std::vector<BoundDerivation> children;

  /// Rule arithmetic allows 0 for deterministic supports; a reported
  /// dimension is never below 1.
  std::size_t final_dimension() const noexcept { return bound < 1 ? 1 : bound; }
};

struct RuleOptions {
  ExactOptions exact;  // used for explicit leaves without a declared dimension
};

/// Upper bound on the UI dimension of the support described by `e`.
/// Throws InapplicableRuleError for an intersection of two or more
/// non-deterministic children with neither a bounded nor a deterministic child.
BoundDerivation eval_bound(const FamilyExpr& e, const RuleOptions& opts = {});

/// ceil(dims * log2(k)), computed exactly when k is a power of two.
std::size_t intersection_rule_bound(std::size_t dim_sum, std::size_t k);

struct ExpandOptions {
  /// Maximum number of combined sets produced at one node before dedup.
  std::size_t max_expansion = 1'000'000;
};

/// Support of the composite random set: all unions/intersections of one
/// member per child, deduplicated. Validates the bounded child's cardinality
/// promise. Throws InfeasibleError when a node would exceed the cap.
SetFamily expand(const FamilyExpr& e, const ExpandOptions& opts = {});

struct Verification {
  std::size_t exact = 1;
  std::size_t bound = 0;
  bool sound = false;
  BoundDerivation derivation;
};

/// Compares the rule bound with the exact UI dimension of the expansion.
Verification verify_bound(const FamilyExpr& e, const ExpandOptions& expand_opts = {},
                          const RuleOptions& rule_opts = {});

}  // namespace uidim
