#include "uidim/rules.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "uidim/errors.hpp"

namespace uidim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_ground(const GroundPtr& a, const GroundPtr& b) {
  if (a == b) return;
  if (!a || !b || a->names() != b->names())
    throw ValidationError("expression children are defined over different universes");
}

GroundPtr common_ground(const std::vector<FamilyExpr>& children, const char* what) {
  if (children.empty()) throw ValidationError(std::string(what) + " node needs at least one child");
  for (const auto& c : children) require_same_ground(children.front().ground(), c.ground());
  return children.front().ground();
}

std::string join_bounds(const std::vector<BoundDerivation>& children) {
  std::ostringstream os;
  for (std::size_t i = 0; i < children.size(); ++i) os << (i ? " + " : "") << children[i].bound;
  return os.str();
}

}  // namespace

FamilyExpr FamilyExpr::chain(GroundPtr ground, std::vector<Subset> sets) {
  if (!ground) throw ValidationError("chain leaf requires a ground set");
  if (sets.empty()) throw ValidationError("chain leaf needs at least one set");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].universe() != ground->size())
      throw ValidationError("chain set over a universe of the wrong size");
    if (i > 0 && !sets[i - 1].is_strict_subset_of(sets[i]))
      throw ValidationError("chain sets must be strictly increasing under containment (set " +
                            std::to_string(i) + " does not strictly contain set " +
                            std::to_string(i - 1) + ")");
  }
  return FamilyExpr(std::move(ground), ChainLeaf{std::move(sets)});
}

FamilyExpr FamilyExpr::deterministic(GroundPtr ground, Subset set) {
  if (!ground) throw ValidationError("deterministic leaf requires a ground set");
  if (set.universe() != ground->size())
    throw ValidationError("deterministic set over a universe of the wrong size");
  return FamilyExpr(std::move(ground), DeterministicLeaf{std::move(set)});
}

FamilyExpr FamilyExpr::explicit_family(SetFamily family, std::optional<std::size_t> declared_dim) {
  if (family.empty()) throw ValidationError("explicit leaf needs a nonempty family");
  if (declared_dim && *declared_dim == 0)
    throw ValidationError("declared dimension must be a positive integer");
  auto ground = family.ground();
  return FamilyExpr(std::move(ground), ExplicitLeaf{std::move(family), declared_dim});
}

FamilyExpr FamilyExpr::union_of(std::vector<FamilyExpr> children) {
  auto ground = common_ground(children, "union");
  return FamilyExpr(std::move(ground), UnionNode{std::move(children)});
}

FamilyExpr FamilyExpr::intersect(std::vector<FamilyExpr> children, std::optional<std::size_t> bounded,
                                 std::size_t k) {
  auto ground = common_ground(children, "intersect");
  if (bounded) {
    if (*bounded >= children.size())
      throw ValidationError("bounded child index " + std::to_string(*bounded) + " out of range");
    if (k == 0) throw ValidationError("cardinality bound k must be at least 1");
  }
  return FamilyExpr(std::move(ground), IntersectNode{std::move(children), bounded, k});
}

std::size_t intersection_rule_bound(std::size_t dim_sum, std::size_t k) {
  if (k == 0) throw PreconditionError("cardinality bound k must be at least 1");
  if (dim_sum == 0 || k == 1) return 0;
  // ceil(S * log2 k) is the bit width of k^S - 1 when k^S fits in 64 bits.
  const auto power = saturating_pow(k, dim_sum);
  if (power != ~std::uint64_t{0}) return static_cast<std::size_t>(std::bit_width(power - 1));
  if (std::has_single_bit(k))
    return dim_sum * static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(k)));
  return static_cast<std::size_t>(
      std::ceil(static_cast<long double>(dim_sum) * std::log2(static_cast<long double>(k))));
}

BoundDerivation eval_bound(const FamilyExpr& e, const RuleOptions& opts) {
  return std::visit(
      Overloaded{
          [](const ChainLeaf&) {
            return BoundDerivation{"chain", "containment-order", "ordered by containment: 1", 1, {}};
          },
          [](const DeterministicLeaf&) {
            return BoundDerivation{"det", "deterministic", "single fixed set: 0", 0, {}};
          },
          [&](const ExplicitLeaf& leaf) {
            if (leaf.declared_dim) {
              return BoundDerivation{"explicit", "declared",
                                     "declared: " + std::to_string(*leaf.declared_dim),
                                     *leaf.declared_dim,
                                     {}};
            }
            const auto d = ui_dimension_exact(leaf.family, opts.exact).dim;
            return BoundDerivation{"explicit", "exact", "exact enumeration: " + std::to_string(d), d, {}};
          },
          [&](const UnionNode& node) {
            BoundDerivation out{"union", "union", "", 0, {}};
            for (const auto& c : node.children) {
              out.children.push_back(eval_bound(c, opts));
              out.bound += out.children.back().bound;
            }
            out.detail = join_bounds(out.children) + " = " + std::to_string(out.bound);
            return out;
          },
          [&](const IntersectNode& node) {
            BoundDerivation out{"intersect", "", "", 0, {}};
            std::size_t sum = 0;
            std::size_t positive = 0;
            for (const auto& c : node.children) {
              out.children.push_back(eval_bound(c, opts));
              sum += out.children.back().bound;
              if (out.children.back().bound > 0) ++positive;
            }

            auto apply_log_rule = [&](std::size_t k, std::size_t via) {
              out.rule = "intersection";
              out.bound = intersection_rule_bound(sum, k);
              out.detail = "ceil((" + join_bounds(out.children) + ") * log2(" + std::to_string(k) +
                           ")) = " + std::to_string(out.bound) + " [bounded child " +
                           std::to_string(via) + "]";
            };

            if (node.bounded) {
              apply_log_rule(node.k, *node.bounded);
              return out;
            }
            if (positive <= 1) {
              // All but at most one child has a single fixed set, so this is a
              // restriction of that child to a fixed set.
              out.rule = "single-set-intersection";
              out.bound = sum;
              out.detail = "restriction to a fixed set: " + std::to_string(out.bound);
              return out;
            }
            std::optional<std::size_t> det_child;
            std::size_t det_size = 0;
            for (std::size_t i = 0; i < node.children.size(); ++i) {
              if (const auto* det = std::get_if<DeterministicLeaf>(&node.children[i].node())) {
                const auto sz = det->set.count();
                if (!det_child || sz < det_size) {
                  det_child = i;
                  det_size = sz;
                }
              }
            }
            if (!det_child) {
              throw InapplicableRuleError(
                  "Intersection Rule inapplicable: no child carries a cardinality bound k and no "
                  "child is deterministic; intersections of two ordered-by-containment supports "
                  "(quarter-planes) already have unbounded UI dimension");
            }
            apply_log_rule(det_size + 1, *det_child);
            return out;
          },
      },
      e.node());
}

namespace {

template <class Combine>
SetFamily combine_children(const std::vector<FamilyExpr>& children, const GroundPtr& ground,
                           const ExpandOptions& opts, const char* what, Combine combine,
                           std::optional<std::size_t> bounded, std::size_t k) {
  std::vector<Subset> acc;
  for (std::size_t i = 0; i < children.size(); ++i) {
    auto child = expand(children[i], opts);
    if (bounded && *bounded == i) {
      for (const auto& s : child.sets()) {
        if (s.count() >= k)
          throw PreconditionError("bounded child " + std::to_string(i) + " has a member of cardinality " +
                                  std::to_string(s.count()) + ", not below k = " + std::to_string(k));
      }
    }
    if (i == 0) {
      acc = child.sets();
      continue;
    }
    const auto combos = static_cast<unsigned long long>(acc.size()) * child.size();
    if (combos > opts.max_expansion) {
      throw InfeasibleError(std::string("expansion cap exceeded at ") + what + " node: " +
                            std::to_string(acc.size()) + " accumulated sets x " +
                            std::to_string(child.size()) + " sets of child " + std::to_string(i) +
                            " = " + std::to_string(combos) + " combinations > cap " +
                            std::to_string(opts.max_expansion));
    }
    std::vector<Subset> next;
    next.reserve(static_cast<std::size_t>(combos));
    for (const auto& a : acc)
      for (const auto& b : child.sets()) next.push_back(combine(a, b));
    acc = make_family(ground, std::move(next)).sets();
  }
  return make_family(ground, std::move(acc));
}

}  // namespace

SetFamily expand(const FamilyExpr& e, const ExpandOptions& opts) {
  return std::visit(
      Overloaded{
          [&](const ChainLeaf& leaf) { return make_family(e.ground(), leaf.sets); },
          [&](const DeterministicLeaf& leaf) { return make_family(e.ground(), {leaf.set}); },
          [](const ExplicitLeaf& leaf) { return leaf.family; },
          [&](const UnionNode& node) {
            return combine_children(node.children, e.ground(), opts, "union",
                                    [](const Subset& a, const Subset& b) { return a | b; },
                                    std::nullopt, 0);
          },
          [&](const IntersectNode& node) {
            return combine_children(node.children, e.ground(), opts, "intersect",
                                    [](const Subset& a, const Subset& b) { return a & b; },
                                    node.bounded, node.k);
          },
      },
      e.node());
}

Verification verify_bound(const FamilyExpr& e, const ExpandOptions& expand_opts,
                          const RuleOptions& rule_opts) {
  Verification v;
  v.derivation = eval_bound(e, rule_opts);
  v.bound = v.derivation.bound;
  const auto support = expand(e, expand_opts);
  v.exact = ui_dimension_exact(support, rule_opts.exact).dim;
  v.sound = v.exact <= v.derivation.final_dimension();
  return v;
}

}  // namespace uidim
