#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "uidim/dimension.hpp"
#include "uidim/rademacher.hpp"
#include "uidim/rules.hpp"
#include "uidim/sampling.hpp"
#include "uidim/set_family.hpp"

namespace uidim::io {

using json = nlohmann::ordered_json;

/// Parses {"universe": [names...], "sets": [[names...], ...]}. The order of
/// "universe" fixes element indices. Throws ParseError with line and column
/// on malformed JSON and ValidationError on unknown or duplicate elements.
SetFamily parse_family(std::string_view text);
SetFamily family_from_json(const json& j);
json family_to_json(const SetFamily& f);

/// Parses {"universe": [...], "expr": <node>} where <node> is one of
///   {"op":"chain","sets":[[...],...]}
///   {"op":"det","set":[...]}
///   {"op":"explicit","sets":[[...],...],"dim":2}      ("dim" optional)
///   {"op":"union","children":[<node>,...]}
///   {"op":"intersect","k":5,"bounded":0,"children":[<node>,...]}
///                                                      ("k"/"bounded" optional, together)
FamilyExpr parse_expr(std::string_view text);
FamilyExpr expr_from_json(const json& node, const GroundPtr& ground);
json expr_to_json(const FamilyExpr& e);
/// {"universe": [...], "expr": ...}
json expr_document(const FamilyExpr& e);

json subset_to_json(const GroundSet& g, const Subset& s);
json boundedness_to_json(const BoundednessReport& r);
json derivation_to_json(const BoundDerivation& d);
/// {trials, failures, empirical_rate, theoretical_bound, ...}
json batch_summary(const TrialBatch& b);
/// trial_index,chosen_set_size,reds,imbalance,threshold,exceeded
std::string batch_csv(const TrialBatch& b);
json rad_to_json(const RadReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace uidim::io
