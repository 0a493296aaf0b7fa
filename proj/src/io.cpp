#include "uidim/io.hpp"

#include <fstream>
#include <sstream>

#include "uidim/errors.hpp"

namespace uidim::io {

namespace {

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column position.
    std::size_t line = 1, col = 1;
    const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
}

const json& field(const json& obj, const char* key, const char* where) {
  if (!obj.is_object()) throw ParseError(std::string(where) + " must be a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + " is missing \"" + key + "\"");
  return *it;
}

std::vector<std::string> string_list(const json& j, const char* where) {
  if (!j.is_array()) throw ParseError(std::string(where) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ParseError(std::string(where) + " must contain only strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<Subset> subset_list(const json& j, const GroundSet& g, const char* where) {
  if (!j.is_array()) throw ParseError(std::string(where) + " must be an array of sets");
  std::vector<Subset> out;
  for (const auto& s : j) out.push_back(g.subset(string_list(s, where)));
  return out;
}

GroundPtr ground_from(const json& doc) {
  return std::make_shared<const GroundSet>(string_list(field(doc, "universe", "document"), "\"universe\""));
}

std::size_t unsigned_field(const json& j, const char* key) {
  const auto& v = field(j, key, "node");
  if (!v.is_number_unsigned()) throw ParseError(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

SetFamily family_from_json(const json& doc) {
  auto ground = ground_from(doc);
  auto sets = subset_list(field(doc, "sets", "document"), *ground, "\"sets\"");
  return make_family(std::move(ground), std::move(sets));
}

SetFamily parse_family(std::string_view text) { return family_from_json(parse_text(text)); }

json subset_to_json(const GroundSet& g, const Subset& s) { return g.names_of(s); }

json family_to_json(const SetFamily& f) {
  json doc;
  doc["universe"] = f.ground() ? f.ground()->names() : std::vector<std::string>{};
  doc["sets"] = json::array();
  for (const auto& s : f.sets()) doc["sets"].push_back(subset_to_json(*f.ground(), s));
  return doc;
}

FamilyExpr expr_from_json(const json& node, const GroundPtr& ground) {
  const auto& op_field = field(node, "op", "expression node");
  if (!op_field.is_string()) throw ParseError("\"op\" must be a string");
  const auto op = op_field.get<std::string>();
  if (op == "chain") return FamilyExpr::chain(ground, subset_list(field(node, "sets", "chain"), *ground, "\"sets\""));
  if (op == "det") return FamilyExpr::deterministic(ground, ground->subset(string_list(field(node, "set", "det"), "\"set\"")));
  if (op == "explicit") {
    auto family = make_family(ground, subset_list(field(node, "sets", "explicit"), *ground, "\"sets\""));
    std::optional<std::size_t> dim;
    if (node.contains("dim")) dim = unsigned_field(node, "dim");
    return FamilyExpr::explicit_family(std::move(family), dim);
  }
  if (op == "union" || op == "intersect") {
    const auto& kids = field(node, "children", op.c_str());
    if (!kids.is_array()) throw ParseError("\"children\" must be an array");
    std::vector<FamilyExpr> children;
    for (const auto& k : kids) children.push_back(expr_from_json(k, ground));
    if (op == "union") return FamilyExpr::union_of(std::move(children));
    const bool has_k = node.contains("k"), has_b = node.contains("bounded");
    if (has_k != has_b) throw ParseError("intersect needs both \"k\" and \"bounded\" or neither");
    if (has_k)
      return FamilyExpr::intersect(std::move(children), unsigned_field(node, "bounded"), unsigned_field(node, "k"));
    return FamilyExpr::intersect(std::move(children));
  }
  throw ParseError("unknown expression op \"" + op + "\"");
}

FamilyExpr parse_expr(std::string_view text) {
  const auto doc = parse_text(text);
  auto ground = ground_from(doc);
  return expr_from_json(field(doc, "expr", "document"), ground);
}

json expr_to_json(const FamilyExpr& e) {
  const auto& g = *e.ground();
  auto sets_json = [&](const std::vector<Subset>& sets) {
    json arr = json::array();
    for (const auto& s : sets) arr.push_back(subset_to_json(g, s));
    return arr;
  };
  return std::visit(
      [&](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        json out;
        if constexpr (std::is_same_v<T, ChainLeaf>) {
          out["op"] = "chain";
          out["sets"] = sets_json(n.sets);
        } else if constexpr (std::is_same_v<T, DeterministicLeaf>) {
          out["op"] = "det";
          out["set"] = subset_to_json(g, n.set);
        } else if constexpr (std::is_same_v<T, ExplicitLeaf>) {
          out["op"] = "explicit";
          out["sets"] = sets_json(n.family.sets());
          if (n.declared_dim) out["dim"] = *n.declared_dim;
        } else {
          out["op"] = std::is_same_v<T, UnionNode> ? "union" : "intersect";
          if constexpr (std::is_same_v<T, IntersectNode>) {
            if (n.bounded) {
              out["k"] = n.k;
              out["bounded"] = *n.bounded;
            }
          }
          out["children"] = json::array();
          for (const auto& c : n.children) out["children"].push_back(expr_to_json(c));
        }
        return out;
      },
      e.node());
}

json expr_document(const FamilyExpr& e) {
  json doc;
  doc["universe"] = e.ground()->names();
  doc["expr"] = expr_to_json(e);
  return doc;
}

json boundedness_to_json(const BoundednessReport& r) {
  json out;
  out["min_d"] = r.min_d;
  out["violating_j"] = r.violating_j ? json(*r.violating_j) : json(nullptr);
  json per_j = json::array();
  for (const auto& [j, s] : r.per_j) per_j.push_back({{"j", j}, {"count", s.count}, {"ceiling", s.ceiling}});
  out["per_j"] = std::move(per_j);
  return out;
}

json derivation_to_json(const BoundDerivation& d) {
  json out;
  out["node"] = d.node;
  out["rule"] = d.rule;
  out["bound"] = d.bound;
  out["detail"] = d.detail;
  if (!d.children.empty()) {
    out["children"] = json::array();
    for (const auto& c : d.children) out["children"].push_back(derivation_to_json(c));
  }
  return out;
}

json batch_summary(const TrialBatch& b) {
  json out;
  out["kind"] = b.kind;
  out["trials"] = b.trials;
  out["failures"] = b.failures;
  out["empirical_rate"] = b.empirical_rate;
  out["theoretical_bound"] = b.theoretical_bound ? json(*b.theoretical_bound) : json(nullptr);
  out["raw_bound"] = b.raw_bound ? json(*b.raw_bound) : json(nullptr);
  if (b.stated_bound) out["stated_bound"] = *b.stated_bound;
  out["seed"] = b.master_seed;
  json params = json::object();
  for (const auto& [k, v] : b.params) params[k] = v;
  out["params"] = std::move(params);

  double max_imb = 0, max_ratio = 0;
  std::size_t ratio_above_one = 0;
  for (const auto& r : b.records) {
    max_imb = std::max(max_imb, r.imbalance);
    max_ratio = std::max(max_ratio, r.ratio());
    if (r.ratio() > 1.0) ++ratio_above_one;
  }
  out["max_imbalance"] = max_imb;
  out["max_ratio"] = max_ratio;
  out["trials_ratio_above_one"] = ratio_above_one;
  return out;
}

std::string batch_csv(const TrialBatch& b) {
  std::ostringstream os;
  os.precision(17);
  os << "trial_index,chosen_set_size,reds,imbalance,threshold,exceeded\n";
  for (std::size_t i = 0; i < b.records.size(); ++i) {
    const auto& r = b.records[i];
    os << i << ',' << r.size << ',' << r.reds << ',' << r.imbalance << ',';
    if (r.bound_value) os << *r.bound_value;
    os << ',' << (r.exceeded ? 1 : 0) << '\n';
  }
  return os.str();
}

json rad_to_json(const RadReport& r) {
  json out;
  out["m"] = r.m;
  out["method"] = r.method == RadReport::Method::exact ? "exact" : "monte_carlo";
  out["value"] = r.value;
  if (r.samples) out["samples"] = *r.samples;
  if (r.seed) out["seed"] = *r.seed;
  if (r.std_error) out["std_error"] = *r.std_error;
  out["massart"] = r.massart;
  out["slice_d"] = r.slice_d;
  json slices = json::array();
  for (const auto& s : r.slices) {
    slices.push_back({{"j", s.j},
                      {"count", s.count},
                      {"exact", s.value ? json(*s.value) : json(nullptr)},
                      {"bound", s.bound}});
  }
  out["slices"] = std::move(slices);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open \"" + path + "\"");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write \"" + path + "\"");
  out << contents;
}

}  // namespace uidim::io
