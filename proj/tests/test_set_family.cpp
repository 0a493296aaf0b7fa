#include <doctest.h>

#include "support/generators.hpp"
#include "uidim/errors.hpp"
#include "uidim/set_family.hpp"

using namespace uidim;

namespace {

GroundPtr abc() { return std::make_shared<const GroundSet>(std::vector<std::string>{"a", "b", "c"}); }

SetFamily fam(const GroundPtr& g, std::vector<std::vector<std::string>> sets) { return make_family(g, sets); }

}  // namespace

TEST_CASE("ground set rejects duplicates and keeps order") {
  CHECK_THROWS_AS(GroundSet({"a", "b", "a"}), ValidationError);
  GroundSet g({"z", "y", "x"});
  CHECK(g.index_of("z") == 0u);
  CHECK(g.index_of("x") == 2u);
  CHECK_FALSE(g.index_of("w").has_value());
}

TEST_CASE("make_family collapses duplicates and computes the profile") {
  auto g = abc();
  auto f = fam(g, {{"a"}, {"a"}, {"b"}});
  CHECK(f.size() == 2);
  CHECK(f.profile() == std::map<std::size_t, std::size_t>{{1, 2}});

  auto single = std::make_shared<const GroundSet>(std::vector<std::string>{"a"});
  auto empty = fam(single, {});
  CHECK(empty.empty());
  CHECK(empty.profile().empty());

  auto ab = std::make_shared<const GroundSet>(std::vector<std::string>{"a", "b"});
  auto f3 = fam(ab, {{"a"}, {"a", "b"}, {}});
  CHECK(f3.size() == 3);
  CHECK(f3.profile() == std::map<std::size_t, std::size_t>{{0, 1}, {1, 1}, {2, 1}});
}

TEST_CASE("make_family names the element outside the ground") {
  auto g = abc();
  try {
    (void)fam(g, {{"a", "q"}});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("\"q\"") != std::string::npos);
  }
  CHECK_THROWS_AS(make_family(g, std::vector<Subset>{Subset(4)}), ValidationError);
}

TEST_CASE("is_d_bounded evaluates (j+1)^(d-1) per cardinality") {
  auto g = abc();
  auto singles = fam(g, {{"a"}, {"b"}, {"c"}});
  CHECK_FALSE(is_d_bounded(singles, 2));
  CHECK(is_d_bounded(singles, 3));
  auto chain = fam(g, {{}, {"a"}, {"a", "b"}, {"a", "b", "c"}});
  CHECK(is_d_bounded(chain, 1));
  CHECK_THROWS_AS(is_d_bounded(chain, 0), PreconditionError);
}

TEST_CASE("min_boundedness reports the smallest d and a witness cardinality") {
  auto g = abc();
  auto r = min_boundedness(fam(g, {{"a"}, {"b"}, {"c"}}));
  CHECK(r.min_d == 3);
  CHECK(r.violating_j == 1u);
  CHECK(r.per_j.at(1).count == 3);
  CHECK(r.per_j.at(1).ceiling == 4);

  auto g5 = GroundSet::indexed(5);
  std::vector<Subset> chain;
  for (std::size_t k = 1; k <= 5; ++k) chain.push_back(Subset::range(5, 0, k));
  auto rc = min_boundedness(make_family(g5, chain));
  CHECK(rc.min_d == 1);
  CHECK_FALSE(rc.violating_j.has_value());

  CHECK(min_boundedness(fam(g, {})).min_d == 1);
}

TEST_CASE("restrict and subtract") {
  auto g = abc();
  auto r = restrict(fam(g, {{"a", "b"}, {"b", "c"}}), g->subset({"b"}));
  CHECK(r.size() == 1);
  CHECK(r.sets()[0] == g->subset({"b"}));
  auto id = fam(g, {{"a"}, {"b"}});
  CHECK(restrict(id, g->subset({"a", "b"})).sets() == id.sets());
  auto none = restrict(id, Subset(3));
  CHECK(none.size() == 1);
  CHECK(none.sets()[0].empty());

  auto s1 = subtract(fam(g, {{"a", "b"}}), g->subset({"a"}));
  CHECK(s1.sets() == std::vector<Subset>{g->subset({"b"})});
  auto s2 = subtract(fam(g, {{"a"}}), g->subset({"a"}));
  CHECK(s2.sets() == std::vector<Subset>{Subset(3)});
  CHECK(subtract(id, g->subset({"c"})).sets() == id.sets());
}

TEST_CASE("is_chain") {
  auto g = abc();
  CHECK(is_chain(fam(g, {{"a"}, {"a", "b"}, {"a", "b", "c"}})));
  CHECK_FALSE(is_chain(fam(g, {{"a"}, {"b"}})));
  CHECK(is_chain(fam(g, {})));
  CHECK(is_chain(fam(g, {{"a"}})));
}

TEST_CASE("restriction properties on random families") {
  auto rng = make_stream(11, 0);
  for (int iter = 0; iter < 300; ++iter) {
    const auto m = gen::uniform_int(rng, 1, 12);
    auto g = GroundSet::indexed(m);
    auto f = gen::random_family(rng, g, 10);
    CHECK(restrict(f, Subset::full(m)).sets() == f.sets());
    const auto h1 = gen::random_subset(rng, m), h2 = gen::random_subset(rng, m);
    CHECK(restrict(restrict(f, h1), h2).sets() == restrict(f, h1 & h2).sets());

    // Profile agrees with a recount.
    std::map<std::size_t, std::size_t> recount;
    for (const auto& s : f.sets()) ++recount[s.count()];
    CHECK(recount == f.profile());

    const auto d = min_boundedness(f).min_d;
    CHECK(is_d_bounded(f, d));
    CHECK(is_d_bounded(f, d + 1));
    if (d > 1) CHECK_FALSE(is_d_bounded(f, d - 1));
    std::size_t linear = 1;
    while (!is_d_bounded(f, linear)) ++linear;
    CHECK(linear == d);
  }
}

TEST_CASE("chains stay 1-bounded under every restriction") {
  auto rng = make_stream(12, 0);
  for (int iter = 0; iter < 40; ++iter) {
    const auto m = gen::uniform_int(rng, 1, 12);
    auto g = GroundSet::indexed(m);
    auto f = make_family(g, gen::random_chain_sets(rng, m, m + 1));
    REQUIRE(is_chain(f));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask)
      REQUIRE(is_d_bounded(restrict(f, Subset::from_mask(m, mask)), 1));
  }
}

TEST_CASE("subsets beyond one machine word") {
  Subset a(130), b(130);
  a.set(0);
  a.set(129);
  b.set(129);
  CHECK(b < a);
  CHECK(b.is_strict_subset_of(a));
  CHECK((a - b).indices() == std::vector<std::size_t>{0});
  CHECK(a.intersection_count(b) == 1);
  CHECK(Subset::range(130, 60, 70).count() == 10);
}
