#include <doctest.h>

#include <cmath>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "uidim/errors.hpp"
#include "uidim/rademacher.hpp"

using namespace uidim;

namespace {

SetFamily fam(std::vector<std::string> universe, std::vector<std::vector<std::string>> sets) {
  return make_family(std::make_shared<const GroundSet>(std::move(universe)), sets);
}

}  // namespace

TEST_CASE("exact rademacher small cases") {
  CHECK(rademacher_exact(fam({"a", "b", "c"}, {{"a", "b", "c"}})).value == 0.0);
  CHECK(rademacher_exact(fam({"a"}, {{}, {"a"}})).value == 0.5);
  CHECK(rademacher_exact(fam({"a", "b"}, {{"a"}, {"b"}})).value == 0.5);
  CHECK_THROWS_AS(rademacher_exact(fam({"a"}, {})), PreconditionError);

  RadOptions tight;
  tight.max_ground = 3;
  CHECK_THROWS_AS(rademacher_exact(make_family(GroundSet::indexed(4), std::vector<Subset>{Subset::full(4)}), tight),
                  InfeasibleError);
}

TEST_CASE("closed-form bounds") {
  CHECK(massart_bound(9, std::sqrt(2.0)) == doctest::Approx(2.9646076));
  CHECK(massart_bound(1, 5.0) == 0.0);
  CHECK(slice_bound(1, 3) == doctest::Approx(1.6651092));
  CHECK(slice_bound(10, 1) == 0.0);
  CHECK(vc_rad_bound(2, 100) == doctest::Approx(44.326168));
  CHECK(vc_rad_bound(7, 7) == doctest::Approx(7 * std::sqrt(2.0)));
  CHECK_THROWS_AS(vc_rad_bound(0, 5), std::domain_error);
  CHECK_THROWS_AS(vc_rad_bound(6, 5), std::domain_error);
}

TEST_CASE("exact value agrees with the explicit-vector oracle") {
  auto rng = make_stream(61, 0);
  for (int iter = 0; iter < 150; ++iter) {
    const auto m = gen::uniform_int(rng, 1, 9);
    auto f = gen::random_family(rng, GroundSet::indexed(m), 10);
    if (f.empty()) continue;
    const auto r = rademacher_exact(f);
    REQUIRE(r.value == doctest::Approx(oracle::rademacher(f)).epsilon(1e-12));
    CHECK(r.value <= r.massart + 1e-12);
    for (const auto& s : r.slices) {
      REQUIRE(s.value.has_value());
      CHECK(*s.value <= s.bound + 1e-12);
    }
  }
}

TEST_CASE("adding members never lowers the value") {
  auto rng = make_stream(62, 0);
  for (int iter = 0; iter < 60; ++iter) {
    const auto m = gen::uniform_int(rng, 2, 10);
    auto g = GroundSet::indexed(m);
    std::vector<Subset> sets{gen::random_subset(rng, m)};
    for (int k = 0; k < 4; ++k) sets.push_back(gen::random_subset(rng, m));
    const auto small = rademacher_exact(make_family(g, sets)).value;
    sets.push_back(gen::random_subset(rng, m));
    sets.push_back(Subset(m));
    const auto large = rademacher_exact(make_family(g, sets)).value;
    CHECK(large >= small - 1e-12);
    CHECK(large >= 0.0);
  }
}

TEST_CASE("monte carlo estimate") {
  auto rng = make_stream(63, 0);
  for (int iter = 0; iter < 20; ++iter) {
    const auto m = gen::uniform_int(rng, 3, 14);
    auto f = gen::random_family(rng, GroundSet::indexed(m), 12);
    if (f.empty()) continue;
    const auto exact = rademacher_exact(f);
    const auto mc = rademacher_mc(f, 20'000, 1234 + iter);
    REQUIRE(mc.std_error.has_value());
    CHECK(std::fabs(mc.value - exact.value) <= 4 * *mc.std_error + 1e-12);
  }

  const auto f = fam({"a", "b", "c"}, {{"a"}, {"b", "c"}});
  RadOptions four;
  four.threads = 4;
  const auto a = rademacher_mc(f, 5000, 9), b = rademacher_mc(f, 5000, 9, four);
  CHECK(a.value == b.value);
  CHECK(*a.std_error == *b.std_error);
  CHECK(a.method == RadReport::Method::monte_carlo);
}

TEST_CASE("slice csv") {
  const auto r = rademacher_exact(fam({"a", "b"}, {{"a"}, {"b"}, {"a", "b"}}));
  const auto csv = slices_csv(r);
  CHECK(csv.rfind("j,count,exact,bound\n", 0) == 0);
  CHECK(csv.find("\n1,2,") != std::string::npos);
  CHECK(csv.find("\n2,1,") != std::string::npos);
}
