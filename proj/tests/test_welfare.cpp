#include <doctest.h>

#include <random>

#include "coevo/welfare.hpp"

using namespace coevo;
using doctest::Approx;

namespace {
const ValidatedParams kEx = ValidatedParams::check(example_two_params());
}

TEST_CASE("welfare levels") {
  const auto& p = kEx.get();
  CHECK(sw_natives(p, {0.0, 0.4}, 0.0) == Approx(0.29).epsilon(1e-12));
  CHECK(sw_migrants(p, {0.0, 0.4}, 0.0) == Approx(0.015).epsilon(1e-12));

  auto empty = p;
  empty.natives = 0.0;
  CHECK(sw_natives(empty, {0.0, 0.4}, 0.0) == 0.0);
  CHECK(sw_migrants(empty, {0.0, 0.4}, 0.0) == 0.0);

  auto doubled = p;
  doubled.natives = 2.0;
  CHECK(sw_natives(doubled, {0.0, 0.4}, 0.0) == Approx(0.58));
}

TEST_CASE("example policy verdict") {
  const auto r = policy_verdict(kEx);
  CHECK(r.policy_needed);
  CHECK(r.allowance == Approx(263.0 / 2200.0).epsilon(1e-12));
  CHECK(r.cost_bound == Approx(9523.0 / 41800.0).epsilon(1e-12));
  CHECK(r.cost_condition_holds);
  CHECK(r.natives_better_off);
  CHECK(r.migrants_better_off);
  CHECK(r.verdict == "policy benefits natives and migrants");
  CHECK(r.sw_natives_baseline == Approx(0.29));
}

TEST_CASE("expensive assimilation fails the cost condition") {
  auto p = example_two_params();
  p.assimilation_cost = 0.24;
  const auto r = policy_verdict(ValidatedParams::check(p));
  CHECK(r.policy_needed);
  CHECK_FALSE(r.cost_condition_holds);
  CHECK_FALSE(r.natives_better_off);
  CHECK(r.migrants_better_off);
}

TEST_CASE("no policy needed when A* is not positive") {
  auto p = example_two_params();
  p.assimilation_cost = 0.05;  // below the cost floor 177/2200
  const auto r = policy_verdict(ValidatedParams::check(p));
  CHECK_FALSE(r.policy_needed);
  CHECK(r.verdict == "assimilation occurs without policy");
}

TEST_CASE("welfare comparison over random admissible parameters") {
  std::mt19937_64 rng(2024);
  int needed = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto vp = ValidatedParams::check(sample_admissible(rng));
    const auto r = policy_verdict(vp);
    if (!r.policy_needed) continue;
    ++needed;
    const double dn = r.sw_natives_policy - r.sw_natives_baseline;
    const double margin = r.cost_bound - vp->assimilation_cost;
    if (std::abs(margin) > 1e-12) CHECK((dn > 0.0) == (margin > 0.0));
    CHECK(r.sw_migrants_policy > r.sw_migrants_baseline);
  }
  CHECK(needed > 100);
}

TEST_CASE("bound decreases with the migrant ratio in the example") {
  auto p = example_two_params();
  const double b1 = native_gain_cost_bound(p, thresholds(ValidatedParams::check(p)));
  p.migrant_ratio = 0.2;
  const double b2 = native_gain_cost_bound(p, thresholds(ValidatedParams::unchecked(p)));
  CHECK(b2 < b1);
}
