#include <doctest.h>

#include <algorithm>
#include <random>

#include "coevo/equilibria.hpp"
#include "oracles.hpp"

using namespace coevo;
using doctest::Approx;

namespace {

const ValidatedParams kEx = ValidatedParams::check(example_two_params());

const SteadyState* find_label(const std::vector<SteadyState>& v, CaseLabel l) {
  for (const auto& s : v)
    if (s.label == l) return &s;
  return nullptr;
}

std::vector<const SteadyState*> interior_in_domain(const std::vector<SteadyState>& v) {
  std::vector<const SteadyState*> out;
  for (const auto& s : v)
    if ((s.label == CaseLabel::I1 || s.label == CaseLabel::I2) && s.in_domain) out.push_back(&s);
  return out;
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("example thresholds") {
  const Thresholds t = thresholds(kEx);
  CHECK(t.q_star == Approx(0.4).epsilon(1e-14));
  CHECK(close_rel(t.q_star2, 22.0 / 57.0, 1e-12));
  CHECK(close_rel(t.allowance_no_assim, 263.0 / 2200.0, 1e-12));
  CHECK(close_rel(t.allowance_full_assim, -86.0 / 1425.0, 1e-12));
  CHECK(close_rel(t.cost_floor, 177.0 / 2200.0, 1e-12));
  CHECK(t.q_star_interior);
  CHECK(t.q_star2_interior);
}

TEST_CASE("thresholds refuse invalid parameters") {
  auto bad = example_two_params();
  bad.skill_cost = 0.3;
  CHECK_THROWS_AS(thresholds(ValidatedParams::check(bad)), ValidationError);
}

TEST_CASE("closed-economy steady states") {
  const auto states = steady_states_closed(kEx);
  REQUIRE(states.size() == 3);
  CHECK(find_label(states, CaseLabel::closed_zero)->stability == Stability::unstable);
  CHECK(find_label(states, CaseLabel::closed_one)->stability == Stability::unstable);
  const auto* interior = find_label(states, CaseLabel::closed_interior);
  CHECK(interior->state.q == Approx(0.4).epsilon(1e-14));
  CHECK(interior->stability == Stability::stable);

  // Central-difference slope of the closed replicator rate at q*.
  const double h = 1e-6;
  const double fd = (rhs_closed(kEx.get(), 0.4 + h) - rhs_closed(kEx.get(), 0.4 - h)) / (2 * h);
  CHECK(fd < 0.0);
  CHECK(interior->eigenvalues.at(0).real() == Approx(fd).epsilon(1e-6));

  SUBCASE("interior share approaches one as c_HS approaches the wage gap") {
    auto p = example_two_params();
    p.skill_cost = p.skill_gap() + 1e-6;
    const double q = thresholds(ValidatedParams::check(p)).q_star;
    CHECK(q < 1.0);
    CHECK(q > 0.99999);
  }
}

TEST_CASE("example steady states at A = 0") {
  const auto states = steady_states_open(kEx);
  std::vector<State> stable;
  for (const auto& s : states)
    if (s.in_domain && s.stability == Stability::stable) stable.push_back(s.state);
  REQUIRE(stable.size() == 2);
  std::sort(stable.begin(), stable.end(), [](State a, State b) { return a.p < b.p; });
  CHECK(stable[0].p == 0.0);
  CHECK(stable[0].q == Approx(0.4).epsilon(1e-14));
  CHECK(stable[1].p == 1.0);
  CHECK(stable[1].q == Approx(22.0 / 57.0).epsilon(1e-14));

  for (auto l : {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D})
    CHECK(find_label(states, l)->stability == Stability::unstable);

  const auto inner = interior_in_domain(states);
  REQUIRE(inner.size() == 1);
  const auto& saddle = *inner.front();
  CHECK(saddle.state.p == Approx(0.6517306346348).epsilon(1e-10));
  CHECK(saddle.state.q == Approx(0.390444202666342).epsilon(1e-10));
  CHECK(saddle.stability == Stability::unstable);
  CHECK(saddle.eigenvalues[0].real() * saddle.eigenvalues[1].real() < 0.0);
  const Thresholds t = thresholds(kEx);
  CHECK(saddle.state.q >= t.q_star2);
  CHECK(saddle.state.q <= t.q_star);

  const auto newton = oracle::newton_interior(kEx.get(), {0.6, 0.4});
  REQUIRE(newton.has_value());
  CHECK(std::abs(newton->p - saddle.state.p) < 1e-8);
  CHECK(std::abs(newton->q - saddle.state.q) < 1e-8);
}

TEST_CASE("allowance above A* leaves only full assimilation") {
  const auto vp = kEx.with_allowance(0.15);
  const auto states = steady_states_open(vp);
  CHECK(find_label(states, CaseLabel::G)->stability == Stability::unstable);
  CHECK(find_label(states, CaseLabel::H)->stability == Stability::stable);
  CHECK(interior_in_domain(states).empty());
  CHECK(interior_quadratic(vp.get()).c > 0.0);
}

TEST_CASE("interior quadratic coefficients for the example") {
  const Quadratic q = interior_quadratic(kEx.get());
  CHECK(q.a == Approx(0.01155).epsilon(1e-12));
  CHECK(q.b == Approx(0.0841863636363636).epsilon(1e-12));
  CHECK(q.c == Approx(-0.0597727272727273).epsilon(1e-12));
}

TEST_CASE("stable quadratic solver") {
  SUBCASE("two roots") {
    const auto r = solve_quadratic({1.0, -3.0, 2.0});
    REQUIRE(r.count == 2);
    CHECK(r.roots[0] == Approx(1.0));
    CHECK(r.roots[1] == Approx(2.0));
  }
  SUBCASE("no cancellation for a tiny root") {
    // Roots 1e8 and 1e-8.
    const auto r = solve_quadratic({1.0, -(1e8 + 1e-8), 1.0});
    REQUIRE(r.count == 2);
    CHECK(r.roots[0] == Approx(1e-8).epsilon(1e-12));
    CHECK(r.roots[1] == Approx(1e8).epsilon(1e-12));
  }
  SUBCASE("double root") {
    const auto r = solve_quadratic({1.0, -2.0, 1.0});
    CHECK(r.count == 1);
    CHECK(r.roots[0] == Approx(1.0));
  }
  SUBCASE("no real roots") { CHECK(solve_quadratic({1.0, 0.0, 1.0}).count == 0); }
  SUBCASE("zero constant term") {
    const auto r = solve_quadratic({2.0, 4.0, 0.0});
    REQUIRE(r.count == 2);
    CHECK(r.roots[0] == Approx(-2.0));
    CHECK(r.roots[1] == 0.0);
  }
}

TEST_CASE("jacobian structure") {
  const auto& p = kEx.get();
  const Matrix2 j00 = jacobian(p, {0.0, 0.0});
  CHECK(j00[0][1] == 0.0);
  CHECK(j00[1][0] == 0.0);
  CHECK(j00[0][0] == Approx(assimilation_gain(p, {0.0, 0.0})));
  CHECK(j00[1][1] == Approx(skill_gain(p, {0.0, 0.0})));

  const double qs = thresholds(kEx).q_star;
  const Matrix2 jg = jacobian(p, {0.0, qs});
  CHECK(jg[0][1] == 0.0);
  const auto ev = eigenvalues(jg);
  const double lo = std::min(jg[0][0], jg[1][1]), hi = std::max(jg[0][0], jg[1][1]);
  CHECK(ev[0].real() == Approx(lo));
  CHECK(ev[1].real() == Approx(hi));
  CHECK(ev[0].imag() == 0.0);
  // Diagonal entries: h1(0, q*) = A - A*, q*(1 - q*)(beta * gap - c_HS).
  CHECK(jg[0][0] == Approx(-263.0 / 2200.0).epsilon(1e-12));
  CHECK(jg[1][1] == Approx(0.4 * 0.6 * (0.2 - 0.7)).epsilon(1e-12));

  CHECK_THROWS_AS(jacobian(p, {1.1, 0.5}), DomainError);
}

TEST_CASE("jacobian matches central differences") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    auto p = sample_admissible(rng);
    p.allowance = u(rng) * p.assimilation_cost;
    const State s{u(rng), u(rng)};
    const Matrix2 j = jacobian(p, s);
    const auto fd = oracle::central_jacobian(
        [&](double x, double y) { return oracle::field(p, x, y); }, s.p, s.q, 1e-6);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        CHECK(std::abs(j[r][c] - fd[r][c]) / std::max(std::abs(j[r][c]), 1e-4) < 1e-6);
  }
}

TEST_CASE("eigenvalues and classification") {
  CHECK(classify(std::vector<std::complex<double>>{{-1, 0}, {-2, 0}}) == Stability::stable);
  CHECK(classify(std::vector<std::complex<double>>{{-1, 0}, {0.5, 0}}) == Stability::unstable);
  CHECK(classify(std::vector<std::complex<double>>{{-1, 0}, {1e-14, 0}}, 1e-9) ==
        Stability::marginal);
  CHECK(classify(std::vector<std::complex<double>>{{-1, 3}, {-1, -3}}) == Stability::stable);

  const auto rot = eigenvalues(Matrix2{{{0.0, -1.0}, {1.0, 0.0}}});
  CHECK(rot[0].real() == 0.0);
  CHECK(std::abs(rot[0].imag()) == Approx(1.0));
  const auto ev = eigenvalues(Matrix2{{{2.0, 1.0}, {1.0, 2.0}}});
  CHECK(ev[0].real() == Approx(1.0));
  CHECK(ev[1].real() == Approx(3.0));
}

TEST_CASE("threshold ordering over random admissible parameters") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const auto vp = ValidatedParams::check(sample_admissible(rng));
    const Thresholds t = thresholds(vp);
    CHECK(t.allowance_full_assim < t.allowance_no_assim);
    CHECK(t.allowance_no_assim < vp->assimilation_cost);
    CHECK(t.q_star2 < t.q_star);
    CHECK(t.cost_floor > 0.0);
    CHECK(std::abs(t.cost_floor - (vp->assimilation_cost - t.allowance_no_assim)) < 1e-12);
    // q* - q** = q* q** beta/(1-beta) m/(1+m)
    const double b = vp->deprivation_weight, m = vp->migrant_ratio;
    CHECK(t.q_star - t.q_star2 ==
          Approx(t.q_star * t.q_star2 * b / (1 - b) * m / (1 + m)).epsilon(1e-9));
  }
}

TEST_CASE("interior quadratic: Vieta relations and sign pattern") {
  std::mt19937_64 rng(77);
  int checked_roots = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto base = sample_admissible(rng);
    const double a_star = thresholds(ValidatedParams::check(base)).allowance_no_assim;
    const double c_a = base.assimilation_cost;
    for (double a : {0.0, a_star / 2, a_star, (a_star + c_a) / 2}) {
      if (a < 0.0) continue;
      const auto p = base.with_allowance(a);
      const Quadratic quad = interior_quadratic(p);
      REQUIRE(quad.a > 0.0);
      const double scale = std::max({std::abs(quad.a), std::abs(quad.b), std::abs(quad.c)});
      if (a == a_star) CHECK(std::abs(quad.c) <= 1e-9 * scale);
      else if (a < a_star) CHECK(quad.c < 0.0);
      else CHECK(quad.c > 0.0);
      if (a >= a_star) CHECK(quad.b > 0.0);

      const auto r = solve_quadratic(quad);
      if (r.count == 2) {
        ++checked_roots;
        const double prod = r.roots[0] * r.roots[1], sum = r.roots[0] + r.roots[1];
        CHECK(std::abs(prod - quad.c / quad.a) <= 1e-9 * std::max(1.0, std::abs(quad.c / quad.a)));
        CHECK(std::abs(sum + quad.b / quad.a) <= 1e-9 * std::max(1.0, std::abs(quad.b / quad.a)));
      }
    }
  }
  CHECK(checked_roots > 1000);
}

TEST_CASE("steady-state structure over random admissible parameters") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bistable_checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto base = sample_admissible(rng);
    const Thresholds t0 = thresholds(ValidatedParams::check(base));
    const double a = u(rng) * base.assimilation_cost;
    const auto vp = ValidatedParams::check(base.with_allowance(a));
    const auto states = steady_states_open(vp);
    const auto t = thresholds(vp);

    for (auto l : {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D, CaseLabel::E,
                   CaseLabel::F})
      if (const auto* s = find_label(states, l)) CHECK(s->stability == Stability::unstable);

    // Stability of the candidate attractors follows the allowance thresholds.
    const auto* g = find_label(states, CaseLabel::G);
    const auto* h = find_label(states, CaseLabel::H);
    if (std::abs(a - t0.allowance_no_assim) > 1e-6)
      CHECK((g->stability == Stability::stable) == (a < t0.allowance_no_assim));
    if (std::abs(a - t0.allowance_full_assim) > 1e-6)
      CHECK((h->stability == Stability::stable) == (a > t0.allowance_full_assim));

    // At most one interior root in the square, none above A*, always a saddle,
    // and in the square exactly when its q lies between q** and q*.
    const auto inner = interior_in_domain(states);
    CHECK(inner.size() <= 1);
    if (a > t0.allowance_no_assim + 1e-9) CHECK(inner.empty());
    for (const auto& s : states) {
      if (s.label != CaseLabel::I1 && s.label != CaseLabel::I2) continue;
      const bool p_in = s.state.p >= -kDomainSlack && s.state.p <= 1 + kDomainSlack;
      const bool q_between = s.state.q >= t.q_star2 - 1e-12 && s.state.q <= t.q_star + 1e-12;
      CHECK(p_in == q_between);
      CHECK(s.in_domain == p_in);
      if (s.in_domain && s.state.p > 1e-6 && s.state.p < 1 - 1e-6)
        CHECK(s.stability == Stability::unstable);
    }

    // Bistability window.
    const double lo = std::max(0.0, t0.allowance_full_assim), hi = t0.allowance_no_assim;
    if (hi - lo > 1e-6) {
      const auto wp = ValidatedParams::check(base.with_allowance(lo + (0.05 + 0.9 * u(rng)) * (hi - lo)));
      const auto ws = steady_states_open(wp);
      CHECK(find_label(ws, CaseLabel::G)->stability == Stability::stable);
      CHECK(find_label(ws, CaseLabel::H)->stability == Stability::stable);
      ++bistable_checked;
    }
  }
  CHECK(bistable_checked > 0);
}

TEST_CASE("grid scan finds nothing beyond the enumerated states") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto base = sample_admissible(rng);
    const auto vp = ValidatedParams::check(base);
    const auto states = steady_states_open(vp);
    for (const State& f : oracle::grid_scan(base, 120)) {
      const auto* hit = nearest_within(states, f, 1e-3);
      CHECK_MESSAGE(hit != nullptr, "unmatched root at (" << f.p << ", " << f.q << ")");
    }
  }
}

TEST_CASE("allowance sweep") {
  SUBCASE("regime switch at A*") {
    const auto rows = allowance_sweep(kEx, 0.0, 0.19, 20);
    REQUIRE(rows.size() == 20);
    for (const auto& r : rows) {
      if (r.allowance < 263.0 / 2200.0)
        CHECK(r.regime == Regime::bistable);
      else
        CHECK(r.regime == Regime::only_full_assim);
    }
    CHECK(rows.back().allowance == Approx(0.19));
  }
  SUBCASE("entirely above A*") {
    for (const auto& r : allowance_sweep(kEx, 0.13, 0.19, 7))
      CHECK(r.regime == Regime::only_full_assim);
  }
  SUBCASE("single step") {
    const auto rows = allowance_sweep(kEx, 0.05, 0.19, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].allowance == 0.05);
  }
  SUBCASE("allowances outside the admissible range are refused") {
    CHECK_THROWS_AS(allowance_sweep(kEx, 0.0, 0.25, 6), ValidationError);
    CHECK_THROWS_AS(allowance_sweep(kEx, 0.0, 0.1, 0), DomainError);
  }
}
