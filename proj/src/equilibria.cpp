#include "coevo/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coevo {
namespace {

bool interior(double x) { return x > 0.0 && x < 1.0; }

SteadyState make_open_state(const ModelParams& params, State s, CaseLabel label) {
  SteadyState out;
  out.state = s;
  out.label = label;
  out.in_domain = s.in_unit_square(kDomainSlack);
  const auto ev = eigenvalues(detail::jacobian(params, s.p, s.q));
  out.eigenvalues.assign(ev.begin(), ev.end());
  out.stability = classify(out.eigenvalues);
  return out;
}

SteadyState make_closed_state(const ModelParams& params, double q, CaseLabel label) {
  SteadyState out;
  out.state = {0.0, q};
  out.label = label;
  out.in_domain = q >= -kDomainSlack && q <= 1.0 + kDomainSlack;
  out.eigenvalues = {std::complex<double>(closed_slope(params, q), 0.0)};
  out.stability = classify(out.eigenvalues);
  return out;
}

// Share of high-skill natives at which u_HS = u_LS when p = 0 (q*) and when
// p = 1 (q**).
double balance_no_assim(const ModelParams& p) {
  const double beta = p.deprivation_weight;
  return (1.0 - beta) * p.skill_gap() / (p.skill_cost - beta * p.skill_gap());
}

double balance_full_assim(const ModelParams& p) {
  const double beta = p.deprivation_weight;
  return (1.0 - beta) * p.skill_gap() /
         (p.skill_cost - beta / (1.0 + p.migrant_ratio) * p.skill_gap());
}

}  // namespace

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::unstable:
      return "unstable";
    case Stability::marginal:
      return "marginal";
  }
  return "?";
}

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::A: return "A";
    case CaseLabel::B: return "B";
    case CaseLabel::C: return "C";
    case CaseLabel::D: return "D";
    case CaseLabel::E: return "E";
    case CaseLabel::F: return "F";
    case CaseLabel::G: return "G";
    case CaseLabel::H: return "H";
    case CaseLabel::I1: return "I1";
    case CaseLabel::I2: return "I2";
    case CaseLabel::closed_zero: return "closed-0";
    case CaseLabel::closed_one: return "closed-1";
    case CaseLabel::closed_interior: return "closed-q*";
  }
  return "?";
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::only_no_assim: return "only-no-assim";
    case Regime::bistable: return "bistable";
    case Regime::only_full_assim: return "only-full-assim";
    case Regime::none: return "none";
  }
  return "?";
}

Thresholds thresholds(const ValidatedParams& vp) {
  const ModelParams& p = vp.get();
  const double beta = p.deprivation_weight;
  const double m = p.migrant_ratio;
  const double A = p.allowance;
  const double rel = beta / (1.0 + m);
  const double gap = p.skill_gap();
  const double wage_step = p.wage_assimilated - p.wage_non_assimilated;
  // Net effect of one unit of q on u_A - u_NA at p = 0 (negative when
  // admissible): deprivation pressure minus the externality gain.
  const double q_pressure = rel * gap - (1.0 - beta) * p.externality;

  Thresholds t;
  t.q_star = balance_no_assim(p);
  t.q_star2 = balance_full_assim(p);

  t.p_star = (rel * (p.wage_low_skill - p.wage_assimilated) + (p.assimilation_cost - A) -
              (1.0 - beta) * wage_step) /
             (beta * (m / (1.0 + m) * A + wage_step));
  t.p_star2 = (rel * (p.wage_high_skill - p.wage_assimilated) + (p.assimilation_cost - A) -
               (1.0 - beta) * (wage_step + p.externality)) /
              (beta * (m / (1.0 + m) * A + wage_step + p.externality));

  t.q_star_interior = interior(t.q_star);
  t.q_star2_interior = interior(t.q_star2);
  t.p_star_interior = interior(t.p_star);
  t.p_star2_interior = interior(t.p_star2);

  t.allowance_no_assim = p.assimilation_cost + rel * (p.wage_low_skill - p.wage_assimilated) -
                         (1.0 - beta) * wage_step + t.q_star * q_pressure;
  t.allowance_full_assim =
      (p.assimilation_cost + rel * (p.wage_low_skill - p.wage_assimilated) - wage_step +
       t.q_star2 * (rel * gap - p.externality)) /
      (1.0 + m / (1.0 + m) * beta);
  t.cost_floor = (1.0 - beta) * wage_step - rel * (p.wage_low_skill - p.wage_assimilated) -
                 t.q_star * q_pressure;
  return t;
}

double closed_slope(const ModelParams& params, double q) {
  const double beta = params.deprivation_weight;
  const double gap = params.skill_gap();
  const double gain = (1.0 - beta) * gap + beta * q * gap - q * params.skill_cost;
  return (1.0 - 2.0 * q) * gain + q * (1.0 - q) * (beta * gap - params.skill_cost);
}

std::vector<SteadyState> steady_states_closed(const ValidatedParams& vp) {
  const ModelParams& p = vp.get();
  return {make_closed_state(p, 0.0, CaseLabel::closed_zero),
          make_closed_state(p, 1.0, CaseLabel::closed_one),
          make_closed_state(p, balance_no_assim(p), CaseLabel::closed_interior)};
}

Quadratic interior_quadratic(const ModelParams& p) {
  const double beta = p.deprivation_weight;
  const double m = p.migrant_ratio;
  const double A = p.allowance;
  const double rel = beta / (1.0 + m);
  const double gap = p.skill_gap();
  const double c_hs = p.skill_cost;
  const double wage_step = p.wage_assimilated - p.wage_non_assimilated;
  const double subsidised_step = wage_step + m / (1.0 + m) * A;
  const double q_pressure = rel * gap - (1.0 - beta) * p.externality;
  // u_A - u_NA at (0, 0) with the sign flipped.
  const double entry_barrier = rel * (p.wage_low_skill - p.wage_assimilated) +
                               (p.assimilation_cost - A) - (1.0 - beta) * wage_step;

  Quadratic quad;
  quad.a = beta * m * ((1.0 - beta) * gap * p.externality + c_hs * subsidised_step);
  quad.b = beta * (1.0 - beta) * gap * p.externality +
           beta * (c_hs - beta * gap) * subsidised_step -
           (1.0 - beta) * m * gap * q_pressure - m * c_hs * entry_barrier;
  quad.c = -(c_hs - beta * gap) * entry_barrier - (1.0 - beta) * gap * q_pressure;
  return quad;
}

QuadraticRoots solve_quadratic(const Quadratic& quad) {
  const auto [a, b, c] = quad;
  QuadraticRoots out;
  if (a == 0.0) {
    if (b == 0.0) return out;
    out.count = 1;
    out.roots = {-c / b, -c / b};
    return out;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < -kDiscriminantTol) return out;
  if (std::abs(disc) <= kDiscriminantTol) {
    out.count = 1;
    out.roots = {-b / (2.0 * a), -b / (2.0 * a)};
    return out;
  }
  const double sign_b = b >= 0.0 ? 1.0 : -1.0;
  const double t = -0.5 * (b + sign_b * std::sqrt(disc));
  double r1 = t / a;
  double r2 = t != 0.0 ? c / t : 0.0;
  if (r1 > r2) std::swap(r1, r2);
  out.count = 2;
  out.roots = {r1, r2};
  return out;
}

double skill_balance_q(const ModelParams& p, double assim) {
  const double beta = p.deprivation_weight;
  return (1.0 - beta) * p.skill_gap() /
         (p.skill_cost - beta / (1.0 + assim * p.migrant_ratio) * p.skill_gap());
}

std::vector<SteadyState> steady_states_open(const ValidatedParams& vp) {
  const ModelParams& p = vp.get();
  const Thresholds t = thresholds(vp);

  std::vector<SteadyState> out;
  out.push_back(make_open_state(p, {0.0, 0.0}, CaseLabel::A));
  out.push_back(make_open_state(p, {0.0, 1.0}, CaseLabel::B));
  out.push_back(make_open_state(p, {1.0, 0.0}, CaseLabel::C));
  out.push_back(make_open_state(p, {1.0, 1.0}, CaseLabel::D));
  if (t.p_star_interior) out.push_back(make_open_state(p, {t.p_star, 0.0}, CaseLabel::E));
  if (t.p_star2_interior) out.push_back(make_open_state(p, {t.p_star2, 1.0}, CaseLabel::F));
  out.push_back(make_open_state(p, {0.0, t.q_star}, CaseLabel::G));
  out.push_back(make_open_state(p, {1.0, t.q_star2}, CaseLabel::H));

  const Quadratic quad = interior_quadratic(p);
  if (!(quad.a > 0.0))
    throw InternalAssumptionError("interior quadratic has a non-positive leading coefficient");
  const QuadraticRoots roots = solve_quadratic(quad);
  const CaseLabel labels[2] = {CaseLabel::I1, CaseLabel::I2};
  for (int i = 0; i < roots.count; ++i) {
    const double root = roots.roots[static_cast<std::size_t>(i)];
    out.push_back(make_open_state(p, {root, skill_balance_q(p, root)}, labels[i]));
  }
  return out;
}

Matrix2 jacobian(const ModelParams& params, State s) {
  if (!s.in_unit_square()) throw DomainError("jacobian requested off the unit square");
  return detail::jacobian(params, s.p, s.q);
}

namespace detail {

Matrix2 jacobian(const ModelParams& params, double p, double q) {
  const double beta = params.deprivation_weight;
  const double m = params.migrant_ratio;
  const double A = params.allowance;
  const double gap = params.skill_gap();
  const double share = 1.0 + p * m;

  const double h1 = assimilation_gain(params, p, q);
  const double h2 = skill_gain(params, p, q);
  const double dh1_dp =
      beta * (params.wage_assimilated + q * params.externality - params.wage_non_assimilated) +
      m / (1.0 + m) * beta * A;
  const double dh1_dq = (1.0 - beta) * params.externality + beta * p * params.externality -
                        beta / (1.0 + m) * gap;
  const double dh2_dp = -beta * m * q * gap / (share * share);
  const double dh2_dq = beta / share * gap - params.skill_cost;

  Matrix2 j{};
  j[0][0] = (1.0 - 2.0 * p) * h1 + p * (1.0 - p) * dh1_dp;
  j[0][1] = p * (1.0 - p) * dh1_dq;
  j[1][0] = q * (1.0 - q) * dh2_dp;
  j[1][1] = (1.0 - 2.0 * q) * h2 + q * (1.0 - q) * dh2_dq;
  return j;
}

}  // namespace detail

std::array<std::complex<double>, 2> eigenvalues(const Matrix2& j) {
  const double half_trace = 0.5 * (j[0][0] + j[1][1]);
  const double half_diff = 0.5 * (j[0][0] - j[1][1]);
  const double disc = half_diff * half_diff + j[0][1] * j[1][0];
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return {std::complex<double>(half_trace - r, 0.0),
            std::complex<double>(half_trace + r, 0.0)};
  }
  const double im = std::sqrt(-disc);
  return {std::complex<double>(half_trace, -im), std::complex<double>(half_trace, im)};
}

Stability classify(std::span<const std::complex<double>> ev, double tol) {
  bool all_negative = !ev.empty();
  for (const auto& e : ev) {
    if (e.real() > tol) return Stability::unstable;
    all_negative = all_negative && e.real() < -tol;
  }
  return all_negative ? Stability::stable : Stability::marginal;
}

const SteadyState* nearest_within(std::span<const SteadyState> states, State s,
                                  double radius) {
  const SteadyState* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& st : states) {
    const double d = std::hypot(st.state.p - s.p, st.state.q - s.q);
    if (d < best_d) {
      best_d = d;
      best = &st;
    }
  }
  return best_d <= radius ? best : nullptr;
}

std::vector<SweepRow> allowance_sweep(const ValidatedParams& vp, double from, double to,
                                      std::size_t steps) {
  if (steps == 0) throw DomainError("sweep needs at least one step");
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double a =
        steps == 1 ? from
                   : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const ValidatedParams at = vp.with_allowance(a);
    const ModelParams& p = at.get();
    SweepRow row;
    row.allowance = a;
    const auto e0 = eigenvalues(detail::jacobian(p, 0.0, balance_no_assim(p)));
    const auto e1 = eigenvalues(detail::jacobian(p, 1.0, balance_full_assim(p)));
    row.no_assim = classify(e0);
    row.full_assim = classify(e1);
    const bool s0 = row.no_assim == Stability::stable;
    const bool s1 = row.full_assim == Stability::stable;
    row.regime = s0 && s1 ? Regime::bistable
                 : s0     ? Regime::only_no_assim
                 : s1     ? Regime::only_full_assim
                          : Regime::none;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coevo
