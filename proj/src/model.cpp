#include "coevo/model.hpp"

#include <cmath>
#include <string>

namespace coevo {
namespace {

void require_fraction(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
}

void require_state(State s) {
  require_fraction(s.p, "p");
  require_fraction(s.q, "q");
}

}  // namespace

NativeUtilities utilities_closed(const ModelParams& params, double q) {
  require_fraction(q, "q");
  const double beta = params.deprivation_weight;
  NativeUtilities u;
  u.income_high_skill = params.wage_high_skill + q * params.externality;
  u.income_low_skill = params.wage_low_skill + q * params.externality;
  u.deprivation_low_skill = q * params.skill_gap();
  u.high_skill = (1.0 - beta) * u.income_high_skill - q * params.skill_cost;
  u.low_skill = (1.0 - beta) * u.income_low_skill - beta * u.deprivation_low_skill;
  return u;
}

double rhs_closed(const ModelParams& params, double q) {
  require_fraction(q, "q");
  return detail::rhs_closed(params, q);
}

UtilityProfile utilities_open(const ModelParams& params, State s) {
  require_state(s);
  const auto [p, q] = s;
  const double beta = params.deprivation_weight;
  const double m = params.migrant_ratio;
  const double A = params.allowance;
  const double tax = p * m * A;

  UtilityProfile out;
  auto& n = out.natives;
  n.income_high_skill = params.wage_high_skill + q * params.externality - tax;
  n.income_low_skill = params.wage_low_skill + q * params.externality - tax;
  n.deprivation_low_skill = q / (1.0 + p * m) * params.skill_gap();
  n.high_skill = (1.0 - beta) * n.income_high_skill - q * params.skill_cost;
  n.low_skill = (1.0 - beta) * n.income_low_skill - beta * n.deprivation_low_skill;

  auto& g = out.migrants;
  g.income_assimilated = params.wage_assimilated + q * params.externality;
  g.income_non_assimilated = params.wage_non_assimilated;
  g.deprivation_assimilated =
      (q * params.skill_gap() + (params.wage_low_skill - params.wage_assimilated - tax)) /
      (1.0 + m);
  g.deprivation_non_assimilated = p * (g.income_assimilated - g.income_non_assimilated);
  g.assimilated = (1.0 - beta) * g.income_assimilated -
                  (params.assimilation_cost - A) - beta * g.deprivation_assimilated;
  // Non-assimilating migrants bear no share of the allowance.
  g.non_assimilated = (1.0 - beta) * params.wage_non_assimilated -
                      beta * g.deprivation_non_assimilated;
  return out;
}

Rates rhs_open(const ModelParams& params, State s) {
  require_state(s);
  return detail::rhs_open(params, s.p, s.q);
}

double assimilation_gain(const ModelParams& params, State s) {
  require_state(s);
  return detail::assimilation_gain(params, s.p, s.q);
}

double skill_gain(const ModelParams& params, State s) {
  require_state(s);
  return detail::skill_gain(params, s.p, s.q);
}

namespace detail {

double assimilation_gain(const ModelParams& params, double p, double q) {
  const double beta = params.deprivation_weight;
  const double m = params.migrant_ratio;
  const double A = params.allowance;
  const double u_a =
      (1.0 - beta) * (params.wage_assimilated + q * params.externality) -
      (params.assimilation_cost - A) -
      beta / (1.0 + m) *
          (q * params.skill_gap() + params.wage_low_skill - params.wage_assimilated -
           p * m * A);
  const double u_na =
      (1.0 - beta) * params.wage_non_assimilated -
      beta * p *
          (params.wage_assimilated + q * params.externality - params.wage_non_assimilated);
  return u_a - u_na;
}

double skill_gain(const ModelParams& params, double p, double q) {
  // The allowance tax and the externality cancel between the two incomes.
  const double beta = params.deprivation_weight;
  const double gap = params.skill_gap();
  return (1.0 - beta) * gap + beta * q / (1.0 + p * params.migrant_ratio) * gap -
         q * params.skill_cost;
}

Rates rhs_open(const ModelParams& params, double p, double q) {
  return {p * (1.0 - p) * assimilation_gain(params, p, q),
          q * (1.0 - q) * skill_gain(params, p, q)};
}

double rhs_closed(const ModelParams& params, double q) {
  const double beta = params.deprivation_weight;
  const double gap = params.skill_gap();
  const double gain = (1.0 - beta) * gap + beta * q * gap - q * params.skill_cost;
  return q * (1.0 - q) * gain;
}

}  // namespace detail
}  // namespace coevo
