#include "coevo/welfare.hpp"

#include <cmath>

namespace coevo {

double sw_natives(const ModelParams& params, State s, double allowance) {
  const auto u = utilities_open(params.with_allowance(allowance), s).natives;
  return params.natives * (s.q * (u.high_skill - u.low_skill) + u.low_skill);
}

double sw_migrants(const ModelParams& params, State s, double allowance) {
  const auto u = utilities_open(params.with_allowance(allowance), s).migrants;
  return params.migrants() * (s.p * u.assimilated + (1.0 - s.p) * u.non_assimilated);
}

double native_gain_cost_bound(const ModelParams& params, const Thresholds& t) {
  const double beta = params.deprivation_weight;
  const double m = params.migrant_ratio;
  return t.cost_floor + t.q_star * t.q_star2 * beta *
                            (params.skill_cost - (1.0 - beta) * params.externality) /
                            ((1.0 + m) * (1.0 - beta) * (1.0 - beta));
}

WelfareReport policy_verdict(const ValidatedParams& vp) {
  const ModelParams& p = vp.get();
  const Thresholds t = thresholds(vp);

  WelfareReport r;
  r.allowance = t.allowance_no_assim;
  r.q_star = t.q_star;
  r.q_star2 = t.q_star2;
  r.policy_needed = t.allowance_no_assim > 0.0;
  if (!r.policy_needed) {
    r.verdict = "assimilation occurs without policy";
    return r;
  }

  const State baseline{0.0, t.q_star};
  const State policy{1.0, t.q_star2};
  r.sw_natives_baseline = sw_natives(p, baseline, 0.0);
  r.sw_natives_policy = sw_natives(p, policy, r.allowance);
  r.sw_migrants_baseline = sw_migrants(p, baseline, 0.0);
  r.sw_migrants_policy = sw_migrants(p, policy, r.allowance);
  r.cost_bound = native_gain_cost_bound(p, t);

  r.natives_better_off = r.sw_natives_policy > r.sw_natives_baseline;
  r.migrants_better_off = r.sw_migrants_policy > r.sw_migrants_baseline;
  r.cost_condition_holds = p.assimilation_cost < r.cost_bound;

  // The direct comparison and the cost bound must agree away from the edge.
  if (std::abs(p.assimilation_cost - r.cost_bound) > 1e-12 &&
      r.natives_better_off != r.cost_condition_holds && !vp.forced())
    throw InternalAssumptionError("native welfare comparison disagrees with the cost bound");

  if (r.natives_better_off && r.migrants_better_off)
    r.verdict = "policy benefits natives and migrants";
  else if (r.migrants_better_off)
    r.verdict = "policy benefits migrants only";
  else if (r.natives_better_off)
    r.verdict = "policy benefits natives only";
  else
    r.verdict = "policy benefits neither group";
  return r;
}

}  // namespace coevo
