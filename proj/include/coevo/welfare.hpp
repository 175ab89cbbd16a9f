#pragma once

#include <string>

#include "coevo/equilibria.hpp"

namespace coevo {

/// Utilitarian welfare of natives, N * [q * (u_HS - u_LS) + u_LS], at the
/// given allowance (which overrides params.allowance).
double sw_natives(const ModelParams& params, State s, double allowance);

/// Utilitarian welfare of migrants, M * [p * u_A + (1 - p) * u_NA].
double sw_migrants(const ModelParams& params, State s, double allowance);

/// Upper bound on c_A below which funding full assimilation at A = A* leaves
/// natives better off than the no-assimilation state at A = 0.
double native_gain_cost_bound(const ModelParams& params, const Thresholds& t);

struct WelfareReport {
  bool policy_needed = false;  // A* > 0
  std::string verdict;
  double allowance = 0.0;  // A* at which the policy is evaluated
  double q_star = 0.0;
  double q_star2 = 0.0;
  double sw_natives_baseline = 0.0;   // at (0, q*), A = 0
  double sw_natives_policy = 0.0;     // at (1, q**), A = A*
  double sw_migrants_baseline = 0.0;
  double sw_migrants_policy = 0.0;
  double cost_bound = 0.0;
  bool natives_better_off = false;
  bool migrants_better_off = false;
  bool cost_condition_holds = false;
};

/// Compares the no-assimilation state without policy against full
/// assimilation bought with the minimal allowance A*. When A* <= 0 no
/// policy is needed and the welfare comparison is skipped.
WelfareReport policy_verdict(const ValidatedParams& params);

}  // namespace coevo
