#pragma once

#include "coevo/params.hpp"

namespace coevo {

/// A point of the coevolutionary system: p is the share of assimilating
/// migrants, q the share of high-skill natives. Model operations require
/// both in [0, 1]; the type itself does not enforce it so that roots found
/// outside the square can still be reported.
struct State {
  double p = 0.0;
  double q = 0.0;

  bool in_unit_square(double slack = 0.0) const {
    return p >= -slack && p <= 1.0 + slack && q >= -slack && q <= 1.0 + slack;
  }
  friend bool operator==(const State&, const State&) = default;
};

struct NativeUtilities {
  double income_high_skill = 0.0;
  double income_low_skill = 0.0;
  double deprivation_low_skill = 0.0;
  double high_skill = 0.0;
  double low_skill = 0.0;
};

struct MigrantUtilities {
  double income_assimilated = 0.0;
  double income_non_assimilated = 0.0;
  double deprivation_assimilated = 0.0;
  double deprivation_non_assimilated = 0.0;
  double assimilated = 0.0;
  double non_assimilated = 0.0;
};

struct UtilityProfile {
  NativeUtilities natives;
  MigrantUtilities migrants;
};

struct Rates {
  double dp = 0.0;
  double dq = 0.0;
};

/// Closed economy: no migrants, no allowance.
NativeUtilities utilities_closed(const ModelParams& params, double q);
double rhs_closed(const ModelParams& params, double q);

/// Open economy at the allowance carried by `params`.
UtilityProfile utilities_open(const ModelParams& params, State s);
Rates rhs_open(const ModelParams& params, State s);

/// u_A - u_NA and u_HS - u_LS.
double assimilation_gain(const ModelParams& params, State s);
double skill_gain(const ModelParams& params, State s);

namespace detail {
// Unchecked evaluations: callers guarantee the domain (or deliberately
// evaluate outside it, e.g. at RK stages or roots off the square).
double assimilation_gain(const ModelParams& params, double p, double q);
double skill_gain(const ModelParams& params, double p, double q);
Rates rhs_open(const ModelParams& params, double p, double q);
double rhs_closed(const ModelParams& params, double q);
}  // namespace detail

}  // namespace coevo
