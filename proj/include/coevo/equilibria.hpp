#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "coevo/model.hpp"
#include "coevo/params.hpp"

namespace coevo {

enum class Stability { stable, unstable, marginal };

/// Where a steady state comes from. A..D are the corners, E/F the roots of
/// u_A = u_NA on the faces q = 0 / q = 1, G/H the roots of u_HS = u_LS on
/// the faces p = 0 / p = 1, I1/I2 the interior candidates. The closed_*
/// labels belong to the one-dimensional closed economy.
enum class CaseLabel { A, B, C, D, E, F, G, H, I1, I2, closed_zero, closed_one, closed_interior };

std::string_view to_string(Stability s);
std::string_view to_string(CaseLabel c);

struct SteadyState {
  State state;
  CaseLabel label = CaseLabel::A;
  bool in_domain = false;
  // Two values for the open economy, one (F'(q)) for the closed economy.
  std::vector<std::complex<double>> eigenvalues;
  Stability stability = Stability::marginal;
};

struct Thresholds {
  double q_star = 0.0;    // interior share of high-skill natives at p = 0
  double q_star2 = 0.0;   // same at p = 1
  double p_star = 0.0;    // root of u_A = u_NA on q = 0
  double p_star2 = 0.0;   // root of u_A = u_NA on q = 1
  bool q_star_interior = false;
  bool q_star2_interior = false;
  bool p_star_interior = false;
  bool p_star2_interior = false;
  double allowance_no_assim = 0.0;    // A*: (0, q*) stable iff A < A*
  double allowance_full_assim = 0.0;  // A**: (1, q**) stable iff A > A**
  double cost_floor = 0.0;            // c_A bar: A* > 0 iff c_A > c_A bar
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Coefficients of a*p^2 + b*p + c = 0 whose roots are the p-coordinates of
/// points where both u_A = u_NA and u_HS = u_LS.
struct Quadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct QuadraticRoots {
  int count = 0;  // 0, 1 (double root) or 2; roots sorted ascending
  std::array<double, 2> roots{};
};

inline constexpr double kStabilityTol = 1e-9;
inline constexpr double kDiscriminantTol = 1e-12;
inline constexpr double kDomainSlack = 1e-12;

Thresholds thresholds(const ValidatedParams& params);

std::vector<SteadyState> steady_states_closed(const ValidatedParams& params);
std::vector<SteadyState> steady_states_open(const ValidatedParams& params);

/// Analytic Jacobian of the replicator field. Throws DomainError off the
/// unit square.
Matrix2 jacobian(const ModelParams& params, State s);

/// F'(q) of the closed-economy replicator equation.
double closed_slope(const ModelParams& params, double q);

std::array<std::complex<double>, 2> eigenvalues(const Matrix2& j);
Stability classify(std::span<const std::complex<double>> eigenvalues,
                   double tol = kStabilityTol);

Quadratic interior_quadratic(const ModelParams& params);
QuadraticRoots solve_quadratic(const Quadratic& quad);

/// q on the curve u_HS = u_LS for a given p.
double skill_balance_q(const ModelParams& params, double p);

/// Nearest state of `states` to `s` (Euclidean), or nullptr if none lies
/// within `radius`.
const SteadyState* nearest_within(std::span<const SteadyState> states, State s,
                                  double radius);

enum class Regime { only_no_assim, bistable, only_full_assim, none };
std::string_view to_string(Regime r);

struct SweepRow {
  double allowance = 0.0;
  Stability no_assim = Stability::marginal;    // (0, q*)
  Stability full_assim = Stability::marginal;  // (1, q**)
  Regime regime = Regime::none;
};

/// Stability of (0, q*) and (1, q**) on the inclusive linear grid of `steps`
/// allowances from `from` to `to`. Each allowance is re-validated unless the
/// parameters were forced.
std::vector<SweepRow> allowance_sweep(const ValidatedParams& params, double from,
                                      double to, std::size_t steps);

namespace detail {
Matrix2 jacobian(const ModelParams& params, double p, double q);
}

}  // namespace coevo
