#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coevo/equilibria.hpp"

namespace coevo {

struct IntegrationOptions {
  double t_max = 2000.0;
  double dt = 0.01;
  // Keep every n-th step (the initial and terminal samples are always kept).
  std::size_t sample_stride = 1;
  bool record = true;
};

inline constexpr double kSettleRate = 1e-10;
inline constexpr int kSettleSteps = 10;
inline constexpr double kAttributionRadius = 1e-4;
inline constexpr std::size_t kMaxSteps = 10'000'000;

struct Sample {
  double t = 0.0;
  State state;
};

struct Trajectory {
  std::vector<Sample> samples;
  State terminal;
  std::optional<SteadyState> converged_to;
  std::size_t steps = 0;
  bool settled = false;
  // Largest distance any RK4 step left the unit square before clamping.
  double max_clamp = 0.0;
};

struct ClosedSample {
  double t = 0.0;
  double q = 0.0;
};

struct ClosedTrajectory {
  std::vector<ClosedSample> samples;
  double terminal = 0.0;
  std::optional<SteadyState> converged_to;
  std::size_t steps = 0;
  bool settled = false;
  double max_clamp = 0.0;
};

/// Classical RK4 on the open-economy field, clamped to the unit square after
/// every step, stopping early once ||rhs||_inf < kSettleRate for
/// kSettleSteps consecutive steps.
Trajectory integrate(const ValidatedParams& params, State initial,
                     const IntegrationOptions& opts = {});
/// As above with a precomputed steady-state list for attribution.
Trajectory integrate(const ValidatedParams& params, State initial,
                     const IntegrationOptions& opts,
                     const std::vector<SteadyState>& attractors);

ClosedTrajectory integrate_closed(const ValidatedParams& params, double q0,
                                  const IntegrationOptions& opts = {});

inline constexpr const char* kUndecided = "undecided";

struct BasinCell {
  State initial;
  std::string label;  // case label of the attractor, or kUndecided
};

struct BasinMap {
  std::size_t resolution = 0;
  std::vector<BasinCell> cells;  // row-major: q index outer, p index inner
  std::map<std::string, double> shares;  // fraction of decided cells per label
  std::size_t undecided = 0;
};

/// Integrates from every cell centre of a resolution x resolution grid over
/// (0,1)^2. Work is spread over `threads` workers (0 = hardware
/// concurrency); output order is always by cell index.
BasinMap basins(const ValidatedParams& params, std::size_t resolution,
                const IntegrationOptions& opts = {.record = false},
                unsigned threads = 0);

struct FieldPoint {
  State state;
  double dp = 0.0;
  double dq = 0.0;
};

struct VectorFieldGrid {
  std::size_t resolution_p = 0;
  std::size_t resolution_q = 0;
  std::vector<FieldPoint> points;  // q index outer, p index inner
};

struct ClosedFieldPoint {
  double q = 0.0;
  double dq = 0.0;
};

/// Rates on grid nodes including the boundary; a resolution of 1 places a
/// single node at 0.5.
VectorFieldGrid vector_field(const ModelParams& params, std::size_t resolution_p,
                             std::size_t resolution_q);
std::vector<ClosedFieldPoint> vector_field_closed(const ModelParams& params,
                                                  std::size_t resolution);

}  // namespace coevo
