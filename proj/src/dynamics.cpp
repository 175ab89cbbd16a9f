#include "coevo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace coevo {
namespace {

void check_options(const IntegrationOptions& opts) {
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw DomainError("dt must be positive");
  if (!(opts.t_max > opts.dt) || !std::isfinite(opts.t_max))
    throw DomainError("t_max must exceed dt");
  if (opts.sample_stride == 0) throw DomainError("sample_stride must be positive");
  if (opts.t_max / opts.dt > static_cast<double>(kMaxSteps))
    throw BudgetError("integration would exceed the step budget");
}

double clamp_unit(double x, double& worst) {
  const double c = std::clamp(x, 0.0, 1.0);
  worst = std::max(worst, std::abs(c - x));
  return c;
}

double grid_node(std::size_t i, std::size_t n) {
  return n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

Trajectory integrate(const ValidatedParams& params, State initial,
                     const IntegrationOptions& opts) {
  return integrate(params, initial, opts, steady_states_open(params));
}

Trajectory integrate(const ValidatedParams& vp, State initial,
                     const IntegrationOptions& opts,
                     const std::vector<SteadyState>& attractors) {
  check_options(opts);
  if (!initial.in_unit_square()) throw DomainError("initial state off the unit square");
  const ModelParams& params = vp.get();
  const auto steps_total = static_cast<std::size_t>(std::ceil(opts.t_max / opts.dt - 1e-9));
  const double h = opts.dt;

  Trajectory tr;
  if (opts.record) tr.samples.push_back({0.0, initial});
  double p = initial.p;
  double q = initial.q;
  int quiet = 0;
  std::size_t step = 0;
  while (step < steps_total) {
    const Rates k1 = detail::rhs_open(params, p, q);
    const Rates k2 = detail::rhs_open(params, p + 0.5 * h * k1.dp, q + 0.5 * h * k1.dq);
    const Rates k3 = detail::rhs_open(params, p + 0.5 * h * k2.dp, q + 0.5 * h * k2.dq);
    const Rates k4 = detail::rhs_open(params, p + h * k3.dp, q + h * k3.dq);
    p = clamp_unit(p + h / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp), tr.max_clamp);
    q = clamp_unit(q + h / 6.0 * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq), tr.max_clamp);
    ++step;

    const Rates r = detail::rhs_open(params, p, q);
    quiet = std::max(std::abs(r.dp), std::abs(r.dq)) < kSettleRate ? quiet + 1 : 0;
    const bool done = quiet >= kSettleSteps || step == steps_total;
    if (opts.record && (step % opts.sample_stride == 0 || done))
      tr.samples.push_back({static_cast<double>(step) * h, {p, q}});
    if (quiet >= kSettleSteps) {
      tr.settled = true;
      break;
    }
  }
  tr.steps = step;
  tr.terminal = {p, q};
  if (tr.settled) {
    if (const auto* hit = nearest_within(attractors, tr.terminal, kAttributionRadius))
      tr.converged_to = *hit;
  }
  return tr;
}

ClosedTrajectory integrate_closed(const ValidatedParams& vp, double q0,
                                  const IntegrationOptions& opts) {
  check_options(opts);
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw DomainError("q0 must lie in [0, 1]");
  const ModelParams& params = vp.get();
  const auto steps_total = static_cast<std::size_t>(std::ceil(opts.t_max / opts.dt - 1e-9));
  const double h = opts.dt;

  ClosedTrajectory tr;
  if (opts.record) tr.samples.push_back({0.0, q0});
  double q = q0;
  int quiet = 0;
  std::size_t step = 0;
  while (step < steps_total) {
    const double k1 = detail::rhs_closed(params, q);
    const double k2 = detail::rhs_closed(params, q + 0.5 * h * k1);
    const double k3 = detail::rhs_closed(params, q + 0.5 * h * k2);
    const double k4 = detail::rhs_closed(params, q + h * k3);
    q = clamp_unit(q + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), tr.max_clamp);
    ++step;
    quiet = std::abs(detail::rhs_closed(params, q)) < kSettleRate ? quiet + 1 : 0;
    const bool done = quiet >= kSettleSteps || step == steps_total;
    if (opts.record && (step % opts.sample_stride == 0 || done))
      tr.samples.push_back({static_cast<double>(step) * h, q});
    if (quiet >= kSettleSteps) {
      tr.settled = true;
      break;
    }
  }
  tr.steps = step;
  tr.terminal = q;
  if (tr.settled) {
    const auto closed = steady_states_closed(vp);
    for (const auto& s : closed) {
      if (std::abs(s.state.q - q) <= kAttributionRadius) {
        tr.converged_to = s;
        break;
      }
    }
  }
  return tr;
}

BasinMap basins(const ValidatedParams& vp, std::size_t resolution,
                const IntegrationOptions& opts, unsigned threads) {
  if (resolution == 0) throw DomainError("basin resolution must be positive");
  check_options(opts);
  IntegrationOptions quiet_opts = opts;
  quiet_opts.record = false;
  const auto attractors = steady_states_open(vp);

  BasinMap map;
  map.resolution = resolution;
  map.cells.resize(resolution * resolution);
  for (std::size_t j = 0; j < resolution; ++j) {
    for (std::size_t i = 0; i < resolution; ++i) {
      const double step = 1.0 / static_cast<double>(resolution);
      map.cells[j * resolution + i].initial = {(static_cast<double>(i) + 0.5) * step,
                                               (static_cast<double>(j) + 0.5) * step};
    }
  }

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < map.cells.size(); k += stride) {
      auto& cell = map.cells[k];
      const Trajectory tr = integrate(vp, cell.initial, quiet_opts, attractors);
      cell.label = tr.converged_to ? std::string(to_string(tr.converged_to->label))
                                   : std::string(kUndecided);
    }
  };

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, map.cells.size()));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  std::size_t decided = 0;
  for (const auto& cell : map.cells) {
    if (cell.label == kUndecided) {
      ++map.undecided;
    } else {
      ++decided;
      map.shares[cell.label] += 1.0;
    }
  }
  for (auto& [label, share] : map.shares) share /= static_cast<double>(decided);
  return map;
}

VectorFieldGrid vector_field(const ModelParams& params, std::size_t resolution_p,
                             std::size_t resolution_q) {
  if (resolution_p == 0 || resolution_q == 0)
    throw DomainError("vector field resolution must be positive");
  VectorFieldGrid grid;
  grid.resolution_p = resolution_p;
  grid.resolution_q = resolution_q;
  grid.points.reserve(resolution_p * resolution_q);
  for (std::size_t j = 0; j < resolution_q; ++j) {
    for (std::size_t i = 0; i < resolution_p; ++i) {
      const State s{grid_node(i, resolution_p), grid_node(j, resolution_q)};
      const Rates r = rhs_open(params, s);
      grid.points.push_back({s, r.dp, r.dq});
    }
  }
  return grid;
}

std::vector<ClosedFieldPoint> vector_field_closed(const ModelParams& params,
                                                  std::size_t resolution) {
  if (resolution == 0) throw DomainError("vector field resolution must be positive");
  std::vector<ClosedFieldPoint> out;
  out.reserve(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double q = grid_node(i, resolution);
    out.push_back({q, rhs_closed(params, q)});
  }
  return out;
}

}  // namespace coevo
