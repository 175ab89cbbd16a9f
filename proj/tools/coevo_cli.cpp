// Command-line front end: validation, equilibrium analysis, simulation,
// basins, allowance sweeps, welfare verdicts and phase-portrait data.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coevo/dynamics.hpp"
#include "coevo/io.hpp"
#include "coevo/welfare.hpp"

namespace {

using nlohmann::json;
using namespace coevo;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string params_file;
  bool force = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct Loaded {
  ModelParams raw;
  ValidatedParams params;
};

Loaded load(const Common& c) {
  ModelParams raw = load_params_file(c.params_file);
  return {raw, c.force ? ValidatedParams::unchecked(raw) : ValidatedParams::check(raw)};
}

RunManifest manifest(const std::string& command, const Common& c, const ModelParams& p) {
  return {command, p, c.force, c.seed, kVersion, manifest_timestamp()};
}

void emit_json(const json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << doc.dump(2) << '\n';
}

template <class Writer>
void emit_csv(const std::string& path, const RunManifest& m, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  write(f);
  emit_json(to_json(m), path + ".manifest.json");
}

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--params", c.params_file, "parameter file (JSON)")->required();
  cmd->add_flag("--force", c.force,
                "analyse parameters that fail validation (unsupported)");
  cmd->add_option("--seed", c.seed, "seed recorded in the manifest")->capture_default_str();
  if (with_out) cmd->add_option("--out", c.out, "output file (default: stdout)");
}

IntegrationOptions integration_options(CLI::App* cmd, IntegrationOptions& o) {
  cmd->add_option("--t-max", o.t_max, "integration horizon")->capture_default_str();
  cmd->add_option("--dt", o.dt, "RK4 step")->capture_default_str();
  return o;
}

json steady_list(const std::vector<SteadyState>& states) {
  json out = json::array();
  for (const auto& s : states) out.push_back(to_json(s));
  return out;
}

json stable_list(const std::vector<SteadyState>& states) {
  json out = json::array();
  for (const auto& s : states)
    if (s.in_domain && s.stability == Stability::stable)
      out.push_back({{"case", to_string(s.label)}, {"p", s.state.p}, {"q", s.state.q}});
  return out;
}

std::vector<State> read_initial_states(const std::string& path, bool closed) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open trajectory file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed trajectory file: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("", "trajectory file must be a JSON array");
  std::vector<State> out;
  for (const auto& item : doc) {
    if (closed && item.is_number()) {
      out.push_back({0.0, item.get<double>()});
    } else if (item.is_array() && item.size() == 2 && item[0].is_number() &&
               item[1].is_number()) {
      out.push_back({item[0].get<double>(), item[1].get<double>()});
    } else {
      throw ParseError("", "initial states must be [p, q] pairs (or q numbers with --closed)");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coevolution of migrant assimilation and native skill formation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  IntegrationOptions integ;

  auto* validate_cmd = app.add_subcommand("validate", "check parameter admissibility");
  add_common(validate_cmd, common);

  bool closed = false;
  auto* eq_cmd = app.add_subcommand("equilibria", "steady states, stability and thresholds");
  add_common(eq_cmd, common);
  eq_cmd->add_flag("--closed", closed, "closed-to-migration economy");

  double p0 = 0.0, q0 = 0.0;
  std::string format = "json";
  auto* sim_cmd = app.add_subcommand("simulate", "integrate one trajectory");
  add_common(sim_cmd, common);
  sim_cmd->add_option("--p0", p0, "initial share of assimilating migrants");
  sim_cmd->add_option("--q0", q0, "initial share of high-skill natives")->required();
  sim_cmd->add_flag("--closed", closed, "closed-to-migration economy (uses --q0 only)");
  sim_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sim_cmd->add_option("--stride", integ.sample_stride, "keep every n-th step")->capture_default_str();
  integration_options(sim_cmd, integ);

  std::size_t resolution = 21;
  unsigned threads = 0;
  auto* basin_cmd = app.add_subcommand("basins", "basins of attraction on a grid of starts");
  add_common(basin_cmd, common);
  basin_cmd->add_option("--resolution", resolution, "cells per axis")->capture_default_str();
  basin_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  integration_options(basin_cmd, integ);

  double a_from = 0.0, a_to = 0.0;
  std::size_t steps = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "stability regimes across allowances");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--A-from", a_from)->required();
  sweep_cmd->add_option("--A-to", a_to)->required();
  sweep_cmd->add_option("--steps", steps, "grid points, inclusive")->required()->check(CLI::PositiveNumber);

  auto* welfare_cmd = app.add_subcommand("welfare", "welfare verdict for the minimal allowance");
  add_common(welfare_cmd, common);

  std::string traj_file;
  auto* phase_cmd = app.add_subcommand("phase", "vector field and trajectory data");
  add_common(phase_cmd, common, false);
  phase_cmd->add_option("--resolution", resolution, "grid nodes per axis")->capture_default_str();
  phase_cmd->add_option("--trajectories", traj_file, "JSON array of initial states");
  phase_cmd->add_option("--out", common.out, "output prefix")->required();
  phase_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  phase_cmd->add_flag("--closed", closed, "closed-to-migration economy");
  integration_options(phase_cmd, integ);

  auto* sample_cmd = app.add_subcommand("sample", "draw a random admissible parameter file");
  sample_cmd->add_option("--seed", common.seed)->capture_default_str();
  sample_cmd->add_option("--out", common.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample_cmd) {
      std::mt19937_64 rng(common.seed);
      const ModelParams p = sample_admissible(rng);
      const std::string doc = dump_params(p);
      if (common.out.empty()) {
        std::cout << doc << '\n';
      } else {
        std::ofstream(common.out) << doc << '\n';
        emit_json(to_json(manifest("sample", common, p)), common.out + ".manifest.json");
      }
      return kExitOk;
    }

    if (*validate_cmd) {
      const ModelParams p = load_params_file(common.params_file);
      const ValidationReport report = validate(p);
      emit_json(envelope(manifest("validate", common, p), to_json(report)), common.out);
      if (!report.overall) {
        std::cerr << "failed checks:";
        for (const auto& n : report.failed()) std::cerr << ' ' << n;
        std::cerr << '\n';
      }
      return report.overall ? kExitOk : kExitDomain;
    }

    const Loaded in = load(common);
    const ValidatedParams& vp = in.params;

    if (*eq_cmd) {
      json result;
      if (closed) {
        const auto states = steady_states_closed(vp);
        result = {{"economy", "closed"},
                  {"q_star", thresholds(vp).q_star},
                  {"steady_states", steady_list(states)},
                  {"stable", stable_list(states)}};
      } else {
        const auto states = steady_states_open(vp);
        result = {{"economy", "open"},
                  {"thresholds", to_json(thresholds(vp))},
                  {"steady_states", steady_list(states)},
                  {"stable", stable_list(states)}};
      }
      emit_json(envelope(manifest("equilibria", common, in.raw), result), common.out);
      return kExitOk;
    }

    if (*sim_cmd) {
      const RunManifest m = manifest("simulate", common, in.raw);
      json summary;
      json full;
      if (closed) {
        const auto tr = integrate_closed(vp, q0, integ);
        summary = {{"terminal", {{"q", tr.terminal}}},
                   {"steps", tr.steps},
                   {"settled", tr.settled},
                   {"converged_to", tr.converged_to ? to_json(*tr.converged_to) : json(nullptr)}};
        if (format == "csv" && !common.out.empty())
          emit_csv(common.out, m, [&](std::ostream& o) { write_csv(o, tr); });
        else
          full = to_json(tr);
      } else {
        const auto tr = integrate(vp, {p0, q0}, integ);
        summary = {{"terminal", {{"p", tr.terminal.p}, {"q", tr.terminal.q}}},
                   {"steps", tr.steps},
                   {"settled", tr.settled},
                   {"converged_to", tr.converged_to ? to_json(*tr.converged_to) : json(nullptr)}};
        if (format == "csv" && !common.out.empty())
          emit_csv(common.out, m, [&](std::ostream& o) { write_csv(o, tr); });
        else
          full = to_json(tr);
      }
      if (!full.is_null() && !common.out.empty()) {
        emit_json(envelope(m, full), common.out);
        full = nullptr;
      }
      json printed = summary;
      if (!full.is_null()) printed["trajectory"] = full;
      emit_json(envelope(m, printed), "");
      return kExitOk;
    }

    if (*basin_cmd) {
      const RunManifest m = manifest("basins", common, in.raw);
      IntegrationOptions opts = integ;
      opts.record = false;
      const BasinMap map = basins(vp, resolution, opts, threads);
      json shares = json::object();
      for (const auto& [label, share] : map.shares) shares[label] = share;
      json result = {{"resolution", map.resolution},
                     {"shares", shares},
                     {"undecided", map.undecided}};
      if (common.out.empty())
        result["cells"] = to_json(map)["cells"];
      else
        emit_csv(common.out, m, [&](std::ostream& o) { write_csv(o, map); });
      emit_json(envelope(m, result), "");
      return kExitOk;
    }

    if (*sweep_cmd) {
      const Thresholds t = thresholds(vp);
      json rows = json::array();
      for (const auto& r : allowance_sweep(vp, a_from, a_to, steps)) rows.push_back(to_json(r));
      json result = {{"A_star", t.allowance_no_assim},
                     {"A_star2", t.allowance_full_assim},
                     {"rows", rows}};
      emit_json(envelope(manifest("sweep", common, in.raw), result), common.out);
      return kExitOk;
    }

    if (*welfare_cmd) {
      emit_json(envelope(manifest("welfare", common, in.raw), to_json(policy_verdict(vp))),
                common.out);
      return kExitOk;
    }

    if (*phase_cmd) {
      const RunManifest m = manifest("phase", common, in.raw);
      const std::string ext = format == "csv" ? ".csv" : ".json";
      const std::string field_path = common.out + "_field" + ext;
      const std::string traj_path = common.out + "_trajectories" + ext;
      std::vector<State> starts;
      if (!traj_file.empty()) starts = read_initial_states(traj_file, closed);

      if (closed) {
        const auto field = vector_field_closed(vp.get(), resolution);
        std::vector<ClosedTrajectory> runs;
        for (const auto& s : starts) runs.push_back(integrate_closed(vp, s.q, integ));
        if (format == "csv") {
          {
            std::ofstream f(field_path);
            write_csv(f, field);
          }
          if (!runs.empty()) {
            std::ofstream f(traj_path);
            f << "id,t,q\n";
            for (std::size_t k = 0; k < runs.size(); ++k)
              for (const auto& s : runs[k].samples)
                f << k << ',' << format_number(s.t) << ',' << format_number(s.q) << '\n';
          }
          emit_json(to_json(m), common.out + "_manifest.json");
        } else {
          json pts = json::array();
          for (const auto& pt : field) pts.push_back({{"q", pt.q}, {"dq", pt.dq}});
          emit_json(envelope(m, {{"resolution", resolution}, {"points", pts}}), field_path);
          if (!runs.empty()) {
            json arr = json::array();
            for (const auto& r : runs) arr.push_back(to_json(r));
            emit_json(envelope(m, arr), traj_path);
          }
        }
      } else {
        const auto field = vector_field(vp.get(), resolution, resolution);
        std::vector<Trajectory> runs;
        const auto attractors = steady_states_open(vp);
        for (const auto& s : starts) runs.push_back(integrate(vp, s, integ, attractors));
        if (format == "csv") {
          {
            std::ofstream f(field_path);
            write_csv(f, field);
          }
          if (!runs.empty()) {
            std::ofstream f(traj_path);
            f << "id,t,p,q\n";
            for (std::size_t k = 0; k < runs.size(); ++k)
              for (const auto& s : runs[k].samples)
                f << k << ',' << format_number(s.t) << ',' << format_number(s.state.p) << ','
                  << format_number(s.state.q) << '\n';
          }
          emit_json(to_json(m), common.out + "_manifest.json");
        } else {
          emit_json(envelope(m, to_json(field)), field_path);
          if (!runs.empty()) {
            json arr = json::array();
            for (const auto& r : runs) arr.push_back(to_json(r));
            emit_json(envelope(m, arr), traj_path);
          }
        }
      }
      json written = json::array({field_path});
      if (!starts.empty()) written.push_back(traj_path);
      emit_json(envelope(m, {{"written", written}}), "");
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << to_json(e.report()).dump(2) << '\n';
    std::cerr << "error: " << e.what() << " (use --force to analyse anyway)\n";
    return kExitDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
