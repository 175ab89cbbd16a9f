#include "coevo/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>

namespace coevo {

using nlohmann::json;

std::string manifest_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env) now = static_cast<std::time_t>(v);
  }
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json to_json(const ModelParams& p) {
  return json::parse(dump_params(p));
}

json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"inequality", c.inequality},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"pass", c.pass},
                      {"marginal", c.marginal}});
  }
  return {{"overall", r.overall}, {"checks", checks}};
}

json to_json(const Thresholds& t) {
  return {{"q_star", {{"value", t.q_star}, {"interior", t.q_star_interior}}},
          {"q_star2", {{"value", t.q_star2}, {"interior", t.q_star2_interior}}},
          {"p_star", {{"value", t.p_star}, {"interior", t.p_star_interior}}},
          {"p_star2", {{"value", t.p_star2}, {"interior", t.p_star2_interior}}},
          {"A_star", t.allowance_no_assim},
          {"A_star2", t.allowance_full_assim},
          {"cA_bar", t.cost_floor}};
}

json to_json(const SteadyState& s) {
  json ev = json::array();
  for (const auto& e : s.eigenvalues) ev.push_back({{"re", e.real()}, {"im", e.imag()}});
  return {{"case", to_string(s.label)},
          {"p", s.state.p},
          {"q", s.state.q},
          {"in_domain", s.in_domain},
          {"eigenvalues", ev},
          {"stability", to_string(s.stability)}};
}

namespace {
json attribution(const std::optional<SteadyState>& s) {
  return s ? to_json(*s) : json(nullptr);
}
}  // namespace

json to_json(const Trajectory& t) {
  json samples = json::array();
  for (const auto& s : t.samples) samples.push_back({{"t", s.t}, {"p", s.state.p}, {"q", s.state.q}});
  return {{"samples", samples},
          {"terminal", {{"p", t.terminal.p}, {"q", t.terminal.q}}},
          {"converged_to", attribution(t.converged_to)},
          {"steps", t.steps},
          {"settled", t.settled},
          {"max_clamp", t.max_clamp}};
}

json to_json(const ClosedTrajectory& t) {
  json samples = json::array();
  for (const auto& s : t.samples) samples.push_back({{"t", s.t}, {"q", s.q}});
  return {{"samples", samples},
          {"terminal", {{"q", t.terminal}}},
          {"converged_to", attribution(t.converged_to)},
          {"steps", t.steps},
          {"settled", t.settled},
          {"max_clamp", t.max_clamp}};
}

json to_json(const BasinMap& b) {
  json cells = json::array();
  for (const auto& c : b.cells)
    cells.push_back({{"p", c.initial.p}, {"q", c.initial.q}, {"label", c.label}});
  json shares = json::object();
  for (const auto& [label, share] : b.shares) shares[label] = share;
  return {{"resolution", b.resolution},
          {"cells", cells},
          {"shares", shares},
          {"undecided", b.undecided}};
}

json to_json(const VectorFieldGrid& g) {
  json points = json::array();
  for (const auto& pt : g.points)
    points.push_back({{"p", pt.state.p}, {"q", pt.state.q}, {"dp", pt.dp}, {"dq", pt.dq}});
  return {{"resolution", {g.resolution_p, g.resolution_q}}, {"points", points}};
}

json to_json(const WelfareReport& w) {
  json out = {{"policy_needed", w.policy_needed},
              {"verdict", w.verdict},
              {"A_star", w.allowance},
              {"q_star", w.q_star},
              {"q_star2", w.q_star2}};
  if (w.policy_needed) {
    out["sw_natives_baseline"] = w.sw_natives_baseline;
    out["sw_natives_policy"] = w.sw_natives_policy;
    out["sw_migrants_baseline"] = w.sw_migrants_baseline;
    out["sw_migrants_policy"] = w.sw_migrants_policy;
    out["cA_threshold_rhs"] = w.cost_bound;
    out["natives_better_off"] = w.natives_better_off;
    out["migrants_better_off"] = w.migrants_better_off;
    out["cost_condition_holds"] = w.cost_condition_holds;
  }
  return out;
}

json to_json(const SweepRow& r) {
  return {{"A", r.allowance},
          {"no_assim_stability", to_string(r.no_assim)},
          {"full_assim_stability", to_string(r.full_assim)},
          {"regime", to_string(r.regime)}};
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"params", to_json(m.params)},
          {"forced", m.forced},
          {"seed", m.seed},
          {"version", m.version},
          {"timestamp", m.timestamp}};
}

json envelope(const RunManifest& m, json result) {
  return {{"manifest", to_json(m)}, {"result", std::move(result)}};
}

void write_csv(std::ostream& out, const Trajectory& t) {
  out << "t,p,q\n";
  for (const auto& s : t.samples)
    out << format_number(s.t) << ',' << format_number(s.state.p) << ','
        << format_number(s.state.q) << '\n';
}

void write_csv(std::ostream& out, const ClosedTrajectory& t) {
  out << "t,q\n";
  for (const auto& s : t.samples) out << format_number(s.t) << ',' << format_number(s.q) << '\n';
}

void write_csv(std::ostream& out, const VectorFieldGrid& g) {
  out << "p,q,dp,dq\n";
  for (const auto& pt : g.points)
    out << format_number(pt.state.p) << ',' << format_number(pt.state.q) << ','
        << format_number(pt.dp) << ',' << format_number(pt.dq) << '\n';
}

void write_csv(std::ostream& out, const std::vector<ClosedFieldPoint>& g) {
  out << "q,dq\n";
  for (const auto& pt : g) out << format_number(pt.q) << ',' << format_number(pt.dq) << '\n';
}

void write_csv(std::ostream& out, const BasinMap& b) {
  out << "p,q,label\n";
  for (const auto& c : b.cells)
    out << format_number(c.initial.p) << ',' << format_number(c.initial.q) << ',' << c.label
        << '\n';
}

}  // namespace coevo
