#include "coevo/params.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coevo {
namespace {

using json = nlohmann::json;

struct FieldSpec {
  const char* key;
  double ModelParams::*member;
  bool required;
};

constexpr std::array<FieldSpec, 11> kFields{{
    {"I_HS", &ModelParams::wage_high_skill, true},
    {"I_LS", &ModelParams::wage_low_skill, true},
    {"I_A", &ModelParams::wage_assimilated, true},
    {"I_NA", &ModelParams::wage_non_assimilated, true},
    {"I_E", &ModelParams::externality, true},
    {"c_HS", &ModelParams::skill_cost, true},
    {"c_A", &ModelParams::assimilation_cost, true},
    {"beta", &ModelParams::deprivation_weight, true},
    {"m", &ModelParams::migrant_ratio, true},
    {"N", &ModelParams::natives, false},
    {"A", &ModelParams::allowance, false},
}};

enum class Relation { greater, greater_equal, less };

ValidationCheck make_check(std::string name, std::string text, double lhs,
                           double rhs, Relation rel) {
  ValidationCheck c{std::move(name), std::move(text), lhs, rhs, false, false};
  switch (rel) {
    case Relation::greater:
      c.pass = lhs > rhs;
      break;
    case Relation::greater_equal:
      c.pass = lhs >= rhs;
      break;
    case Relation::less:
      c.pass = lhs < rhs;
      break;
  }
  // Only strict conditions have a knife edge worth flagging.
  if (rel != Relation::greater_equal) c.marginal = std::abs(lhs - rhs) < kMarginalBand;
  return c;
}

}  // namespace

ModelParams example_two_params() {
  ModelParams p;
  p.wage_high_skill = 1.0;
  p.wage_low_skill = 0.6;
  p.wage_assimilated = 0.53;
  p.wage_non_assimilated = 0.3;
  p.externality = 0.35;
  p.skill_cost = 0.7;
  p.assimilation_cost = 0.2;
  p.deprivation_weight = 0.5;
  p.migrant_ratio = 0.1;
  p.natives = 1.0;
  p.allowance = 0.0;
  return p;
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

ValidationReport validate(const ModelParams& params) {
  for (const auto& f : kFields) {
    if (!std::isfinite(params.*(f.member)))
      throw InputError(std::string("parameter ") + f.key + " is not finite");
  }

  const double beta = params.deprivation_weight;
  const double m = params.migrant_ratio;
  const double gap = params.skill_gap();
  const double relative = beta / (1.0 + m);

  ValidationReport r;
  auto add = [&](std::string name, std::string text, double lhs, double rhs,
                 Relation rel) {
    r.checks.push_back(make_check(std::move(name), std::move(text), lhs, rhs, rel));
  };

  add("I_HS>I_LS", "I_HS > I_LS", params.wage_high_skill, params.wage_low_skill,
      Relation::greater);
  add("I_LS>0", "I_LS > 0", params.wage_low_skill, 0.0, Relation::greater);
  add("I_A>I_NA", "I_A > I_NA", params.wage_assimilated,
      params.wage_non_assimilated, Relation::greater);
  add("I_NA>0", "I_NA > 0", params.wage_non_assimilated, 0.0, Relation::greater);
  add("I_LS-m*c_A>I_A", "I_LS - m*c_A > I_A",
      params.wage_low_skill - m * params.assimilation_cost,
      params.wage_assimilated, Relation::greater);
  add("beta>0", "beta > 0", beta, 0.0, Relation::greater);
  add("beta<1", "beta < 1", beta, 1.0, Relation::less);
  add("m>0", "m > 0", m, 0.0, Relation::greater);
  add("m<1", "m < 1", m, 1.0, Relation::less);
  add("N>0", "N > 0", params.natives, 0.0, Relation::greater);
  add("A>=0", "A >= 0", params.allowance, 0.0, Relation::greater_equal);
  add("A<c_A", "A < c_A", params.allowance, params.assimilation_cost,
      Relation::less);

  add("Eq5", "c_HS > I_HS - I_LS", params.skill_cost, gap, Relation::greater);
  add("Eq8", "beta/(1+m)*(I_HS - I_LS) > (1-beta)*I_E", relative * gap,
      (1.0 - beta) * params.externality, Relation::greater);
  add("Eq9", "c_HS > (1-beta)*I_E  [implied by Eq5 and Eq8]", params.skill_cost,
      (1.0 - beta) * params.externality, Relation::greater);
  add("Eq10", "(1-beta)*(I_A + I_E - I_NA) > beta/(1+m)*(I_HS - I_A)",
      (1.0 - beta) *
          (params.wage_assimilated + params.externality - params.wage_non_assimilated),
      relative * (params.wage_high_skill - params.wage_assimilated),
      Relation::greater);

  r.overall = true;
  for (const auto& c : r.checks) r.overall = r.overall && c.pass;
  return r;
}

ModelParams load_params(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed parameter document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "parameter document must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& f : kFields) known = known || key == f.key;
    if (!known) throw ParseError(key, "unknown parameter key: " + key);
  }

  ModelParams p;
  for (const auto& f : kFields) {
    auto it = doc.find(f.key);
    if (it == doc.end()) {
      if (f.required) throw ParseError(f.key, std::string("missing parameter: ") + f.key);
      continue;
    }
    if (!it->is_number())
      throw ParseError(f.key, std::string("parameter must be a number: ") + f.key);
    const double v = it->get<double>();
    if (!std::isfinite(v))
      throw ParseError(f.key, std::string("parameter is not finite: ") + f.key);
    p.*(f.member) = v;
  }
  return p;
}

ModelParams load_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open parameter file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_params(ss.str());
}

std::string dump_params(const ModelParams& params) {
  json doc = json::object();
  for (const auto& f : kFields) doc[f.key] = params.*(f.member);
  return doc.dump(2);
}

ValidationError::ValidationError(ValidationReport report)
    : Error([&] {
        std::string msg = "parameters are not admissible; failed checks:";
        for (const auto& n : report.failed()) msg += " " + n;
        return msg;
      }()),
      report_(std::move(report)) {}

ValidatedParams ValidatedParams::check(const ModelParams& params) {
  auto report = validate(params);
  if (!report.overall) throw ValidationError(std::move(report));
  return ValidatedParams(params, false);
}

ValidatedParams ValidatedParams::unchecked(const ModelParams& params) {
  return ValidatedParams(params, true);
}

ValidatedParams ValidatedParams::with_allowance(double a) const {
  auto p = params_.with_allowance(a);
  return forced_ ? unchecked(p) : check(p);
}

ModelParams sample_admissible(std::mt19937_64& rng, int max_retries) {
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    ModelParams p;
    p.wage_high_skill = uniform(0.5, 2.0);
    p.wage_low_skill = uniform(0.0, p.wage_high_skill);
    p.deprivation_weight = uniform(0.05, 0.95);
    p.migrant_ratio = uniform(0.01, 0.9);
    const double gap = p.skill_gap();
    p.skill_cost = uniform(gap, 3.0 * gap);
    p.assimilation_cost = uniform(0.0, 0.5);
    p.wage_non_assimilated = uniform(0.0, 0.8 * p.wage_low_skill);
    const double ceiling = p.wage_low_skill - p.migrant_ratio * p.assimilation_cost;
    if (ceiling <= p.wage_non_assimilated) continue;
    p.wage_assimilated = uniform(p.wage_non_assimilated, ceiling);
    const double beta = p.deprivation_weight;
    p.externality =
        uniform(0.0, beta / ((1.0 + p.migrant_ratio) * (1.0 - beta)) * gap);
    p.natives = 1.0;
    p.allowance = 0.0;
    if (validate(p).overall) return p;
  }
  throw Error("admissible parameter sampler exhausted its retry budget");
}

}  // namespace coevo
