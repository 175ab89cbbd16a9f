#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "coevo/errors.hpp"

namespace coevo {

/// Economic parameters of the native/migrant economy plus the policy
/// allowance. Config keys are given next to each field.
struct ModelParams {
  double wage_high_skill = 0.0;      // I_HS
  double wage_low_skill = 0.0;       // I_LS
  double wage_assimilated = 0.0;     // I_A
  double wage_non_assimilated = 0.0; // I_NA
  double externality = 0.0;          // I_E, added income per unit of q
  double skill_cost = 0.0;           // c_HS
  double assimilation_cost = 0.0;    // c_A
  double deprivation_weight = 0.0;   // beta
  double migrant_ratio = 0.0;        // m = M / N
  double natives = 1.0;              // N
  double allowance = 0.0;            // A

  double skill_gap() const { return wage_high_skill - wage_low_skill; }
  double migrants() const { return migrant_ratio * natives; }
  ModelParams with_allowance(double a) const {
    ModelParams out = *this;
    out.allowance = a;
    return out;
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// The parameter sets used throughout the tests and documentation.
ModelParams example_two_params();

struct ValidationCheck {
  std::string name;
  std::string inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  // |lhs - rhs| below kMarginalBand: passes or fails on a knife edge.
  bool marginal = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool overall = false;

  const ValidationCheck* find(std::string_view name) const;
  std::vector<std::string> failed() const;
};

inline constexpr double kMarginalBand = 1e-12;

/// Evaluates every admissibility condition. Throws InputError when a field
/// is not finite; a violated inequality is reported, never thrown.
ValidationReport validate(const ModelParams& params);

/// Parses a flat JSON object with keys I_HS, I_LS, I_A, I_NA, I_E, c_HS,
/// c_A, beta, m and optional N (default 1) and A (default 0). Unknown keys,
/// missing keys and non-numeric values raise ParseError naming the key.
/// No economic validation is done here.
ModelParams load_params(std::string_view json_text);
ModelParams load_params_file(const std::filesystem::path& path);
std::string dump_params(const ModelParams& params);

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Parameters that passed `validate`, or that the caller explicitly forced
/// through. Analysis entry points only accept this type.
class ValidatedParams {
 public:
  /// Throws ValidationError carrying the report when any check fails.
  static ValidatedParams check(const ModelParams& params);
  /// Skips validation. Results are unsupported outside the admissible set.
  static ValidatedParams unchecked(const ModelParams& params);

  const ModelParams& get() const noexcept { return params_; }
  const ModelParams* operator->() const noexcept { return &params_; }
  bool forced() const noexcept { return forced_; }

  /// Same parameters at another allowance, re-validated unless forced.
  ValidatedParams with_allowance(double a) const;

 private:
  ValidatedParams(const ModelParams& p, bool forced) : params_(p), forced_(forced) {}
  ModelParams params_;
  bool forced_ = false;
};

/// Rejection sampler over admissible parameter sets (allowance 0, N = 1).
/// Throws Error after `max_retries` consecutive rejections.
ModelParams sample_admissible(std::mt19937_64& rng, int max_retries = 10000);

}  // namespace coevo
