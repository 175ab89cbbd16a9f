#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "coevo/dynamics.hpp"
#include "coevo/welfare.hpp"

namespace coevo {

inline constexpr const char* kVersion = "0.1.0";

struct RunManifest {
  std::string command;
  ModelParams params;
  bool forced = false;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::string timestamp;  // ISO 8601, UTC
};

/// Timestamp for manifests: SOURCE_DATE_EPOCH when set, else the clock.
std::string manifest_timestamp();

/// Locale-independent, 17 significant digits.
std::string format_number(double x);

nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const Thresholds& t);
nlohmann::json to_json(const SteadyState& s);
nlohmann::json to_json(const Trajectory& t);
nlohmann::json to_json(const ClosedTrajectory& t);
nlohmann::json to_json(const BasinMap& b);
nlohmann::json to_json(const VectorFieldGrid& g);
nlohmann::json to_json(const WelfareReport& w);
nlohmann::json to_json(const SweepRow& r);
nlohmann::json to_json(const RunManifest& m);

/// {"manifest": ..., "result": ...}
nlohmann::json envelope(const RunManifest& m, nlohmann::json result);

void write_csv(std::ostream& out, const Trajectory& t);         // t,p,q
void write_csv(std::ostream& out, const ClosedTrajectory& t);   // t,q
void write_csv(std::ostream& out, const VectorFieldGrid& g);    // p,q,dp,dq
void write_csv(std::ostream& out, const std::vector<ClosedFieldPoint>& g);  // q,dq
void write_csv(std::ostream& out, const BasinMap& b);           // p,q,label

}  // namespace coevo
