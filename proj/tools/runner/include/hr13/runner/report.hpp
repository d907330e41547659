#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hr13::runner {

using Json = nlohmann::json;

enum class ExitCode : int { ok = 0, check_failed = 1, config_error = 2, precondition = 3, numerical = 4 };

struct Check {
  std::string name;
  std::string suite;
  std::string relation;  ///< "le", "ge", "close" or "true"
  double measured = 0.0;
  std::optional<double> expected;
  double tolerance = 0.0;  ///< the limit for "le"/"ge", the allowed |difference| for "close"
  bool pass = false;
};

struct RunError {
  std::string kind;  ///< "config", "precondition" or "numerical"
  std::string message;
};

struct RunReport {
  Json config = Json::object();
  std::vector<Check> checks;
  std::vector<std::string> artifacts;  ///< file names relative to the output directory
  std::optional<RunError> error;
  double wall_time_s = 0.0;            ///< never serialized into artifacts

  bool passed() const;
  ExitCode exit_code() const;
};

/// Sorted keys; floating-point values printed with 17 significant digits;
/// non-finite values become the strings "inf", "-inf" and "nan".
/// A non-positive indent gives the compact single-line form.
std::string dump_deterministic(const Json& j, int indent = 2);

Json to_json(const RunReport& r);

enum class Format { json, text };

std::string emit_report(const RunReport& r, Format format);

/// 17-significant-digit rendering shared by CSV and text output.
std::string format_double(double v);

}  // namespace hr13::runner
