#include "hr13/runner/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hr13::runner {

namespace {

void dump(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(std::max(indent, 0) * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(std::max(indent, 0) * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map order: sorted keys
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(key).dump() + (indent > 0 ? ": " : ":");
        dump(value, indent, depth + 1, out);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump(j[i], indent, depth + 1, out);
      }
      out += nl + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : Json(format_double(v)).dump();
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_deterministic(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

bool RunReport::passed() const {
  if (error) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ExitCode RunReport::exit_code() const {
  if (error) {
    if (error->kind == "config") return ExitCode::config_error;
    if (error->kind == "precondition") return ExitCode::precondition;
    return ExitCode::numerical;
  }
  return passed() ? ExitCode::ok : ExitCode::check_failed;
}

Json to_json(const RunReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["suite"] = c.suite;
    e["relation"] = c.relation;
    e["measured"] = c.measured;
    e["expected"] = c.expected ? Json(*c.expected) : Json(nullptr);
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    checks.push_back(std::move(e));
  }
  Json j;
  j["config"] = r.config;
  j["checks"] = std::move(checks);
  j["artifacts"] = r.artifacts;
  j["status"] = r.error ? "error" : (r.passed() ? "pass" : "fail");
  j["exit_code"] = static_cast<int>(r.exit_code());
  j["error"] = r.error ? Json{{"kind", r.error->kind}, {"message", r.error->message}} : Json(nullptr);
  return j;
}

std::string emit_report(const RunReport& r, Format format) {
  if (format == Format::json) return dump_deterministic(to_json(r)) + "\n";

  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.suite.size() + c.name.size() + 1);
  std::ostringstream os;
  for (const auto& c : r.checks) {
    std::string label = c.suite + ":" + c.name;
    label.resize(width, ' ');
    os << label << "  " << (c.pass ? "PASS" : "FAIL") << "  measured=" << format_double(c.measured);
    if (c.expected) os << " expected=" << format_double(*c.expected);
    if (c.relation == "le") os << " limit<=" << format_double(c.tolerance);
    else if (c.relation == "ge") os << " limit>=" << format_double(c.tolerance);
    else if (c.relation == "close") os << " tolerance=" << format_double(c.tolerance);
    os << "\n";
  }
  if (r.error) os << "error (" << r.error->kind << "): " << r.error->message << "\n";
  os << "status: " << (r.error ? "error" : (r.passed() ? "pass" : "fail")) << "\n";
  return os.str();
}

}  // namespace hr13::runner
