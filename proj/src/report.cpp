#include "cobord2/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cobord2 {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Unknown: return "unknown";
  }
  return "unknown";
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& c : other.checks) checks.push_back(c);
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.status == CheckStatus::Pass; });
}

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [s](const CheckRecord& c) { return c.status == s; }));
}

std::string format_real(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

// Written by hand rather than through json::dump so the float format is pinned.
std::string VerificationReport::to_json() const {
  std::vector<const CheckRecord*> sorted;
  sorted.reserve(checks.size());
  for (const auto& c : checks) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckRecord* a, const CheckRecord* b) { return a->name < b->name; });

  std::string out = "{\n";
  out += "  \"suite\": " + quote(suite) + ",\n";
  out += "  \"config\": " + config.dump() + ",\n";
  out += "  \"summary\": {\"pass\": " + std::to_string(count(CheckStatus::Pass)) +
         ", \"fail\": " + std::to_string(count(CheckStatus::Fail)) +
         ", \"unknown\": " + std::to_string(count(CheckStatus::Unknown)) + "},\n";
  out += "  \"checks\": [";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& c = *sorted[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"name\": " + quote(c.name) + ", \"status\": " + quote(to_string(c.status)) +
           ", \"residual\": " + format_real(c.residual) + ", \"seed\": " + std::to_string(c.seed);
    if (!c.detail.empty()) out += ", \"detail\": " + quote(c.detail);
    out += "}";
  }
  out += sorted.empty() ? "]" : "\n  ]";
  if (wall_time_s) out += ",\n  \"wall_time_s\": " + format_real(*wall_time_s);
  out += "\n}\n";
  return out;
}

}  // namespace cobord2
