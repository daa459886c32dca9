#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cobord2 {

enum class CheckStatus { Pass, Fail, Unknown };

std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;
  std::uint64_t seed = 0;
  std::string detail;
};

/// Machine-readable outcome of a verification suite. Serialization is
/// deterministic: checks are emitted sorted by name, keys in a fixed order,
/// reals with 17 significant digits. Wall time is only emitted when set.
struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::optional<double> wall_time_s;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  void merge(const VerificationReport& other);
  bool all_pass() const;
  std::size_t count(CheckStatus s) const;

  std::string to_json() const;
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_real(double v);

}  // namespace cobord2
