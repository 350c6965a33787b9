#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace regulab {

inline constexpr const char* kVersion = "0.3.0";

struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Record with residual |lhs - rhs| and pass iff residual <= tol.
CheckRecord make_record(std::string name, double lhs, double rhs, double tol);
// Record for quantities that are not a difference (e.g. distance to a rational).
CheckRecord make_residual_record(std::string name, double lhs, double rhs, double residual, double tol);

struct Report {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<CheckRecord> records;
  std::vector<std::string> warnings;
  double seconds = 0.0;
  std::string version = kVersion;

  bool pass() const;
  // First record that fails, or nullptr.
  const CheckRecord* first_failure() const;

  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
  std::string to_csv() const;
  std::string to_table() const;
};

// "a:b:step", inclusive of b up to rounding; also a single number.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace regulab
