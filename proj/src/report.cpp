#include "regulab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "regulab/errors.hpp"

namespace regulab {

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

// JSON has no infinities or NaN; encode them as strings.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const nlohmann::ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  std::string s = j.get<std::string>();
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

CheckRecord make_record(std::string name, double lhs, double rhs, double tol) {
  return make_residual_record(std::move(name), lhs, rhs, std::abs(lhs - rhs), tol);
}

CheckRecord make_residual_record(std::string name, double lhs, double rhs, double residual, double tol) {
  CheckRecord r{std::move(name), lhs, rhs, residual, tol, false};
  r.pass = residual <= tol;
  return r;
}

bool Report::pass() const { return first_failure() == nullptr; }

const CheckRecord* Report::first_failure() const {
  for (auto& r : records)
    if (!r.pass) return &r;
  return nullptr;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["params"] = params;
  auto recs = nlohmann::ordered_json::array();
  for (auto& r : records) {
    nlohmann::ordered_json o;
    o["name"] = r.name;
    o["lhs"] = number(r.lhs);
    o["rhs"] = number(r.rhs);
    o["residual"] = number(r.residual);
    o["tol"] = number(r.tol);
    o["pass"] = r.pass;
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  j["pass"] = pass();
  j["seconds"] = seconds;
  j["version"] = version;
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

Report Report::from_json(const nlohmann::ordered_json& j) {
  Report r;
  try {
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    for (auto& o : j.at("records")) {
      CheckRecord c;
      c.name = o.at("name").get<std::string>();
      c.lhs = read_number(o.at("lhs"));
      c.rhs = read_number(o.at("rhs"));
      c.residual = read_number(o.at("residual"));
      c.tol = read_number(o.at("tol"));
      c.pass = o.at("pass").get<bool>();
      r.records.push_back(std::move(c));
    }
    r.seconds = j.at("seconds").get<double>();
    r.version = j.at("version").get<std::string>();
    if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed report: ") + e.what());
  }
  if (j.at("pass").get<bool>() != r.pass()) throw InconsistentData("report pass flag disagrees with its records");
  return r;
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "name,lhs,rhs,residual,tol,pass\n";
  for (auto& r : records) {
    std::string name = r.name;
    if (name.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : name) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      name = q + "\"";
    }
    out << name << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.residual) << ',' << fmt(r.tol) << ','
        << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string Report::to_table() const {
  std::size_t width = 4;
  for (auto& r : records) width = std::max(width, r.name.size());
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %22s  %22s  %10s  %8s  %s\n", int(width), "name", "lhs", "rhs",
                "residual", "tol", "pass");
  out << line;
  const CheckRecord* bad = first_failure();
  for (auto& r : records) {
    std::snprintf(line, sizeof line, "%-*s  %22.15g  %22.15g  %10.3g  %8.1e  %s%s\n", int(width), r.name.c_str(),
                  r.lhs, r.rhs, r.residual, r.tol, r.pass ? "ok" : "FAIL", &r == bad ? "  <== first failure" : "");
    out << line;
  }
  for (auto& w : warnings) out << "warning: " << w << '\n';
  out << (pass() ? "PASS" : "FAIL") << " (" << records.size() << " checks)\n";
  return out.str();
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || !std::isfinite(v)) throw DomainError("bad grid '" + spec + "'");
    parts.push_back(v);
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw DomainError("grid must be a:b:step, got '" + spec + "'");
  double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0) || b < a) throw DomainError("grid needs a <= b and step > 0");
  double count = std::floor((b - a) / step + 1e-9);
  if (count > 1e6) throw DomainError("grid has too many points");
  std::vector<double> out;
  for (long k = 0; k <= static_cast<long>(count); ++k) {
    double v = a + k * step;
    // Snap values like 0.30000000000000004 onto the decimal grid.
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

}  // namespace regulab
