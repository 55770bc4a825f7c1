#pragma once

// Machine-readable reporting: named residual checks with tolerances and
// verdicts, JSON (schema 1) and RFC-4180 CSV emission.  Field order is fixed
// and numbers are printed with 17 significant digits, so identical runs give
// byte-identical files and values round-trip exactly.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace massgap {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CheckEntry {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  bool operator==(const CheckEntry&) const = default;
};

struct Provenance {
  std::string version = "1.0.0";
  std::uint64_t seed = 0;
  std::string grid;

  bool operator==(const Provenance&) const = default;
};

struct ResidualReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CheckEntry> checks;
  Provenance provenance;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void add_check(const std::string& name, double value, double tolerance) {
    checks.push_back({name, value, tolerance, std::abs(value) <= tolerance});
  }

  void add_check_verdict(const std::string& name, double value,
                         double tolerance, bool pass_) {
    checks.push_back({name, value, tolerance, pass_});
  }

  void add_param(const std::string& name, double v) {
    params.emplace_back(name, fmt17(v));
  }

  void add_param_str(const std::string& name, const std::string& v);

  bool operator==(const ResidualReport&) const = default;
};

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline void ResidualReport::add_param_str(const std::string& name,
                                          const std::string& v) {
  params.emplace_back(name, "\"" + detail::json_escape(v) + "\"");
}

// Fixed-schema writer; nlohmann handles parsing, but emission is done by
// hand so the 17-digit number format and the field order are guaranteed.
inline std::string report_to_json(const ResidualReport& r) {
  std::string out;
  out += "{\n  \"schema\": 1,\n";
  out += "  \"command\": \"" + detail::json_escape(r.command) + "\",\n";
  out += "  \"params\": {";
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + detail::json_escape(r.params[i].first) + "\": " +
           r.params[i].second;
  }
  out += "},\n  \"checks\": [\n";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const CheckEntry& c = r.checks[i];
    out += "    {\"name\": \"" + detail::json_escape(c.name) +
           "\", \"value\": " + fmt17(c.value) +
           ", \"tolerance\": " + fmt17(c.tolerance) +
           ", \"pass\": " + (c.pass ? "true" : "false") + "}";
    out += (i + 1 < r.checks.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"pass\": " + std::string(r.pass() ? "true" : "false") + ",\n";
  out += "  \"provenance\": {\"version\": \"" +
         detail::json_escape(r.provenance.version) +
         "\", \"seed\": " + std::to_string(r.provenance.seed) +
         ", \"grid\": \"" + detail::json_escape(r.provenance.grid) + "\"}\n";
  out += "}\n";
  return out;
}

inline ResidualReport report_from_json(const std::string& text) {
  // ordered_json keeps the document's param order, which is part of the
  // round-trip contract
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
  if (!j.contains("schema") || j["schema"].get<int>() != 1)
    throw std::invalid_argument("report_from_json: unsupported schema");
  ResidualReport r;
  r.command = j.at("command").get<std::string>();
  if (j.contains("params")) {
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
      if (it.value().is_number())
        r.params.emplace_back(it.key(), fmt17(it.value().get<double>()));
      else
        r.params.emplace_back(it.key(), it.value().dump());
    }
  }
  for (const auto& c : j.at("checks")) {
    CheckEntry e;
    e.name = c.at("name").get<std::string>();
    e.value = c.at("value").get<double>();
    e.tolerance = c.at("tolerance").get<double>();
    e.pass = c.at("pass").get<bool>();
    r.checks.push_back(e);
  }
  const auto& p = j.at("provenance");
  r.provenance.version = p.at("version").get<std::string>();
  r.provenance.seed = p.at("seed").get<std::uint64_t>();
  r.provenance.grid = p.at("grid").get<std::string>();
  return r;
}

// RFC-4180 field quoting: quote when the field contains comma, quote or
// newline; embedded quotes are doubled.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
}

}  // namespace massgap
