#include "geodecay/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace geodecay {

const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::PASS: return "PASS";
    case ReportStatus::FAIL: return "FAIL";
    case ReportStatus::NUMERICAL_FAILURE: return "NUMERICAL_FAILURE";
  }
  return "?";
}

void VerificationReport::require(bool ok, const std::string& what) {
  if (ok) return;
  if (status == ReportStatus::PASS) status = ReportStatus::FAIL;
  if (!detail.empty()) detail += "; ";
  detail += what;
}

bool VerificationReport::all_computed_finite() const {
  for (const auto& [k, v] : computed) {
    (void)k;
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void json_escape(std::ostringstream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

void emit_map(std::ostringstream& os, const std::vector<std::pair<std::string, double>>& kv) {
  os << "{";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    if (i) os << ", ";
    json_escape(os, kv[i].first);
    os << ": " << format_double(kv[i].second);
  }
  os << "}";
}

}  // namespace

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << "  {\n    \"scenario_id\": ";
    json_escape(os, r.scenario_id);
    os << ",\n    \"status\": ";
    json_escape(os, to_string(r.status));
    os << ",\n    \"detail\": ";
    json_escape(os, r.detail);
    os << ",\n    \"inputs\": ";
    emit_map(os, r.inputs);
    os << ",\n    \"computed\": ";
    emit_map(os, r.computed);
    os << ",\n    \"tolerances\": ";
    emit_map(os, r.tolerances);
    os << "\n  }" << (i + 1 < reports.size() ? "," : "") << "\n";
  }
  os << "]\n";
  return os.str();
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "scenario_id,key,value,status\n";
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.computed) {
      os << r.scenario_id << ',' << k << ',' << format_double(v) << ',' << to_string(r.status)
         << '\n';
    }
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace geodecay
