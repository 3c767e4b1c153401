#pragma once

#include <string>
#include <utility>
#include <vector>

namespace geodecay {

enum class ReportStatus { PASS, FAIL, NUMERICAL_FAILURE };

const char* to_string(ReportStatus s);

// Result of one verification scenario. Keys keep insertion order so the
// serialized output is reproducible. wall_time_s is informational only and
// deliberately left out of the serialized forms (they must be byte-identical
// across runs).
struct VerificationReport {
  std::string scenario_id;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> computed;
  std::vector<std::pair<std::string, double>> tolerances;
  ReportStatus status = ReportStatus::PASS;
  std::string detail;
  double wall_time_s = 0.0;

  void put_input(const std::string& k, double v) { inputs.emplace_back(k, v); }
  void put(const std::string& k, double v) { computed.emplace_back(k, v); }
  void put_tolerance(const std::string& k, double v) { tolerances.emplace_back(k, v); }

  // Marks FAIL unless ok; never upgrades a failure back to PASS.
  void require(bool ok, const std::string& what);
  bool all_computed_finite() const;
};

// 17 significant digits; round-trips doubles exactly.
std::string format_double(double v);

std::string reports_to_json(const std::vector<VerificationReport>& reports);
// One row per (scenario, computed quantity): scenario_id,key,value,status.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

// Throws std::runtime_error with the path in the message on i/o failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace geodecay
