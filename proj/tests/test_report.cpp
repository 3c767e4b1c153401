#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "geodecay/report.hpp"

using namespace geodecay;

namespace {

VerificationReport sample_report(const std::string& id) {
  VerificationReport r;
  r.scenario_id = id;
  r.put_input("n", 2);
  r.put_input("radius", 0.5);
  r.put("margin", 1.2345678901234567e-3);
  r.put("lhs", 6.283185307179586);
  r.put_tolerance("slack", 1e-8);
  return r;
}

}  // namespace

TEST_CASE("doubles serialize with 17 significant digits and round-trip") {
  const double v = M_PI * 1e-7;
  const std::string s = format_double(v);
  CHECK(std::stod(s) == v);
  CHECK(format_double(std::nan("")) == "null");
}

TEST_CASE("json output parses back to identical values") {
  const std::vector<VerificationReport> reports{sample_report("a")};
  const std::string text = reports_to_json(reports);
  const auto parsed = nlohmann::json::parse(text);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["scenario_id"] == "a");
  CHECK(parsed[0]["status"] == "PASS");
  CHECK(parsed[0]["computed"]["margin"].get<double>() == 1.2345678901234567e-3);
  CHECK(parsed[0]["computed"]["lhs"].get<double>() == 6.283185307179586);
  CHECK(parsed[0]["inputs"]["n"].get<double>() == 2.0);
  CHECK(parsed[0]["tolerances"]["slack"].get<double>() == 1e-8);
}

TEST_CASE("json output is byte-stable across calls") {
  const std::vector<VerificationReport> reports{sample_report("x"), sample_report("y")};
  CHECK(reports_to_json(reports) == reports_to_json(reports));
}

TEST_CASE("csv output has a header and one row per computed quantity") {
  std::vector<VerificationReport> reports{sample_report("a"), sample_report("b")};
  reports[1].status = ReportStatus::FAIL;
  const std::string csv = reports_to_csv(reports);
  std::size_t lines = 0;
  for (char c : csv) lines += (c == '\n');
  CHECK(lines == 1 + 2 * 2);  // header + 2 computed rows per report
  CHECK(csv.rfind("scenario_id,key,value,status\n", 0) == 0);
  CHECK(csv.find("b,margin,") != std::string::npos);
  CHECK(csv.find(",FAIL") != std::string::npos);
}

TEST_CASE("empty report lists serialize to valid containers") {
  const std::vector<VerificationReport> none;
  const auto parsed = nlohmann::json::parse(reports_to_json(none));
  CHECK(parsed.is_array());
  CHECK(parsed.empty());
  CHECK(reports_to_csv(none) == "scenario_id,key,value,status\n");
}

TEST_CASE("require records failures without upgrading them back") {
  VerificationReport r;
  r.require(true, "fine");
  CHECK(r.status == ReportStatus::PASS);
  r.require(false, "first");
  r.require(false, "second");
  r.require(true, "still fine");
  CHECK(r.status == ReportStatus::FAIL);
  CHECK(r.detail == "first; second");
}

TEST_CASE("write_text_file reports the path on failure") {
  CHECK_THROWS_WITH_AS(write_text_file("/nonexistent-dir/x.json", "{}"),
                       doctest::Contains("/nonexistent-dir/x.json"), std::runtime_error);
}
