#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "crancost/sweep.hpp"

using namespace crancost;

namespace {

std::string csv(const SweepResult& r) {
  std::ostringstream os;
  emit_csv(r, os);
  return os.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("row count and ordering") {
  SweepSpec spec;
  spec.values = {1.0, 2.0, 3.0};
  const auto r = run_sweep(spec, paper_default_config());
  REQUIRE(r.rows.size() == 12);
  CHECK(r.rows[0].value == 1.0);
  CHECK(r.rows[0].architecture.label() == "DRAN");
  CHECK(r.rows[5].value == 2.0);
  CHECK(r.rows[5].architecture.label() == "CloudRAN@0dB");
  for (const auto& row : r.rows) CHECK(row.error.empty());
}

TEST_CASE("CSV layout") {
  CHECK(csv(SweepResult{}) == std::string(kCsvHeader) + "\n");
  SweepSpec spec;
  spec.values = {3.0};
  spec.architectures = {{Architecture::kCloudRan, 0.0}};
  const auto r = run_sweep(spec, paper_default_config());
  const auto l = lines(csv(r));
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "axis,value,architecture,gamma_offset_db,total_per_km2,equipment,capacity,infrastructure,processing");
  std::vector<std::string> cells;
  std::istringstream is(l[1]);
  for (std::string c; std::getline(is, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 9);
  CHECK(cells[0] == "lambda3");
  CHECK(cells[2] == "CloudRAN@0dB");
  const auto& b = *r.rows[0].breakdown;
  CHECK(std::stod(cells[4]) == doctest::Approx(b.total_per_km2).epsilon(1e-5));
  CHECK(std::stod(cells[5]) + std::stod(cells[6]) + std::stod(cells[7]) + std::stod(cells[8]) ==
        doctest::Approx(b.total_per_km2).epsilon(1e-5));
}

TEST_CASE("identical inputs give identical bytes") {
  SweepSpec spec;
  spec.axis = SweepAxis::kAlpha;
  spec.values = {0, 0.5, 1};
  const auto base = paper_default_config();
  const auto a = run_sweep(spec, base, 1);
  const auto b = run_sweep(spec, base, 3);
  CHECK(csv(a) == csv(b));
  std::ostringstream ja, jb;
  emit_json(a, ja);
  emit_json(b, jb);
  CHECK(ja.str() == jb.str());
}

TEST_CASE("failed rows are reported in place") {
  SweepSpec spec;
  spec.values = {0.0, 1.0};
  spec.architectures = {{Architecture::kCloudRan, 0.0}};
  const auto r = run_sweep(spec, paper_default_config());
  REQUIRE(r.rows.size() == 2);
  CHECK_FALSE(r.rows[0].error.empty());
  CHECK_FALSE(r.rows[0].breakdown.has_value());
  CHECK(r.rows[1].error.empty());
  const auto l = lines(csv(r));
  CHECK(l[1].find("nan") != std::string::npos);
  std::ostringstream js;
  emit_json(r, js);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["rows"][0]["total_per_km2"].is_null());
  CHECK(doc["rows"][0]["error"].is_string());
  CHECK(doc["rows"][1]["error"].is_null());
}

TEST_CASE("JSON mirrors the table with metadata") {
  SweepSpec spec;
  spec.values = {2.0};
  const auto base = paper_default_config();
  const auto r = run_sweep(spec, base);
  std::ostringstream os;
  emit_json(r, os);
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["metadata"]["tool_version"] == kToolVersion);
  CHECK(doc["metadata"]["scenario_hash"].get<std::string>().size() == 16);
  CHECK(doc["metadata"]["seeds"]["complexity"] == base.complexity_seed);
  CHECK(doc["rows"].size() == 4);
  const double v = doc["rows"][1]["total_per_km2"];
  CHECK(format_g6(v) == format_g6(r.rows[1].breakdown->total_per_km2));
}

TEST_CASE("alpha axis rewrites base-station prices") {
  SweepSpec spec;
  spec.axis = SweepAxis::kAlpha;
  spec.values = {0, 0.25, 0.5, 0.75, 1};
  spec.architectures = {{Architecture::kCloudRan, 0.0}, {Architecture::kDran, 0.0}};
  const auto r = run_sweep(spec, paper_default_config());
  double prev = 0.0;
  for (std::size_t i = 0; i < r.rows.size(); i += 2) {
    CHECK(r.rows[i].breakdown->total_per_km2 >= prev);
    prev = r.rows[i].breakdown->total_per_km2;
    // DRAN prices are not scaled.
    CHECK(r.rows[i + 1].breakdown->total_per_km2 == r.rows[1].breakdown->total_per_km2);
  }
}

TEST_CASE("user-intensity axis re-derives the base-station intensity") {
  SweepSpec spec;
  spec.axis = SweepAxis::kLambda0;
  spec.values = {100, 300};
  spec.architectures = {{Architecture::kCloudRan, 0.0}};
  const auto base = paper_default_config();
  const auto r = run_sweep(spec, base);
  for (const auto& row : r.rows) {
    const Scenario s = resolve(apply_axis(base, SweepAxis::kLambda0, row.value));
    CHECK(s.bs_intensity() == doctest::Approx(row.value * 0.25 * 1.0847 * 1.0847).epsilon(1e-6));
    const double lambda1 = row.breakdown->equipment_bs * row.breakdown->dc_intensity / s.bs_equipment_cost();
    CHECK(lambda1 == doctest::Approx(s.bs_intensity()).epsilon(1e-9));
  }
}

}
