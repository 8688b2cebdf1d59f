#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "crancost/errors.hpp"
#include "crancost/scenario_config.hpp"

using namespace crancost;

TEST_SUITE("scenario-config") {

TEST_CASE("empty file gives the paper-default preset") {
  const auto c = parse_config("");
  CHECK(c.lambda0 == 170.0);
  CHECK(c.sigma2 == 0.5);
  CHECK(c.lambda3 == 3.0);
  const Scenario s = resolve(c);
  CHECK(s.backhaul_intensity() == 5.0);
  CHECK(s.base_stations.sigma * s.base_stations.sigma == doctest::Approx(0.5));
  CHECK(s.bs_intensity() == doctest::Approx(50.0).epsilon(1e-3));
  CHECK(s.base_stations.mean_offspring == 4.0);
  CHECK(s.equipment.c_macro == 50000);
  CHECK(s.equipment.c_micro == 20000);
  CHECK(s.equipment.c_mw == 50000);
  CHECK(s.equipment.c_of == 5000);
  CHECK(s.equipment.c_dc == 40000);
  CHECK(s.links.bs_backhaul.fiber.infra_base == 100000);
  CHECK(s.links.backhaul_dc.microwave.infra_base == 10000);
  CHECK(s.links.user_bs.capacity_exponent == 4);
  CHECK(s.links.processing_base == doctest::Approx(653.54).epsilon(1e-3));
}

TEST_CASE("range violations name the key") {
  try {
    parse_config("[geometry]\np = 1.5\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "geometry.p");
  }
  CHECK_THROWS_AS(parse_config("[geometry]\nlambda3 = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[geometry]\nlambda0 = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[geometry]\nlambda9 = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[nonsense]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("lambda0 = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[complexity]\nsnr = uniform:1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sweep]\nvalues = 3,2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[complexity]\nzeta = 1.5\n"), ConfigError);
}

TEST_CASE("inline comments") {
  const auto c = parse_config("[geometry]\nlambda3 = 2.5   ; data centers\nlambda0 = 100 # users\n");
  CHECK(c.lambda3 == 2.5);
  CHECK(c.lambda0 == 100.0);
}

TEST_CASE("DRAN architecture") {
  const auto c = parse_config("[scenario]\narchitecture = DRAN\n");
  const Scenario s = resolve(c);
  CHECK(s.architecture == Architecture::kDran);
  CHECK(s.dc_cost() == 0.0);
  CHECK(s.macro_cost() == 50000);
  // Distributed processing costs more than pooled processing.
  CHECK(s.links.processing_base > resolve(paper_default_config()).links.processing_base);
}

TEST_CASE("offset selects intensity and processing line") {
  const auto c = parse_config("[scenario]\ngamma_offset_db = 0.4\n");
  const Scenario s = resolve(c);
  CHECK(s.bs_intensity() == doctest::Approx(51.2).epsilon(0.5 / 51.2));
  CHECK(s.links.processing_base == doctest::Approx(processing_cost_rate(0.096, 0.0036, s.bs_intensity(), 20000, 170)));
  CHECK_THROWS_AS(resolve(parse_config("[scenario]\ngamma_offset_db = 0.5\n")), ConfigError);
  const auto custom = parse_config(
      "[scenario]\ngamma_offset_db = 0.5\n[geometry]\nlambda1c = 11\n"
      "[complexity]\nprocessing_slope = 0.1\nprocessing_intercept = 0.002\n");
  const Scenario t = resolve(custom);
  CHECK(t.bs_intensity() == doctest::Approx(55.0));
  CHECK(t.links.processing_base == doctest::Approx((0.1 * 55 + 0.002) * 20000 / 170));
}

TEST_CASE("explicit processing base and pooling ratio overrides") {
  const auto c = parse_config("[costs]\na23_processing = 100\n");
  CHECK(resolve(c).links.processing_base == 100.0);
  auto d = parse_config("[complexity]\ndran_pooling_ratio = 2\n[scenario]\narchitecture = DRAN\n");
  CHECK(resolve(d).links.processing_base ==
        doctest::Approx(processing_cost_rate(0.111 * 2, 0.0, resolve(d).bs_intensity(), 20000, 170)));
}

TEST_CASE("config text round trip") {
  auto c = parse_config(
      "[geometry]\nlambda0 = 123.25\np = 0.3\nlambda1c = 9.5\n"
      "[costs]\nalpha = 0.7\nb12_of = 0.1\nc2_mode = normalized\n"
      "[complexity]\nsnr = lognormal:8,4\nmcs_rates = 0.5,1,2\n"
      "[analysis]\nj_form = independent\nuser_distance = nearest_neighbor\n"
      "[sweep]\naxis = p\nvalues = 0,0.5,1\narchitectures = DRAN,CloudRAN@0.9dB\n"
      "[simulation]\nwrap = false\nreps = 77\nnormalization = realized\n");
  const std::string text = format_config(c);
  const auto again = parse_config(text);
  CHECK(format_config(again) == text);
  CHECK(again.lambda0 == 123.25);
  CHECK(again.sweep.architectures[1] == ArchitectureSpec{Architecture::kCloudRan, 0.9});
  CHECK(config_hash(again) == config_hash(c));
  CHECK(total_cost(resolve(again)).total_per_km2 == total_cost(resolve(c)).total_per_km2);
  CHECK_FALSE(again.processing_base.has_value());
  CHECK(format_config(paper_default_config()).find("lambda1c") == std::string::npos);
  c.lambda0 = 124;
  CHECK(config_hash(c) != config_hash(again));
}

TEST_CASE("file round trip and I/O errors") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "crancost_roundtrip_test.ini").string();
  auto c = paper_default_config();
  c.lambda3 = 2.25;
  c.equipment.c_micro = 1.0 / 3.0;
  write_config(c, path);
  const auto back = load_config(path);
  CHECK(back.lambda3 == 2.25);
  CHECK(back.equipment.c_micro == 1.0 / 3.0);
  CHECK(format_config(back) == format_config(c));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config(path), IoError);
  CHECK_THROWS_AS(load_scenario(path), IoError);
  CHECK_THROWS_AS(preset_config("nope"), ConfigError);
}

TEST_CASE("architecture labels") {
  CHECK(ArchitectureSpec{Architecture::kDran, 0}.label() == "DRAN");
  CHECK(ArchitectureSpec{Architecture::kCloudRan, 0}.label() == "CloudRAN@0dB");
  CHECK(ArchitectureSpec{Architecture::kCloudRan, 0.4}.label() == "CloudRAN@0.4dB");
  CHECK(ArchitectureSpec::parse("CloudRAN@0.9dB").gamma_offset_db == 0.9);
  CHECK(ArchitectureSpec::parse("DRAN").architecture == Architecture::kDran);
  CHECK_THROWS_AS(ArchitectureSpec::parse("CRAN"), ParameterError);
  CHECK(parse_axis("sigma2") == SweepAxis::kSigma2);
  CHECK_THROWS_AS(parse_axis("beta"), ParameterError);
}

}
