#include <cmath>

#include "doctest.h"

#include "crancost/dimensioning.hpp"
#include "crancost/errors.hpp"

using namespace crancost;

TEST_SUITE("dimensioning") {

TEST_CASE("spectral efficiency at the quoted operating point") {
  CHECK(spatial_avg_rate(170, 50.03) == doctest::Approx(1.0847).epsilon(0.001 / 1.0847));
  CHECK(spatial_avg_rate(170, 50.0) == doctest::Approx(1.08465).epsilon(1e-4 / 1.08465));
  CHECK(spatial_avg_rate(170, 1e-12) < 1e-6);
}

TEST_CASE("large-argument regime collapses to 2 sqrt(lambda1/lambda0)") {
  for (double l0 : {50.0, 170.0, 1000.0}) {
    for (double l1 : {1.0, 50.0, 400.0}) {
      CHECK(spatial_avg_rate(l0, l1) == doctest::Approx(2 * std::sqrt(l1 / l0)).epsilon(1e-9));
    }
  }
  CHECK_FALSE(std::isfinite(spatial_avg_rate_naive(170, 50)));
}

TEST_CASE("inversion reproduces the quoted intensities") {
  CHECK(invert_for_bs_intensity(1.0847, 170) == doctest::Approx(50.0).epsilon(0.01));
  CHECK(invert_for_bs_intensity(1.0847 + 0.01322, 170) == doctest::Approx(51.2).epsilon(0.5 / 51.2));
  CHECK(invert_for_bs_intensity(1.0847 + 0.029751, 170) == doctest::Approx(52.8).epsilon(0.5 / 52.8));
  CHECK(bs_intensity_for_offset(0.4, 170) == doctest::Approx(invert_for_bs_intensity(1.09792, 170)).epsilon(1e-12));
  CHECK_THROWS_AS(invert_for_bs_intensity(0.0, 170), ParameterError);
}

TEST_CASE("square-root law and round trip") {
  for (double l1 : {0.5, 12.0, 50.0, 333.0}) {
    CHECK(spatial_avg_rate(170, 4 * l1) / spatial_avg_rate(170, l1) == doctest::Approx(2.0).epsilon(1e-9));
    const double back = invert_for_bs_intensity(spatial_avg_rate(170, l1), 170);
    CHECK(back == doctest::Approx(l1).epsilon(1e-9));
  }
  CHECK(spatial_avg_rate(170, 51) > spatial_avg_rate(170, 50));
}

TEST_CASE("scaled and naive evaluation agree at moderate arguments") {
  const double pi = 3.14159265358979323846;
  for (double x : {0.01, 0.3, 1.0, 2.5, 5.0, 12.0, 20.0}) {
    RadioParams r;
    r.p_tx_dbm = 30.0;
    const double snr = std::pow(4.0 * x / (pi * pi), 2);  // lambda0 = 1
    r.noise_dbm = 30.0 - 10.0 * std::log10(snr);
    const double a = spatial_avg_rate(1.0, 3.0, r);
    const double b = spatial_avg_rate_naive(1.0, 3.0, r);
    REQUIRE(std::isfinite(b));
    CHECK(std::abs(a - b) <= 1e-10 * b);
  }
}

TEST_CASE("power budget surfaces the formula values") {
  const auto pb = power_params(600, 10e6);
  CHECK(pb.radio.p_tx_dbm == 46.0);
  CHECK(pb.radio.noise_dbm == -146.22);
  CHECK(pb.subcarrier_gain_db == doctest::Approx(27.78).epsilon(1e-3));
  CHECK(pb.formula_p_tx_dbm == doctest::Approx(76.0).epsilon(1e-3));
  CHECK(pb.formula_noise_dbm == doctest::Approx(-104.0).epsilon(1e-9));
  CHECK(pb.radio.p_tx_w() == doctest::Approx(39.81).epsilon(1e-3));
  CHECK_THROWS_AS(power_params(0, 10e6), ParameterError);
}

TEST_CASE("rate offsets and the demand helper") {
  CHECK(rate_offset(0.0) == 0.0);
  CHECK(rate_offset(0.4) == 0.01322);
  CHECK(rate_offset(0.9) == 0.029751);
  CHECK_THROWS_AS(rate_offset(0.5), ParameterError);
  CHECK(spectral_efficiency_target(0.9) == doctest::Approx(1.114451));
  CHECK(spectral_efficiency_from_demand(10e6) == doctest::Approx(1.408).epsilon(1e-3));
}

TEST_CASE("invalid intensities") {
  CHECK_THROWS_AS(spatial_avg_rate(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(spatial_avg_rate(1.0, -1.0), ParameterError);
}

}
