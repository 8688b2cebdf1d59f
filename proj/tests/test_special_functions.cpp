#include <cmath>
#include <initializer_list>

#include "doctest.h"

#include "crancost/special_functions.hpp"

using namespace crancost;

TEST_SUITE("special-functions") {

TEST_CASE("erfcx at zero and in the direct range") {
  CHECK(erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double x = 0.0; x < 2.0; x += 0.125) {
    const long double ref = std::exp(static_cast<long double>(x) * x) * std::erfc(x);
    CHECK(std::abs(erfcx(x) - static_cast<double>(ref)) <= 1e-13 * static_cast<double>(ref));
  }
}

TEST_CASE("erfcx continued fraction against extended precision") {
  for (double x = 2.0; x <= 26.0; x += 0.37) {
    const long double ref = std::exp(static_cast<long double>(x) * x) * std::erfc(x);
    CHECK(std::abs(erfcx(x) - static_cast<double>(ref)) <= 1e-12 * static_cast<double>(ref));
  }
}

TEST_CASE("erfcx agrees with the naive product where it is finite") {
  for (double x = 0.0; x <= 20.0; x += 0.5) {
    const double naive = erfcx_naive(x);
    REQUIRE(std::isfinite(naive));
    CHECK(std::abs(erfcx(x) - naive) <= 1e-10 * naive);
  }
}

TEST_CASE("erfcx asymptote for large arguments") {
  const double sqrt_pi = std::sqrt(3.14159265358979323846);
  for (double x : {1e4, 1e7, 1e8, 1e12, 1e200}) {
    CHECK(erfcx(x) * x * sqrt_pi == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(std::isfinite(erfcx(1e300)));
  CHECK_FALSE(std::isfinite(erfcx_naive(40.0)));
}

TEST_CASE("decibel conversions") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(0.2) == doctest::Approx(1.04713).epsilon(1e-5));
  CHECK(linear_to_db(db_to_linear(-3.7)) == doctest::Approx(-3.7));
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watt(46.0) == doctest::Approx(39.81).epsilon(1e-3));
  CHECK(watt_to_dbm(dbm_to_watt(46.0)) == doctest::Approx(46.0).epsilon(1e-12));
}

}
