#include "crancost/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace crancost {

double erfcx_naive(double x) { return std::exp(x * x) * std::erfc(x); }

double erfcx(double x) {
  if (x < 2.0) return erfcx_naive(x);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  if (x >= 1e8) {
    const double inv2 = 1.0 / (x * x);
    return inv_sqrt_pi / x * (1.0 - 0.5 * inv2);
  }
  // erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
  // partial numerators a_n = n/2, evaluated with the modified Lentz method.
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return inv_sqrt_pi / f;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

}  // namespace crancost
