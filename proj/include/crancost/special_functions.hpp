#pragma once

namespace crancost {

/// Scaled complementary error function exp(x^2) * erfc(x).
///
/// Direct product for x < 2, a Lentz-evaluated continued fraction for
/// 2 <= x < 1e8 and the two-term asymptotic expansion beyond that. Finite for
/// every finite x >= 0; negative x falls back to the direct product, which
/// overflows for x < about -26.
double erfcx(double x);

/// exp(x^2) * erfc(x) evaluated literally. Overflows/underflows to inf*0 for
/// x above about 26.5; kept as a cross-check for erfcx.
double erfcx_naive(double x);

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

}  // namespace crancost
