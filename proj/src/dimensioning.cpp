#include "crancost/dimensioning.hpp"

#include <cmath>

#include "crancost/errors.hpp"
#include "crancost/special_functions.hpp"

namespace crancost {

namespace {

constexpr double kPi = 3.14159265358979323846;

double snr(const RadioParams& r) { return r.p_tx_w() / r.noise_w(); }

double x_of(double lambda0, const RadioParams& r) { return kPi * kPi * lambda0 / 4.0 * std::sqrt(snr(r)); }

void require_intensities(double lambda0, double lambda1) {
  if (!(lambda0 > 0.0) || !(lambda1 > 0.0) || !std::isfinite(lambda0) || !std::isfinite(lambda1)) {
    throw ParameterError("lambda0 and lambda1 must be positive and finite");
  }
}

}  // namespace

double RadioParams::p_tx_w() const { return dbm_to_watt(p_tx_dbm); }
double RadioParams::noise_w() const { return dbm_to_watt(noise_dbm); }

void RadioParams::validate() const {
  if (!std::isfinite(p_tx_dbm) || !std::isfinite(noise_dbm)) throw ParameterError("radio powers must be finite");
  if (!(n_subcarriers > 0.0) || !(bandwidth_hz > 0.0)) throw ParameterError("subcarriers and bandwidth must be > 0");
  if (!(control_overhead >= 0.0 && control_overhead < 1.0)) throw ParameterError("control overhead must lie in [0,1)");
}

PowerBudget power_params(double n_subcarriers, double bandwidth_hz) {
  if (!(n_subcarriers > 0.0) || !(bandwidth_hz > 0.0)) throw ParameterError("subcarriers and bandwidth must be > 0");
  PowerBudget b;
  b.radio.n_subcarriers = n_subcarriers;
  b.radio.bandwidth_hz = bandwidth_hz;
  b.subcarrier_gain_db = 10.0 * std::log10(n_subcarriers);
  b.formula_p_tx_dbm = 18.22 + b.subcarrier_gain_db + 30.0;
  b.formula_noise_dbm = -174.0 + 10.0 * std::log10(bandwidth_hz);
  return b;
}

double rate_coefficient(double lambda0, const RadioParams& radio) {
  radio.validate();
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw ParameterError("lambda0 must be positive and finite");
  const double s = snr(radio);
  return std::pow(kPi, 2.5) / 2.0 * std::sqrt(lambda0 * s) * erfcx(x_of(lambda0, radio));
}

double spatial_avg_rate(double lambda0, double lambda1, const RadioParams& radio) {
  require_intensities(lambda0, lambda1);
  return rate_coefficient(lambda0, radio) * std::sqrt(lambda1);
}

double spatial_avg_rate_naive(double lambda0, double lambda1, const RadioParams& radio) {
  require_intensities(lambda0, lambda1);
  radio.validate();
  const double s = snr(radio);
  const double x = x_of(lambda0, radio);
  return std::pow(kPi, 2.5) / 2.0 * std::sqrt(lambda0 * lambda1 * s) * (std::erfc(x) * std::exp(x * x));
}

double invert_for_bs_intensity(double target, double lambda0, const RadioParams& radio) {
  if (!(target > 0.0) || !std::isfinite(target)) throw ParameterError("spectral-efficiency target must be > 0");
  const double c = rate_coefficient(lambda0, radio);
  if (!(c > 0.0) || !std::isfinite(c)) throw NumericalError("rate coefficient is not positive and finite", 0.0);
  const double r = target / c;
  return r * r;
}

double rate_offset(double gamma_offset_db) {
  struct Entry { double db, delta; };
  static constexpr Entry table[] = {{0.0, 0.0}, {0.4, 0.01322}, {0.9, 0.029751}};
  for (const auto& e : table) {
    if (std::abs(e.db - gamma_offset_db) < 1e-9) return e.delta;
  }
  throw ParameterError("no rate offset for gamma_offset_db; use 0, 0.4 or 0.9");
}

double spectral_efficiency_target(double gamma_offset_db) {
  return kBaseSpectralEfficiency + rate_offset(gamma_offset_db);
}

double spectral_efficiency_from_demand(double demand_bps, const RadioParams& radio) {
  radio.validate();
  if (!(demand_bps > 0.0)) throw ParameterError("demand must be > 0");
  return demand_bps / (radio.bandwidth_hz * (1.0 - radio.control_overhead));
}

double bs_intensity_for_offset(double gamma_offset_db, double lambda0, const RadioParams& radio) {
  return invert_for_bs_intensity(spectral_efficiency_target(gamma_offset_db), lambda0, radio);
}

}  // namespace crancost
