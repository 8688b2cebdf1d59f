#pragma once

// Base-station intensity from the spatially averaged downlink spectral
// efficiency of a Poisson network: rate = C(lambda0) * sqrt(lambda1).

namespace crancost {

struct RadioParams {
  double p_tx_dbm = 46.0;
  double noise_dbm = -146.22;
  double n_subcarriers = 600.0;
  double bandwidth_hz = 10e6;
  double control_overhead = 0.29;

  double p_tx_w() const;
  double noise_w() const;
  void validate() const;
};

/// Transmit and noise power: the quoted operating values (used) and the
/// values the printed dB formulas produce for the same inputs (reported).
struct PowerBudget {
  RadioParams radio;
  double formula_p_tx_dbm = 0.0;   // 18.22 + 10 log10(n_subcarriers) + 30
  double formula_noise_dbm = 0.0;  // -174 + 10 log10(bandwidth)
  double subcarrier_gain_db = 0.0; // 10 log10(n_subcarriers)
};

PowerBudget power_params(double n_subcarriers = 600.0, double bandwidth_hz = 10e6);

/// (pi^(5/2)/2) sqrt(lambda0 lambda1 P/N) erfcx(x), x = (pi^2 lambda0/4) sqrt(P/N).
double spatial_avg_rate(double lambda0, double lambda1, const RadioParams& radio = {});

/// Same expression with erfc(x) * exp(x^2) written out; inf*0 for large x.
double spatial_avg_rate_naive(double lambda0, double lambda1, const RadioParams& radio = {});

/// C in rate = C sqrt(lambda1).
double rate_coefficient(double lambda0, const RadioParams& radio = {});

/// lambda1 with spatial_avg_rate(lambda0, lambda1) == target.
double invert_for_bs_intensity(double target, double lambda0, const RadioParams& radio = {});

inline constexpr double kBaseSpectralEfficiency = 1.0847;  // bps/Hz at 10 Mbps per user

/// Rate offset Delta R for gamma_offset in {0, 0.4, 0.9} dB; ParameterError otherwise.
double rate_offset(double gamma_offset_db);

/// kBaseSpectralEfficiency + rate_offset(gamma_offset_db).
double spectral_efficiency_target(double gamma_offset_db);

/// demand / (bandwidth * (1 - control_overhead)). With 10 Mbps and the
/// defaults this gives 1.408 bps/Hz, not the 1.0847 the presets use.
double spectral_efficiency_from_demand(double demand_bps, const RadioParams& radio = {});

/// invert_for_bs_intensity(spectral_efficiency_target(offset), lambda0, radio).
double bs_intensity_for_offset(double gamma_offset_db, double lambda0, const RadioParams& radio = {});

}  // namespace crancost
