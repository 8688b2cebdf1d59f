#pragma once

// Turbo-decoder workload model: per-codeword complexity in bit-iterations per
// channel use, MCS selection thresholds, computational-outage dimensioning of
// a pool of base stations and conversion to server counts and cost.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crancost/seeding.hpp"

namespace crancost {

struct DecoderParams {
  double zeta = 6.0;            // decoder connectivity
  double k_scale = 0.2;         // K(channel outage)
  double channel_outage = 0.1;  // target channel outage probability
  double nu_db = 0.2;           // complexity calibration
  double gamma_offset_db = 0.0;
  double comp_outage = 0.1;     // target computational outage
  double downlink_uplift = 1.4; // downlink processing as a multiple of uplink

  void validate() const;
};

struct McsEntry {
  double rate = 0.0;       // bits / channel use
  double gamma_c = 0.0;    // capacity threshold 2^R - 1
  double gamma_r = 0.0;    // selection threshold incl. calibration and offset
};

struct McsTable {
  std::vector<McsEntry> entries;

  bool empty() const noexcept { return entries.empty(); }
  double lowest_threshold() const;
  /// Highest index k with gamma >= gamma_r[k]; -1 if none.
  int select(double gamma) const noexcept;
};

struct FrameConstants {
  double subframe_s = 0.5e-3;
  double resource_blocks = 45.0;
  double subcarriers_per_block = 12.0;
  double symbols_per_block = 7.0;
  double flop_per_bit_iter = 1000.0;
  double server_flops = 4.0 * 96e9;
  double server_cost = 20000.0;

  double channel_uses_per_second() const noexcept {
    return resource_blocks * subcarriers_per_block * symbols_per_block / subframe_s;
  }
  void validate() const;
};

struct ProcessingDemand {
  double d_outage = 0.0;  // bit-iterations / channel use
  double d_abs = 0.0;     // bit-iterations / s
  double d_flops = 0.0;   // FLOP / s
  double d_unit = 0.0;    // servers
};

/// Per-base-station SNR law used in the outage Monte Carlo. Draws below the
/// lowest MCS selection threshold are rejected (the station is not scheduled).
///   rayleigh:MEAN_DB        exponential power with the given mean (default 10 dB)
///   lognormal:MEAN_DB,SD_DB Gaussian in dB
///   constant:GAMMA          fixed linear SNR
struct SnrDistribution {
  enum class Kind { kRayleigh, kLogNormal, kConstant };
  Kind kind = Kind::kRayleigh;
  double a = 10.0;
  double b = 0.0;

  static SnrDistribution parse(std::string_view spec);
  std::string to_string() const;
  /// One linear SNR, truncated below `floor`.
  double draw(Engine& rng, double floor) const;
  bool degenerate() const noexcept { return kind == Kind::kConstant; }
};

/// max(0, R/log2(zeta-1) * [log2((zeta-2)/(K zeta)) - 2 log2(log2(1+gamma) - R)]).
/// Throws DomainError when log2(1+gamma) <= R.
double decoding_complexity(double gamma, double rate, const DecoderParams& params = {});

McsTable snr_thresholds(const std::vector<double>& rates, const DecoderParams& params = {});

/// 15 rates geometrically spaced over [0.15, 5.55] bits/cu.
std::vector<double> default_mcs_rates();

/// Empirical (1 - comp_outage) quantile of the summed workload of `n_cloud`
/// stations over `n_mc` draws. Draw i uses its own sub-seed, so the result is
/// independent of `threads` and draws are shared across different n_cloud.
double outage_demand(unsigned n_cloud, const SnrDistribution& sampler, const McsTable& mcs,
                     const DecoderParams& params, unsigned n_mc, std::uint64_t seed,
                     unsigned threads = 1);

/// n_cloud * outage_demand(1, ...): every station provisioned on its own.
double dran_equivalent_demand(unsigned n_cloud, const SnrDistribution& sampler, const McsTable& mcs,
                              const DecoderParams& params, unsigned n_mc, std::uint64_t seed,
                              unsigned threads = 1);

ProcessingDemand servers_required(double d_outage, const FrameConstants& frame = {});

/// (slope * lambda1 + intercept) * server_cost / lambda0.
double processing_cost_rate(double slope, double intercept, double lambda1, double server_cost,
                            double lambda0);

struct ProcessingPreset {
  double gamma_offset_db;
  double table_bs_intensity;  // lambda1 the line was quoted with
  double slope;               // servers per base station
  double intercept;           // servers
};

/// Pooled-processing lines for offsets 0, 0.4 and 0.9 dB.
const std::vector<ProcessingPreset>& processing_presets();
/// Preset for an offset (matched to 1e-9 dB); throws ParameterError otherwise.
const ProcessingPreset& processing_preset(double gamma_offset_db);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (N, outage_demand(N)) for the given pool sizes.
LineFit fit_outage_line(const std::vector<unsigned>& pool_sizes, const SnrDistribution& sampler,
                        const McsTable& mcs, const DecoderParams& params, unsigned n_mc,
                        std::uint64_t seed, unsigned threads = 1);

/// Ratio of standalone per-station demand to the pooled marginal demand,
/// outage_demand(1) / slope of the fitted line. Multiplies a pooled slope
/// to give the distributed one.
double dran_pooling_ratio(const SnrDistribution& sampler, const McsTable& mcs,
                          const DecoderParams& params, unsigned n_mc, std::uint64_t seed,
                          unsigned threads = 1);

inline const std::vector<unsigned>& default_pool_sizes() {
  static const std::vector<unsigned> sizes{1, 2, 5, 10, 20, 50};
  return sizes;
}

}  // namespace crancost
