#include "crancost/decoder_complexity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "crancost/errors.hpp"
#include "crancost/parallel.hpp"
#include "crancost/special_functions.hpp"

namespace crancost {

namespace {

void require_probability(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw ParameterError(std::string(name) + " must lie in (0,1)");
}

double parse_number(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParameterError("bad number '" + std::string(text) + "' in SNR spec '" + std::string(spec) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Lower empirical quantile: order statistic ceil(q n), 1-based.
double empirical_quantile(std::vector<double>& v, double q) {
  const auto n = v.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n) - 1e-12));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank - 1), v.end());
  return v[rank - 1];
}

double station_workload(double gamma, const McsTable& mcs, const DecoderParams& params) {
  const int k = mcs.select(gamma);
  if (k < 0) throw DomainError("SNR below the lowest MCS threshold");
  return decoding_complexity(gamma, mcs.entries[static_cast<std::size_t>(k)].rate, params);
}

}  // namespace

void DecoderParams::validate() const {
  if (!(zeta > 2.0)) throw ParameterError("zeta must be > 2");
  if (!(k_scale > 0.0)) throw ParameterError("K must be > 0");
  require_probability(channel_outage, "channel outage");
  require_probability(comp_outage, "computational outage");
  if (!std::isfinite(nu_db) || !std::isfinite(gamma_offset_db)) throw ParameterError("nu and offset must be finite");
  if (!(downlink_uplift >= 0.0)) throw ParameterError("downlink uplift must be >= 0");
}

double McsTable::lowest_threshold() const {
  if (entries.empty()) throw ParameterError("empty MCS table");
  return entries.front().gamma_r;
}

int McsTable::select(double gamma) const noexcept {
  auto it = std::upper_bound(entries.begin(), entries.end(), gamma,
                             [](double g, const McsEntry& e) { return g < e.gamma_r; });
  return static_cast<int>(it - entries.begin()) - 1;
}

void FrameConstants::validate() const {
  if (!(subframe_s > 0.0 && resource_blocks > 0.0 && subcarriers_per_block > 0.0 && symbols_per_block > 0.0 &&
        flop_per_bit_iter > 0.0 && server_flops > 0.0 && server_cost > 0.0)) {
    throw ParameterError("frame constants must be > 0");
  }
}

SnrDistribution SnrDistribution::parse(std::string_view spec) {
  const std::string_view s = trim(spec);
  const auto colon = s.find(':');
  const std::string_view name = trim(s.substr(0, colon));
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : trim(s.substr(colon + 1));
  SnrDistribution d;
  if (name == "rayleigh") {
    d.kind = Kind::kRayleigh;
    if (!args.empty()) d.a = parse_number(args, spec);
  } else if (name == "constant") {
    d.kind = Kind::kConstant;
    if (args.empty()) throw ParameterError("constant SNR needs a value");
    d.a = parse_number(args, spec);
    if (!(d.a > 0.0)) throw ParameterError("constant SNR must be > 0");
  } else if (name == "lognormal") {
    d.kind = Kind::kLogNormal;
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw ParameterError("lognormal needs MEAN_DB,SD_DB");
    d.a = parse_number(trim(args.substr(0, comma)), spec);
    d.b = parse_number(trim(args.substr(comma + 1)), spec);
    if (!(d.b >= 0.0)) throw ParameterError("lognormal SD must be >= 0");
  } else {
    throw ParameterError("unknown SNR distribution '" + std::string(name) + "'");
  }
  return d;
}

std::string SnrDistribution::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::kRayleigh: os << "rayleigh:" << a; break;
    case Kind::kConstant: os << "constant:" << a; break;
    case Kind::kLogNormal: os << "lognormal:" << a << ',' << b; break;
  }
  return os.str();
}

double SnrDistribution::draw(Engine& rng, double floor) const {
  switch (kind) {
    case Kind::kConstant:
      if (a < floor) throw DomainError("constant SNR lies below the lowest MCS threshold");
      return a;
    case Kind::kRayleigh: {
      // Exponential power is memoryless, so truncation is a shift.
      std::exponential_distribution<double> e(1.0 / db_to_linear(a));
      return floor + e(rng);
    }
    case Kind::kLogNormal: {
      std::normal_distribution<double> g(a, b);
      for (int attempt = 0; attempt < 100000; ++attempt) {
        const double v = db_to_linear(g(rng));
        if (v >= floor) return v;
      }
      throw DomainError("lognormal SNR law has negligible mass above the lowest MCS threshold");
    }
  }
  return a;
}

double decoding_complexity(double gamma, double rate, const DecoderParams& params) {
  const double margin = std::log2(1.0 + gamma) - rate;
  if (!(margin > 0.0)) throw DomainError("SNR at or below capacity for the selected rate");
  const double z = params.zeta;
  const double bracket = std::log2((z - 2.0) / (params.k_scale * z)) - 2.0 * std::log2(margin);
  return std::max(0.0, rate / std::log2(z - 1.0) * bracket);
}

McsTable snr_thresholds(const std::vector<double>& rates, const DecoderParams& params) {
  if (rates.empty()) throw ParameterError("MCS rate list is empty");
  const double scale = db_to_linear(params.nu_db) * db_to_linear(params.gamma_offset_db);
  McsTable t;
  t.entries.reserve(rates.size());
  double prev = 0.0;
  for (double r : rates) {
    if (!(r > prev) || !std::isfinite(r)) throw ParameterError("MCS rates must be positive and strictly increasing");
    prev = r;
    const double gc = std::exp2(r) - 1.0;
    t.entries.push_back({r, gc, scale * gc});
  }
  return t;
}

std::vector<double> default_mcs_rates() {
  constexpr int n = 15;
  const double lo = 0.15;
  const double hi = 5.55;
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  r.back() = hi;
  return r;
}

double outage_demand(unsigned n_cloud, const SnrDistribution& sampler, const McsTable& mcs,
                     const DecoderParams& params, unsigned n_mc, std::uint64_t seed, unsigned threads) {
  params.validate();
  if (n_cloud < 1) throw ParameterError("n_cloud must be >= 1");
  if (n_mc < 1) throw ParameterError("n_mc must be >= 1");
  const double floor = mcs.lowest_threshold();
  std::vector<double> sums(n_mc);
  parallel_for(n_mc, threads, [&](std::size_t i) {
    Engine rng(derive_seed(seed, stream::kComplexity, i));
    double s = 0.0;
    for (unsigned j = 0; j < n_cloud; ++j) s += station_workload(sampler.draw(rng, floor), mcs, params);
    sums[i] = s;
  });
  return empirical_quantile(sums, 1.0 - params.comp_outage);
}

double dran_equivalent_demand(unsigned n_cloud, const SnrDistribution& sampler, const McsTable& mcs,
                              const DecoderParams& params, unsigned n_mc, std::uint64_t seed,
                              unsigned threads) {
  if (n_cloud < 1) throw ParameterError("n_cloud must be >= 1");
  return n_cloud * outage_demand(1, sampler, mcs, params, n_mc, seed, threads);
}

ProcessingDemand servers_required(double d_outage, const FrameConstants& frame) {
  frame.validate();
  if (!(d_outage >= 0.0)) throw ParameterError("d_outage must be >= 0");
  ProcessingDemand d;
  d.d_outage = d_outage;
  d.d_abs = d_outage * frame.channel_uses_per_second();
  d.d_flops = d.d_abs * frame.flop_per_bit_iter;
  d.d_unit = d.d_flops / frame.server_flops;
  return d;
}

double processing_cost_rate(double slope, double intercept, double lambda1, double server_cost,
                            double lambda0) {
  if (!(lambda0 > 0.0)) throw ParameterError("lambda0 must be > 0");
  if (!(slope >= 0.0 && intercept >= 0.0 && lambda1 >= 0.0 && server_cost >= 0.0)) {
    throw ParameterError("processing cost inputs must be >= 0");
  }
  return (slope * lambda1 + intercept) * server_cost / lambda0;
}

const std::vector<ProcessingPreset>& processing_presets() {
  static const std::vector<ProcessingPreset> presets{
      {0.0, 50.0, 0.111, 0.0051},
      {0.4, 51.2, 0.096, 0.0036},
      {0.9, 52.8, 0.083, 0.0027},
  };
  return presets;
}

const ProcessingPreset& processing_preset(double gamma_offset_db) {
  for (const auto& p : processing_presets()) {
    if (std::abs(p.gamma_offset_db - gamma_offset_db) < 1e-9) return p;
  }
  throw ParameterError("no processing preset for gamma_offset_db; use 0, 0.4 or 0.9");
}

LineFit fit_outage_line(const std::vector<unsigned>& pool_sizes, const SnrDistribution& sampler,
                        const McsTable& mcs, const DecoderParams& params, unsigned n_mc, std::uint64_t seed,
                        unsigned threads) {
  if (pool_sizes.size() < 2) throw ParameterError("need at least two pool sizes for a line fit");
  const double n = static_cast<double>(pool_sizes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (unsigned size : pool_sizes) {
    const double x = size;
    const double y = outage_demand(size, sampler, mcs, params, n_mc, seed, threads);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw ParameterError("pool sizes must not all be equal");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double dran_pooling_ratio(const SnrDistribution& sampler, const McsTable& mcs, const DecoderParams& params,
                          unsigned n_mc, std::uint64_t seed, unsigned threads) {
  const double single = outage_demand(1, sampler, mcs, params, n_mc, seed, threads);
  const LineFit f = fit_outage_line(default_pool_sizes(), sampler, mcs, params, n_mc, seed, threads);
  if (!(f.slope > 0.0)) throw EstimationError("pooled demand line has nonpositive slope");
  return single / f.slope;
}

}  // namespace crancost
