#include "crancost/deployment_sim.hpp"

#include <boost/accumulators/accumulators.hpp>
#include <boost/accumulators/statistics/stats.hpp>
#include <boost/accumulators/statistics/sum_kahan.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "crancost/errors.hpp"
#include "crancost/parallel.hpp"
#include "crancost/seeding.hpp"

namespace crancost {

namespace {

namespace acc = boost::accumulators;
using KahanSum = acc::accumulator_set<double, acc::stats<acc::tag::sum_kahan>>;

// d^exponent from the squared distance, exact for the common integer powers.
double power_of_distance(double d2, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (exponent == 2.0) return d2;
  if (exponent == 4.0) return d2 * d2;
  if (exponent == 1.0) return std::sqrt(d2);
  return std::pow(d2, 0.5 * exponent);
}

enum Term : std::size_t {
  kEquipmentBackhaul,
  kProcessing,
  kCapacityDc,
  kInfraDc,
  kEquipmentBs,
  kCapacityBsBackhaul,
  kInfraBsBackhaul,
  kCapacityUserBs,
  kInfraUserBs,
};

double kahan_total(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s(x);
  return acc::sum_kahan(s);
}

// Mean and standard error of the mean, both with compensated sums.
std::pair<double, double> mean_and_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = kahan_total(v) / n;
  KahanSum sq;
  for (double x : v) sq((x - mean) * (x - mean));
  const double var = v.size() > 1 ? acc::sum_kahan(sq) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

double z_score(double empirical, double closed, double se) {
  const double diff = empirical - closed;
  if (se > 0.0) return diff / se;
  if (std::abs(diff) <= 1e-9 * std::max(1.0, std::abs(closed))) return 0.0;
  return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

}  // namespace

double DeploymentRealization::total_cost() const noexcept {
  double s = 0.0;
  for (double t : term_totals) s += t;
  return s;
}

DeploymentRealization simulate_realization(const Scenario& s, const SimulationOptions& opt, std::uint64_t seed) {
  s.validate();
  const Window& w = opt.window;
  PointSet users = sample_ppp(s.user_intensity, w, derive_seed(seed, stream::kUsers, 0), LayerTag::kUsers);
  MarkedBaseStationSet bs = sample_cluster_bs(s.base_stations.parent_intensity, s.base_stations.mean_offspring,
                                              s.base_stations.sigma, w, derive_seed(seed, stream::kBaseStations, 0));
  BackhaulDraw backhaul = sample_backhaul(s.p_microwave, s.microwave_intensity, s.fiber_intensity, w,
                                          derive_seed(seed, stream::kBackhaul, 0));
  PointSet dcs = sample_ppp(s.dc_intensity, w, derive_seed(seed, stream::kDataCenters, 0), LayerTag::kDataCenters);
  return cost_deployment(s, opt, std::move(users), std::move(bs), std::move(backhaul), std::move(dcs));
}

DeploymentRealization cost_deployment(const Scenario& s, const SimulationOptions& opt, PointSet users,
                                      MarkedBaseStationSet base_stations, BackhaulDraw backhaul,
                                      PointSet data_centers) {
  const Window& w = opt.window;
  DeploymentRealization r;
  r.users = std::move(users);
  r.base_stations = std::move(base_stations);
  r.bs_points = r.base_stations.combined();
  r.backhaul = std::move(backhaul);
  r.data_centers = std::move(data_centers);

  r.user_to_bs = nearest_assign(r.users, r.bs_points, w);
  r.bs_to_backhaul = nearest_assign(r.bs_points, r.backhaul.nodes, w);
  r.backhaul_to_dc = nearest_assign(r.backhaul.nodes, r.data_centers, w);

  const std::size_t n_bs = r.bs_points.size();
  const std::size_t n_bh = r.backhaul.nodes.size();
  const std::size_t n_dc = r.data_centers.size();
  const std::size_t n_macro = r.base_stations.macros.size();

  r.users_per_bs = r.user_to_bs.counts(n_bs);
  r.users_per_backhaul.assign(n_bh, 0);
  for (std::size_t b = 0; b < n_bs; ++b) r.users_per_backhaul[r.bs_to_backhaul.lower_to_upper[b]] += r.users_per_bs[b];
  r.users_per_dc.assign(n_dc, 0);
  for (std::size_t z = 0; z < n_bh; ++z) r.users_per_dc[r.backhaul_to_dc.lower_to_upper[z]] += r.users_per_backhaul[z];

  r.dc_counted.assign(n_dc, true);
  if (w.wrap) {
    r.counted_area = w.area();
  } else {
    const double g = opt.guard_km;
    const double iw = w.width - 2.0 * g;
    const double ih = w.height - 2.0 * g;
    if (!(g >= 0.0) || !(iw > 0.0) || !(ih > 0.0)) throw ParameterError("guard margin leaves no interior window");
    r.counted_area = iw * ih;
    for (std::size_t d = 0; d < n_dc; ++d) {
      const Point& p = r.data_centers.points[d];
      r.dc_counted[d] = p.x >= g && p.x <= w.width - g && p.y >= g && p.y <= w.height - g;
    }
  }
  for (bool c : r.dc_counted) r.counted_dcs += c ? 1 : 0;

  const LinkCost& l23 = s.links.backhaul_dc[r.backhaul.realized];
  const LinkCost& l12 = s.links.bs_backhaul[r.backhaul.realized];
  const LinkCost& l01 = s.links.user_bs;
  const double c2 = s.backhaul_equipment_cost();
  const double c_macro = s.macro_cost();
  const double c_micro = s.micro_cost();
  const double a2 = s.links.processing_base;
  auto& t = r.term_totals;

  std::vector<double> dc_dist2(n_bh);
  std::vector<bool> bh_counted(n_bh);
  for (std::size_t z = 0; z < n_bh; ++z) {
    const std::size_t d = r.backhaul_to_dc.lower_to_upper[z];
    bh_counted[z] = r.dc_counted[d];
    dc_dist2[z] = w.distance2(r.data_centers.points[d], r.backhaul.nodes.points[z]);
    if (!bh_counted[z]) continue;
    t[kEquipmentBackhaul] += c2;
    t[kInfraDc] += l23.infra_base * power_of_distance(dc_dist2[z], l23.infra_exponent);
  }

  std::vector<double> bh_dist2(n_bs);
  for (std::size_t b = 0; b < n_bs; ++b) {
    const std::size_t z = r.bs_to_backhaul.lower_to_upper[b];
    bh_dist2[b] = w.distance2(r.backhaul.nodes.points[z], r.bs_points.points[b]);
    if (!bh_counted[z]) continue;
    t[kEquipmentBs] += b < n_macro ? c_macro : c_micro;
    t[kInfraBsBackhaul] += l12.infra_base * power_of_distance(bh_dist2[b], l12.infra_exponent);
  }

  for (std::size_t i = 0; i < r.users.size(); ++i) {
    const std::size_t b = r.user_to_bs.lower_to_upper[i];
    const std::size_t z = r.bs_to_backhaul.lower_to_upper[b];
    if (!bh_counted[z]) continue;
    const Point& x = r.users.points[i];
    const Point& y = r.bs_points.points[b];
    double d2;
    if (opt.literal_user_distance) {
      const std::size_t d = r.backhaul_to_dc.lower_to_upper[z];
      const Point& zp = r.backhaul.nodes.points[z];
      const Point xy = w.displacement(y, x);
      const Point yz = w.displacement(zp, y);
      const Point zo = w.displacement(r.data_centers.points[d], zp);
      const double ux = xy.x - yz.x - zo.x;
      const double uy = xy.y - yz.y - zo.y;
      d2 = ux * ux + uy * uy;
    } else {
      d2 = w.distance2(y, x);
    }
    t[kProcessing] += a2;
    t[kCapacityDc] += l23.capacity_base * power_of_distance(dc_dist2[z], l23.capacity_exponent);
    t[kCapacityBsBackhaul] += l12.capacity_base * power_of_distance(bh_dist2[b], l12.capacity_exponent);
    t[kCapacityUserBs] += l01.capacity_base * power_of_distance(d2, l01.capacity_exponent);
    t[kInfraUserBs] += l01.infra_base * power_of_distance(d2, l01.infra_exponent);
  }
  return r;
}

CostEstimate estimate_mean_dc_cost(const Scenario& scenario, const SimulationOptions& opt, std::size_t n_reps,
                                   std::uint64_t seed) {
  if (n_reps < 2) throw ParameterError("n_reps must be >= 2");
  scenario.validate();

  struct Rep {
    std::array<double, kCostTermCount> terms{};
    double dc_count = 0.0;
    bool ok = false;
  };
  std::vector<Rep> reps(n_reps);
  parallel_for(n_reps, opt.threads, [&](std::size_t i) {
    Rep& rep = reps[i];
    DeploymentRealization r;
    try {
      r = simulate_realization(scenario, opt, derive_seed(seed, stream::kReplication, i));
    } catch (const AssignmentError&) {
      return;
    }
    double divisor;
    if (opt.normalization == DcNormalization::kExpectedCount) {
      divisor = scenario.dc_intensity * r.counted_area;
    } else {
      if (r.counted_dcs == 0) return;
      divisor = static_cast<double>(r.counted_dcs);
    }
    for (std::size_t k = 0; k < kCostTermCount; ++k) rep.terms[k] = r.term_totals[k] / divisor;
    rep.dc_count = static_cast<double>(r.counted_dcs);
    rep.ok = true;
  });

  CostEstimate e;
  std::vector<std::vector<double>> columns(kCostTermCount);
  std::vector<double> totals;
  std::vector<double> counts;
  for (const Rep& rep : reps) {
    if (!rep.ok) {
      ++e.n_discarded;
      continue;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < kCostTermCount; ++k) {
      columns[k].push_back(rep.terms[k]);
      total += rep.terms[k];
    }
    totals.push_back(total);
    counts.push_back(rep.dc_count);
  }
  e.n_reps = totals.size();
  if (e.n_reps < 2) throw EstimationError("fewer than two usable realizations");
  for (std::size_t k = 0; k < kCostTermCount; ++k) {
    std::tie(e.per_term_means[k], e.per_term_std_errors[k]) = mean_and_se(columns[k]);
  }
  std::tie(e.mean, e.std_error) = mean_and_se(totals);
  e.mean_dc_count = kahan_total(counts) / static_cast<double>(counts.size());
  return e;
}

ComparisonReport compare_estimate(const CostBreakdown& closed, const CostEstimate& est, double threshold) {
  ComparisonReport rep;
  rep.closed_form = closed;
  rep.estimate = est;
  rep.threshold = threshold;
  const auto terms = cost_terms(closed);
  rep.pass = true;
  for (std::size_t k = 0; k < kCostTermCount; ++k) {
    rep.z_scores[k] = z_score(est.per_term_means[k], terms[k], est.per_term_std_errors[k]);
    if (!(std::abs(rep.z_scores[k]) <= threshold)) rep.pass = false;
  }
  rep.z_total = z_score(est.mean, closed.c_phi3, est.std_error);
  if (!(std::abs(rep.z_total) <= threshold)) rep.pass = false;
  rep.note = "discard rate " + std::to_string(est.discard_rate()) +
             "; the estimate is for a finite window and converges as the window grows";
  return rep;
}

ComparisonReport compare_to_closed_form(const Scenario& scenario, const SimulationOptions& options,
                                        std::size_t n_reps, std::uint64_t seed, const QuadratureSettings& quad,
                                        double threshold) {
  const CostBreakdown closed = datacenter_cost(scenario, quad);
  const CostEstimate est = estimate_mean_dc_cost(scenario, options, n_reps, seed);
  return compare_estimate(closed, est, threshold);
}

void write_realization_csv(std::ostream& os, const DeploymentRealization& r) {
  os << "layer,x,y,parent_index,subtree_count\n";
  auto row = [&](const char* layer, const Point& p, long long parent, std::size_t count) {
    os << layer << ',' << p.x << ',' << p.y << ',' << parent << ',' << count << '\n';
  };
  for (std::size_t i = 0; i < r.users.size(); ++i) {
    row("user", r.users.points[i], static_cast<long long>(r.user_to_bs.lower_to_upper[i]), 1);
  }
  const std::size_t n_macro = r.base_stations.macros.size();
  for (std::size_t b = 0; b < r.bs_points.size(); ++b) {
    row(b < n_macro ? "macro" : "micro", r.bs_points.points[b],
        static_cast<long long>(r.bs_to_backhaul.lower_to_upper[b]), r.users_per_bs[b]);
  }
  const char* bh = r.backhaul.realized == BackhaulKind::kMicrowave ? "backhaul_mw" : "backhaul_of";
  for (std::size_t z = 0; z < r.backhaul.nodes.size(); ++z) {
    row(bh, r.backhaul.nodes.points[z], static_cast<long long>(r.backhaul_to_dc.lower_to_upper[z]),
        r.users_per_backhaul[z]);
  }
  for (std::size_t d = 0; d < r.data_centers.size(); ++d) row("dc", r.data_centers.points[d], -1, r.users_per_dc[d]);
}

}  // namespace crancost
