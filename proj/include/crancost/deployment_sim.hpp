#pragma once

// Monte Carlo oracle for the data-center cost: samples all four layers,
// associates each layer to its nearest upper-layer point and sums the
// per-node cost contributions of every data-center subtree.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crancost/cost_model.hpp"
#include "crancost/point_fields.hpp"

namespace crancost {

/// How per-realization totals are turned into a per-data-center cost.
/// kExpectedCount divides by lambda3 * counted area (unbiased for the Palm
/// mean); kRealizedCount divides by the number of data centers drawn.
enum class DcNormalization { kExpectedCount, kRealizedCount };

struct SimulationOptions {
  Window window{10.0, 10.0, true};
  /// Without wrap-around only data centers at least this far from the border
  /// are costed (minus sampling).
  double guard_km = 1.0;
  /// Literal shifted-coordinate user distance |(x-y) - (y-z) - z| instead of |x-y|.
  bool literal_user_distance = false;
  DcNormalization normalization = DcNormalization::kExpectedCount;
  unsigned threads = 1;
};

struct DeploymentRealization {
  PointSet users;
  MarkedBaseStationSet base_stations;
  PointSet bs_points;  // macros first, then micros
  BackhaulDraw backhaul;
  PointSet data_centers;
  AssignmentMap user_to_bs;
  AssignmentMap bs_to_backhaul;
  AssignmentMap backhaul_to_dc;
  std::vector<std::size_t> users_per_bs;
  std::vector<std::size_t> users_per_backhaul;
  std::vector<std::size_t> users_per_dc;
  std::vector<bool> dc_counted;
  std::size_t counted_dcs = 0;
  double counted_area = 0.0;
  /// Sum over counted data centers of each cost term, in kCostTermNames order.
  std::array<double, kCostTermCount> term_totals{};

  double total_cost() const noexcept;
};

struct CostEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_reps = 0;
  std::size_t n_discarded = 0;
  std::array<double, kCostTermCount> per_term_means{};
  std::array<double, kCostTermCount> per_term_std_errors{};
  double mean_dc_count = 0.0;

  double discard_rate() const noexcept {
    const auto all = n_reps + n_discarded;
    return all == 0 ? 0.0 : static_cast<double>(n_discarded) / static_cast<double>(all);
  }
};

/// Samples one deployment and costs it. Throws AssignmentError when a
/// nonempty layer has no upper-layer point to attach to.
DeploymentRealization simulate_realization(const Scenario& scenario, const SimulationOptions& options,
                                           std::uint64_t seed);

/// Associates and costs given layers (no sampling). Macro base stations
/// are charged the macro price and micros the micro price.
DeploymentRealization cost_deployment(const Scenario& scenario, const SimulationOptions& options, PointSet users,
                                      MarkedBaseStationSet base_stations, BackhaulDraw backhaul,
                                      PointSet data_centers);

/// Mean per-data-center cost over n_reps realizations drawn with sub-seeds
/// derive_seed(seed, replication stream, i). Discarded realizations are
/// counted, not replaced.
CostEstimate estimate_mean_dc_cost(const Scenario& scenario, const SimulationOptions& options,
                                   std::size_t n_reps, std::uint64_t seed);

struct ComparisonReport {
  CostBreakdown closed_form;
  CostEstimate estimate;
  std::array<double, kCostTermCount> z_scores{};
  double z_total = 0.0;
  bool pass = false;
  double threshold = 3.0;
  std::string note;
};

/// z = (empirical - closed form) / std_error per term and for c_phi3; pass
/// when every |z| <= threshold.
ComparisonReport compare_to_closed_form(const Scenario& scenario, const SimulationOptions& options,
                                        std::size_t n_reps, std::uint64_t seed,
                                        const QuadratureSettings& quad = {}, double threshold = 3.0);

/// Builds the report from an existing estimate.
ComparisonReport compare_estimate(const CostBreakdown& closed_form, const CostEstimate& estimate,
                                  double threshold = 3.0);

/// One row per node: layer,x,y,parent_index,subtree_count.
void write_realization_csv(std::ostream& os, const DeploymentRealization& r);

}  // namespace crancost
