#pragma once

// Closed-form expected deployment cost of one data center and of the whole
// network per km^2, for the four-layer model (users, base stations, backhaul,
// data centers) with power-law capacity and infrastructure costs.

#include <array>
#include <string_view>

#include "crancost/palm_analytics.hpp"
#include "crancost/point_fields.hpp"

namespace crancost {

enum class Architecture { kDran, kCloudRan };

/// How the per-node backhaul equipment cost C2 is formed.
/// kLiteral:    p * lambda_mw * c_mw + (1-p) * lambda_of * c_of (currency x intensity)
/// kNormalized: the same divided by lambda2, i.e. the expected cost of one node
enum class BackhaulCostMode { kLiteral, kNormalized };

/// Distance law used for the user -> base-station link.
/// kEmptySpace:      users are independent of base stations, so the distance is
///                   the empty-space distance of the base-station layer.
/// kNearestNeighbor: the nearest-neighbour distance seen from a typical base
///                   station (Palm form).
enum class UserDistanceModel { kEmptySpace, kNearestNeighbor };

/// Device prices in DRAN terms. In Cloud-RAN mode macro and micro prices are
/// scaled by `alpha`; in DRAN mode the data-center price is zero.
struct EquipmentCosts {
  double c_macro = 50000.0;
  double c_micro = 20000.0;
  double c_mw = 50000.0;
  double c_of = 5000.0;
  double c_dc = 40000.0;
  double alpha = 0.5;
};

/// A * d^capacity_exponent + B * d^infra_exponent for one link.
struct LinkCost {
  double capacity_base = 0.0;
  double capacity_exponent = 0.0;
  double infra_base = 0.0;
  double infra_exponent = 0.0;
};

template <typename T>
struct PerBackhaul {
  T microwave{};
  T fiber{};

  const T& operator[](BackhaulKind kind) const noexcept {
    return kind == BackhaulKind::kMicrowave ? microwave : fiber;
  }
};

struct LinkCostParams {
  LinkCost user_bs{5000.0, 4.0, 10000.0, 2.0};
  PerBackhaul<LinkCost> bs_backhaul{{5000.0, 2.0, 5000.0, 2.0}, {5000.0, 1.0, 100000.0, 1.0}};
  /// capacity_base here is the capacity-delivery part A' only.
  PerBackhaul<LinkCost> backhaul_dc{{5000.0, 2.0, 10000.0, 2.0}, {5000.0, 1.0, 100000.0, 1.0}};
  /// Distance-independent per-user data-processing cost A''.
  double processing_base = 653.54;
};

struct Scenario {
  double user_intensity = 170.0;  // lambda0
  ClusterParams base_stations{};  // lambda1c, lambda1m, sigma
  double p_microwave = 0.5;
  double microwave_intensity = 5.0;
  double fiber_intensity = 5.0;
  double dc_intensity = 3.0;  // lambda3
  EquipmentCosts equipment{};
  LinkCostParams links{};
  Architecture architecture = Architecture::kCloudRan;
  double gamma_offset_db = 0.0;
  BackhaulCostMode backhaul_cost_mode = BackhaulCostMode::kLiteral;
  UserDistanceModel user_distance = UserDistanceModel::kEmptySpace;
  JForm j_form = JForm::kParentAware;

  double bs_intensity() const noexcept { return base_stations.total_intensity(); }
  double backhaul_intensity() const noexcept {
    return p_microwave * microwave_intensity + (1.0 - p_microwave) * fiber_intensity;
  }
  double macro_cost() const noexcept;
  double micro_cost() const noexcept;
  double dc_cost() const noexcept;
  /// Average equipment cost per base station (C1).
  double bs_equipment_cost() const noexcept;
  /// Backhaul equipment cost per node (C2) under `backhaul_cost_mode`.
  double backhaul_equipment_cost() const noexcept;

  void validate() const;
};

/// Per-data-center terms; c_phi3 is their sum.
struct CostBreakdown {
  double equipment_backhaul = 0.0;
  double processing = 0.0;
  double capacity_dc = 0.0;
  double infra_dc = 0.0;
  double equipment_bs = 0.0;
  double capacity_bs_backhaul = 0.0;
  double infra_bs_backhaul = 0.0;
  double capacity_user_bs = 0.0;
  double infra_user_bs = 0.0;
  double c_phi3 = 0.0;
  double dc_equipment = 0.0;   // C3
  double dc_intensity = 0.0;   // lambda3 the breakdown was evaluated at
  double total_per_km2 = 0.0;  // lambda3 * (C3 + c_phi3)

  double sum_of_terms() const noexcept;
  // Per-km^2 category totals used for tabular output.
  double equipment_per_km2() const noexcept;
  double capacity_per_km2() const noexcept;
  double infrastructure_per_km2() const noexcept;
  double processing_per_km2() const noexcept;
};

inline constexpr std::size_t kCostTermCount = 9;
inline constexpr std::array<std::string_view, kCostTermCount> kCostTermNames{
    "equipment_backhaul", "processing",       "capacity_dc",       "infra_dc",     "equipment_bs",
    "capacity_bs_backhaul", "infra_bs_backhaul", "capacity_user_bs", "infra_user_bs"};

std::array<double, kCostTermCount> cost_terms(const CostBreakdown& b) noexcept;
CostBreakdown breakdown_from_terms(const std::array<double, kCostTermCount>& terms);

/// C1 = (c_macro + lambda1m * c_micro) / (1 + lambda1m).
double equipment_cost_bs(double c_macro, double c_micro, double mean_offspring);

/// C2 = p * lambda_mw * c_mw + (1-p) * lambda_of * c_of, as printed.
double equipment_cost_backhaul(double p, double microwave_intensity, double fiber_intensity,
                               double c_mw, double c_of);

/// Expected cost of deploying one data center, term by term.
CostBreakdown datacenter_cost(const Scenario& scenario, const QuadratureSettings& quad = {});

/// Same evaluation; the network total lambda3 * (C3 + c_phi3) is the headline.
CostBreakdown total_cost(const Scenario& scenario, const QuadratureSettings& quad = {});

std::string_view architecture_name(Architecture a) noexcept;

}  // namespace crancost
