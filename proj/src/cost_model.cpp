#include "crancost/cost_model.hpp"

#include <cmath>
#include <string>

#include "crancost/errors.hpp"

namespace crancost {

namespace {

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError(std::string(name) + " must be >= 0");
}

void validate_link(const LinkCost& l, const char* name) {
  const std::string n(name);
  require_non_negative(l.capacity_base, (n + " capacity base").c_str());
  require_non_negative(l.capacity_exponent, (n + " capacity exponent").c_str());
  require_non_negative(l.infra_base, (n + " infrastructure base").c_str());
  require_non_negative(l.infra_exponent, (n + " infrastructure exponent").c_str());
}

// weight * base * E[d^exponent] for a PPP, with zero weight or base short-circuited
// so degenerate mixtures do not need a valid intensity on the unused branch.
double weighted_contact(double weight, double base, double exponent, double intensity) {
  if (weight == 0.0 || base == 0.0) return 0.0;
  return weight * base * ppp_contact_moment(exponent, intensity);
}

double user_bs_moment(const Scenario& s, double exponent, const QuadratureSettings& quad) {
  if (s.user_distance == UserDistanceModel::kEmptySpace) {
    return empty_space_moment(exponent, s.base_stations, quad);
  }
  return cluster_nn_moment(exponent, s.base_stations, quad, s.j_form);
}

}  // namespace

double Scenario::macro_cost() const noexcept {
  return architecture == Architecture::kCloudRan ? equipment.alpha * equipment.c_macro
                                                  : equipment.c_macro;
}

double Scenario::micro_cost() const noexcept {
  return architecture == Architecture::kCloudRan ? equipment.alpha * equipment.c_micro
                                                  : equipment.c_micro;
}

double Scenario::dc_cost() const noexcept {
  return architecture == Architecture::kCloudRan ? equipment.c_dc : 0.0;
}

double Scenario::bs_equipment_cost() const noexcept {
  return equipment_cost_bs(macro_cost(), micro_cost(), base_stations.mean_offspring);
}

double Scenario::backhaul_equipment_cost() const noexcept {
  const double literal = equipment_cost_backhaul(p_microwave, microwave_intensity, fiber_intensity,
                                                 equipment.c_mw, equipment.c_of);
  if (backhaul_cost_mode == BackhaulCostMode::kLiteral) return literal;
  const double lambda2 = backhaul_intensity();
  return lambda2 > 0.0 ? literal / lambda2 : 0.0;
}

void Scenario::validate() const {
  require_non_negative(user_intensity, "lambda0");
  base_stations.validate();
  if (!(base_stations.parent_intensity > 0.0)) throw ParameterError("lambda1c must be > 0");
  if (!(p_microwave >= 0.0 && p_microwave <= 1.0)) throw ParameterError("p must lie in [0,1]");
  if (!(microwave_intensity > 0.0) || !(fiber_intensity > 0.0)) {
    throw ParameterError("backhaul intensities lambda2_mw and lambda2_of must be > 0");
  }
  if (!(dc_intensity > 0.0) || !std::isfinite(dc_intensity)) throw ParameterError("lambda3 must be > 0");
  require_non_negative(equipment.c_macro, "c_macro");
  require_non_negative(equipment.c_micro, "c_micro");
  require_non_negative(equipment.c_mw, "c_mw");
  require_non_negative(equipment.c_of, "c_of");
  require_non_negative(equipment.c_dc, "c3");
  if (!(equipment.alpha >= 0.0 && equipment.alpha <= 1.0)) throw ParameterError("alpha must lie in [0,1]");
  validate_link(links.user_bs, "user-bs");
  validate_link(links.bs_backhaul.microwave, "bs-backhaul (mw)");
  validate_link(links.bs_backhaul.fiber, "bs-backhaul (of)");
  validate_link(links.backhaul_dc.microwave, "backhaul-dc (mw)");
  validate_link(links.backhaul_dc.fiber, "backhaul-dc (of)");
  require_non_negative(links.processing_base, "processing base A''");
}

double CostBreakdown::sum_of_terms() const noexcept {
  double s = 0.0;
  for (double t : cost_terms(*this)) s += t;
  return s;
}

double CostBreakdown::equipment_per_km2() const noexcept {
  return dc_intensity * (dc_equipment + equipment_backhaul + equipment_bs);
}
double CostBreakdown::capacity_per_km2() const noexcept {
  return dc_intensity * (capacity_dc + capacity_bs_backhaul + capacity_user_bs);
}
double CostBreakdown::infrastructure_per_km2() const noexcept {
  return dc_intensity * (infra_dc + infra_bs_backhaul + infra_user_bs);
}
double CostBreakdown::processing_per_km2() const noexcept { return dc_intensity * processing; }

std::array<double, kCostTermCount> cost_terms(const CostBreakdown& b) noexcept {
  return {b.equipment_backhaul, b.processing,        b.capacity_dc,
          b.infra_dc,           b.equipment_bs,      b.capacity_bs_backhaul,
          b.infra_bs_backhaul,  b.capacity_user_bs, b.infra_user_bs};
}

CostBreakdown breakdown_from_terms(const std::array<double, kCostTermCount>& t) {
  CostBreakdown b;
  b.equipment_backhaul = t[0];
  b.processing = t[1];
  b.capacity_dc = t[2];
  b.infra_dc = t[3];
  b.equipment_bs = t[4];
  b.capacity_bs_backhaul = t[5];
  b.infra_bs_backhaul = t[6];
  b.capacity_user_bs = t[7];
  b.infra_user_bs = t[8];
  b.c_phi3 = b.sum_of_terms();
  return b;
}

double equipment_cost_bs(double c_macro, double c_micro, double mean_offspring) {
  return (c_macro + mean_offspring * c_micro) / (1.0 + mean_offspring);
}

double equipment_cost_backhaul(double p, double microwave_intensity, double fiber_intensity, double c_mw,
                               double c_of) {
  return p * microwave_intensity * c_mw + (1.0 - p) * fiber_intensity * c_of;
}

CostBreakdown datacenter_cost(const Scenario& s, const QuadratureSettings& quad) {
  s.validate();
  quad.validate();

  const double l0 = s.user_intensity;
  const double l1 = s.bs_intensity();
  const double l2 = s.backhaul_intensity();
  const double l3 = s.dc_intensity;
  const double p = s.p_microwave;
  const double q = 1.0 - p;
  const auto& mw23 = s.links.backhaul_dc.microwave;
  const auto& of23 = s.links.backhaul_dc.fiber;
  const auto& mw12 = s.links.bs_backhaul.microwave;
  const auto& of12 = s.links.bs_backhaul.fiber;
  const auto& u01 = s.links.user_bs;

  CostBreakdown b;
  b.equipment_backhaul = l2 / l3 * s.backhaul_equipment_cost();
  b.processing = l0 / l3 * s.links.processing_base;

  // Per-user (2,3) capacity: the user's backhaul technology is MW with probability p.
  b.capacity_dc = l0 / l3 *
                  (weighted_contact(p, mw23.capacity_base, mw23.capacity_exponent, l3) +
                   weighted_contact(q, of23.capacity_base, of23.capacity_exponent, l3));
  // Per-node (2,3) infrastructure: a typical backhaul node is MW with Palm
  // weight p * lambda_mw / lambda2.
  const double w_mw = p * s.microwave_intensity / l2;
  b.infra_dc = l2 / l3 *
               (weighted_contact(w_mw, mw23.infra_base, mw23.infra_exponent, l3) +
                weighted_contact(1.0 - w_mw, of23.infra_base, of23.infra_exponent, l3));

  b.equipment_bs = l1 / l3 * s.bs_equipment_cost();
  const double psi1 = weighted_contact(p, mw12.capacity_base, mw12.capacity_exponent, s.microwave_intensity) +
                      weighted_contact(q, of12.capacity_base, of12.capacity_exponent, s.fiber_intensity);
  const double psi2 = weighted_contact(p, mw12.infra_base, mw12.infra_exponent, s.microwave_intensity) +
                      weighted_contact(q, of12.infra_base, of12.infra_exponent, s.fiber_intensity);
  b.capacity_bs_backhaul = l0 / l3 * psi1;
  b.infra_bs_backhaul = l1 / l3 * psi2;

  double capacity_moment = 0.0;
  double infra_moment = 0.0;
  if (u01.capacity_base != 0.0 && l0 != 0.0) {
    capacity_moment = user_bs_moment(s, u01.capacity_exponent, quad);
  }
  if (u01.infra_base != 0.0 && l0 != 0.0) {
    infra_moment = u01.infra_exponent == u01.capacity_exponent && capacity_moment != 0.0
                       ? capacity_moment
                       : user_bs_moment(s, u01.infra_exponent, quad);
  }
  b.capacity_user_bs = l0 / l3 * u01.capacity_base * capacity_moment;
  b.infra_user_bs = l0 / l3 * u01.infra_base * infra_moment;

  b.c_phi3 = b.sum_of_terms();
  b.dc_equipment = s.dc_cost();
  b.dc_intensity = l3;
  b.total_per_km2 = l3 * (b.dc_equipment + b.c_phi3);
  return b;
}

CostBreakdown total_cost(const Scenario& scenario, const QuadratureSettings& quad) {
  return datacenter_cost(scenario, quad);
}

std::string_view architecture_name(Architecture a) noexcept {
  return a == Architecture::kDran ? "DRAN" : "CloudRAN";
}

}  // namespace crancost
