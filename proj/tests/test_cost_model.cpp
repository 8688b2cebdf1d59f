#include <cmath>

#include "doctest.h"

#include "crancost/cost_model.hpp"
#include "crancost/errors.hpp"

using namespace crancost;

namespace {

constexpr double kPi = 3.14159265358979323846;

double gamma_moment(double beta, double lambda) {
  return std::tgamma(beta / 2 + 1) / std::pow(kPi * lambda, beta / 2);
}

Scenario zero_cost_scenario() {
  Scenario s;
  s.equipment = {0, 0, 0, 0, 0, 0.5};
  s.links.user_bs = {};
  s.links.bs_backhaul = {};
  s.links.backhaul_dc = {};
  s.links.processing_base = 0.0;
  return s;
}

Scenario scaled(Scenario s, double f) {
  auto scale_link = [f](LinkCost& l) {
    l.capacity_base *= f;
    l.infra_base *= f;
  };
  s.equipment.c_macro *= f;
  s.equipment.c_micro *= f;
  s.equipment.c_mw *= f;
  s.equipment.c_of *= f;
  s.equipment.c_dc *= f;
  scale_link(s.links.user_bs);
  scale_link(s.links.bs_backhaul.microwave);
  scale_link(s.links.bs_backhaul.fiber);
  scale_link(s.links.backhaul_dc.microwave);
  scale_link(s.links.backhaul_dc.fiber);
  s.links.processing_base *= f;
  return s;
}

}  // namespace

TEST_SUITE("cost-core") {

TEST_CASE("base-station equipment cost") {
  CHECK(equipment_cost_bs(50000, 20000, 4) == doctest::Approx(26000));
  CHECK(equipment_cost_bs(31000, 123, 0) == doctest::Approx(31000));
  CHECK(equipment_cost_bs(25000, 10000, 4) == doctest::Approx(13000));
}

TEST_CASE("backhaul equipment cost as printed") {
  CHECK(equipment_cost_backhaul(1, 1, 7, 50000, 99) == doctest::Approx(50000));
  CHECK(equipment_cost_backhaul(0.5, 5, 5, 50000, 5000) == doctest::Approx(137500));
  CHECK(equipment_cost_backhaul(0, 3, 2, 1234, 5000) == doctest::Approx(10000));
  Scenario s;
  s.backhaul_cost_mode = BackhaulCostMode::kNormalized;
  CHECK(s.backhaul_equipment_cost() == doctest::Approx(137500.0 / 5.0));
}

TEST_CASE("only the processing term survives") {
  Scenario s = zero_cost_scenario();
  s.links.processing_base = 653.54;
  s.user_intensity = 170;
  s.dc_intensity = 1;
  const auto b = datacenter_cost(s);
  CHECK(b.c_phi3 == doctest::Approx(111101.8).epsilon(1e-6));
  CHECK(b.processing == doctest::Approx(111101.8).epsilon(1e-6));
  CHECK(datacenter_cost(zero_cost_scenario()).c_phi3 == 0.0);
}

TEST_CASE("network total from equipment only") {
  Scenario s = zero_cost_scenario();
  s.equipment.c_dc = 40000;
  s.dc_intensity = 3;
  const auto b = total_cost(s);
  CHECK(b.c_phi3 == 0.0);
  CHECK(b.total_per_km2 == doctest::Approx(120000));
  s.architecture = Architecture::kDran;
  CHECK(total_cost(s).total_per_km2 == 0.0);
  CHECK(total_cost(s).dc_equipment == 0.0);
}

TEST_CASE("DRAN mode drops the data-center price and alpha") {
  Scenario s;
  s.architecture = Architecture::kDran;
  const auto b = total_cost(s);
  CHECK(b.dc_equipment == 0.0);
  CHECK(b.total_per_km2 == doctest::Approx(s.dc_intensity * b.c_phi3));
  CHECK(s.bs_equipment_cost() == doctest::Approx(26000));
  s.architecture = Architecture::kCloudRan;
  CHECK(s.bs_equipment_cost() == doctest::Approx(13000));
}

TEST_CASE("PPP special case against an independent formula") {
  Scenario s;
  s.base_stations = {10.0, 0.0, 0.7};
  s.p_microwave = 0.3;
  s.microwave_intensity = 4.0;
  s.fiber_intensity = 6.0;
  s.dc_intensity = 2.0;
  const auto b = datacenter_cost(s);
  const double l0 = 170, l1 = 10, l2 = 0.3 * 4 + 0.7 * 6, l3 = 2;
  const auto& L = s.links;
  const double c2 = 0.3 * 4 * 50000 + 0.7 * 6 * 5000;
  const double w = 0.3 * 4 / l2;
  const double a23 = 0.3 * 5000 * gamma_moment(2, l3) + 0.7 * 5000 * gamma_moment(1, l3);
  const double b23 = w * 10000 * gamma_moment(2, l3) + (1 - w) * 100000 * gamma_moment(1, l3);
  const double psi1 = 0.3 * 5000 * gamma_moment(2, 4) + 0.7 * 5000 * gamma_moment(1, 6);
  const double psi2 = 0.3 * 5000 * gamma_moment(2, 4) + 0.7 * 100000 * gamma_moment(1, 6);
  const double psi3 = 5000 * gamma_moment(4, l1);
  const double psi4 = 10000 * gamma_moment(2, l1);
  const double expected = (l2 / l3) * (c2 + (l0 / l2) * (a23 + L.processing_base) + b23 +
                                       (l1 / l2) * (25000 + (l0 / l1) * psi1 + psi2 + (l0 / l1) * (psi3 + psi4)));
  CHECK(b.c_phi3 == doctest::Approx(expected).epsilon(1e-6));
  s.user_distance = UserDistanceModel::kNearestNeighbor;
  CHECK(datacenter_cost(s).c_phi3 == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("breakdown sums and category totals") {
  const Scenario s;
  const auto b = total_cost(s);
  CHECK(b.c_phi3 == doctest::Approx(b.sum_of_terms()).epsilon(1e-9));
  CHECK(b.equipment_per_km2() + b.capacity_per_km2() + b.infrastructure_per_km2() + b.processing_per_km2() ==
        doctest::Approx(b.total_per_km2).epsilon(1e-12));
  const auto again = breakdown_from_terms(cost_terms(b));
  CHECK(again.c_phi3 == doctest::Approx(b.c_phi3).epsilon(1e-15));
}

TEST_CASE("degree-one homogeneity in the currency inputs") {
  const Scenario s;
  CHECK(total_cost(scaled(s, 2.0)).total_per_km2 == doctest::Approx(2.0 * total_cost(s).total_per_km2).epsilon(1e-12));
}

TEST_CASE("total is nondecreasing in every currency input and in alpha") {
  const Scenario base;
  const double t0 = total_cost(base).total_per_km2;
  auto bump = [&](auto edit) {
    Scenario s = base;
    edit(s);
    return total_cost(s).total_per_km2;
  };
  CHECK(bump([](Scenario& s) { s.equipment.c_macro *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.equipment.c_micro *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.equipment.c_mw *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.equipment.c_of *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.equipment.c_dc *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.equipment.alpha = 0.6; }) > t0);
  CHECK(bump([](Scenario& s) { s.links.user_bs.capacity_base *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.links.user_bs.infra_base *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.links.bs_backhaul.fiber.infra_base *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.links.backhaul_dc.microwave.capacity_base *= 1.1; }) > t0);
  CHECK(bump([](Scenario& s) { s.links.processing_base *= 1.1; }) > t0);
}

TEST_CASE("zero exponent reduces a capacity term to base times intensity ratio") {
  Scenario s = zero_cost_scenario();
  s.links.backhaul_dc.microwave = {700.0, 0.0, 0.0, 0.0};
  s.links.backhaul_dc.fiber = {700.0, 0.0, 0.0, 0.0};
  s.links.user_bs = {11.0, 0.0, 0.0, 0.0};
  const auto b = datacenter_cost(s);
  CHECK(b.capacity_dc == doctest::Approx(700.0 * s.user_intensity / s.dc_intensity).epsilon(1e-15));
  CHECK(b.capacity_user_bs == doctest::Approx(11.0 * s.user_intensity / s.dc_intensity).epsilon(1e-9));
}

TEST_CASE("swapping the two backhaul technologies with p and 1-p") {
  Scenario s;
  s.p_microwave = 0.3;
  s.microwave_intensity = 4.0;
  s.fiber_intensity = 7.0;
  Scenario t = s;
  t.p_microwave = 0.7;
  std::swap(t.microwave_intensity, t.fiber_intensity);
  std::swap(t.equipment.c_mw, t.equipment.c_of);
  std::swap(t.links.bs_backhaul.microwave, t.links.bs_backhaul.fiber);
  std::swap(t.links.backhaul_dc.microwave, t.links.backhaul_dc.fiber);
  CHECK(datacenter_cost(t).c_phi3 == doctest::Approx(datacenter_cost(s).c_phi3).epsilon(1e-12));
}

TEST_CASE("default tables: Cloud-RAN in the millions and below DRAN") {
  Scenario cran;
  cran.links.processing_base = 653.54;
  Scenario dran = cran;
  dran.architecture = Architecture::kDran;
  const double c = total_cost(cran).total_per_km2;
  CHECK(c > 1e6);
  CHECK(c < 1e7);
  CHECK(c < total_cost(dran).total_per_km2);
}

TEST_CASE("invalid scenarios") {
  Scenario s;
  s.dc_intensity = 0.0;
  CHECK_THROWS_AS(datacenter_cost(s), ParameterError);
  s = Scenario{};
  s.p_microwave = 1.2;
  CHECK_THROWS_AS(datacenter_cost(s), ParameterError);
  s = Scenario{};
  s.fiber_intensity = 0.0;
  CHECK_THROWS_AS(datacenter_cost(s), ParameterError);
  s = Scenario{};
  s.links.user_bs.capacity_base = -1.0;
  CHECK_THROWS_AS(datacenter_cost(s), ParameterError);
}

}
