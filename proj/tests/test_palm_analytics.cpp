#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "crancost/errors.hpp"
#include "crancost/palm_analytics.hpp"
#include "crancost/point_fields.hpp"
#include "crancost/seeding.hpp"

using namespace crancost;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Polar composite Simpson of the N(c, s^2 I) density over the disc |x| <= R.
double disc_mass_grid(double c, double s, double R) {
  const int nr = 400, nt = 400;
  auto simpson_w = [](int i, int n) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
  const double hr = R / nr, ht = 2 * kPi / nt;
  double total = 0.0;
  for (int i = 0; i <= nr; ++i) {
    const double rho = i * hr;
    double inner = 0.0;
    for (int j = 0; j <= nt; ++j) {
      const double th = j * ht;
      const double dx = rho * std::cos(th) - c, dy = rho * std::sin(th);
      inner += simpson_w(j, nt) * std::exp(-(dx * dx + dy * dy) / (2 * s * s));
    }
    total += simpson_w(i, nr) * rho * inner * ht / 3.0;
  }
  return total * hr / 3.0 / (2 * kPi * s * s);
}

}  // namespace

TEST_SUITE("palm-analytics") {

TEST_CASE("PPP contact moments") {
  CHECK(ppp_contact_moment(2.0, 5.0) == doctest::Approx(1.0 / (kPi * 5.0)));
  CHECK(ppp_contact_moment(0.0, 5.0) == doctest::Approx(1.0));
  CHECK(ppp_contact_moment(1.0, 4.0) == doctest::Approx(0.25));
  CHECK(ppp_contact_moment(4.0, 1.0) == doctest::Approx(2.0 / (kPi * kPi)));
  CHECK_THROWS_AS(ppp_contact_moment(2.0, 0.0), ParameterError);
  CHECK_THROWS_AS(ppp_contact_moment(-1.0, 1.0), ParameterError);
}

TEST_CASE("mixed contact moment is the p-mixture") {
  CHECK(mixed_contact_moment(3.0, 2.0, 1.0, 5.0, 1.0) == doctest::Approx(3.0 * ppp_contact_moment(2.0, 5.0)));
  CHECK(mixed_contact_moment(3.0, 2.0, 0.25, 5.0, 1.0) ==
        doctest::Approx(3.0 * (0.25 * ppp_contact_moment(2.0, 5.0) + 0.75 * ppp_contact_moment(2.0, 1.0))));
  CHECK_THROWS_AS(mixed_contact_moment(1.0, 2.0, 1.2, 5.0, 1.0), ParameterError);
}

TEST_CASE("Gaussian disc mass against a polar grid") {
  CHECK(gaussian_disc_mass(0.0, 0.7, 0.5) == doctest::Approx(1.0 - std::exp(-0.25 / 0.98)).epsilon(1e-12));
  struct Case { double c, s, R; };
  for (const Case k : {Case{0.3, 0.7, 0.5}, Case{1.0, 0.5, 0.4}, Case{2.0, 0.7, 1.5}, Case{0.05, 0.2, 0.01},
                       Case{3.0, 0.5, 0.5}}) {
    CHECK(gaussian_disc_mass(k.c, k.s, k.R) == doctest::Approx(disc_mass_grid(k.c, k.s, k.R)).epsilon(1e-6));
  }
  CHECK(gaussian_disc_mass(1.0, 0.5, 0.0) == 0.0);
}

TEST_CASE("PPP limit of the cluster distance laws") {
  const ClusterParams p{7.0, 0.0, 0.5};
  for (double r : {0.05, 0.2, 0.4}) {
    const double f = 1.0 - std::exp(-7.0 * kPi * r * r);
    CHECK(void_probability(r, p) == doctest::Approx(1.0 - f).epsilon(1e-7));
    CHECK(j_function(r, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j_function(r, p, {}, JForm::kIndependentSuperposition) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(nn_distance_cdf(r, p) == doctest::Approx(f).epsilon(1e-7));
  }
  for (double beta : {1.0, 2.0, 3.5}) {
    CHECK(empty_space_moment(beta, p) == doctest::Approx(ppp_contact_moment(beta, 7.0)).epsilon(1e-5));
  }
}

TEST_CASE("cluster distance laws are proper and ordered") {
  const ClusterParams p{2.0, 3.0, 0.5};
  double prev_g = 0.0, prev_f = 0.0;
  for (double r = 0.02; r < 1.0; r += 0.07) {
    const double f = 1.0 - void_probability(r, p);
    const double g = nn_distance_cdf(r, p);
    CHECK(g >= prev_g);
    CHECK(f >= prev_f);
    CHECK(g <= 1.0);
    // Clustering: a typical point sees neighbours sooner than a fixed location does.
    CHECK(g > f);
    CHECK(j_function(r, p) < 1.0);
    prev_g = g;
    prev_f = f;
  }
  const double m2 = cluster_nn_moment(2.0, p), m4 = cluster_nn_moment(4.0, p);
  CHECK(m4 >= m2 * m2);
  CHECK(cluster_nn_moment(0.0, p) == doctest::Approx(1.0));
  CHECK(cluster_nn_moment(0.5, p) > 0.0);
}

TEST_CASE("void probability against a Monte Carlo oracle") {
  const ClusterParams p{2.0, 3.0, 0.5};
  const Window w(9.0, 9.0, true);
  const std::vector<double> radii{0.1, 0.2, 0.3};
  const std::vector<Point> probes{{1.5, 1.5}, {4.5, 1.5}, {7.5, 1.5}, {1.5, 4.5}, {4.5, 4.5},
                                  {7.5, 4.5}, {1.5, 7.5}, {4.5, 7.5}, {7.5, 7.5}};
  std::vector<int> empty(radii.size(), 0);
  const int reps = 1500;
  for (int i = 0; i < reps; ++i) {
    const auto bs = sample_cluster_bs(p.parent_intensity, p.mean_offspring, p.sigma, w, derive_seed(21, 1, i));
    const auto all = bs.combined();
    for (const Point& q : probes) {
      double best = 1e9;
      for (const Point& x : all.points) best = std::min(best, w.distance(q, x));
      for (std::size_t k = 0; k < radii.size(); ++k) empty[k] += best > radii[k] ? 1 : 0;
    }
  }
  const double n = reps * static_cast<double>(probes.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double v = void_probability(radii[k], p);
    const double emp = empty[k] / n;
    CHECK(std::abs(emp - v) < 4.0 * std::sqrt(v * (1 - v) / n));
  }
}

TEST_CASE("nearest-neighbour CDF against simulation (small run)") {
  const ClusterParams p{2.0, 3.0, 0.5};
  const Window w(5.0, 5.0, true);
  std::vector<double> d;
  for (int i = 0; i < 300; ++i) {
    const auto bs = sample_cluster_bs(p.parent_intensity, p.mean_offspring, p.sigma, w, derive_seed(33, 1, i));
    const auto nn = nearest_neighbor_distances(bs.combined(), w);
    for (double x : nn) if (std::isfinite(x)) d.push_back(x);
  }
  std::sort(d.begin(), d.end());
  double ks = 0.0;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 400)) {
    const double g = nn_distance_cdf(d[i], p);
    ks = std::max({ks, std::abs(g - double(i) / n), std::abs(g - double(i + 1) / n)});
  }
  CHECK(ks < 0.02);
}

TEST_CASE("quadrature failure and invalid parameters") {
  const ClusterParams p{2.0, 3.0, 0.5};
  QuadratureSettings strict;
  strict.abs_tol = 1e-300;
  strict.rel_tol = 1e-300;
  strict.max_subdivisions = 1;
  CHECK_THROWS_AS(void_probability(0.3, p, strict), NumericalError);
  CHECK_THROWS_AS(void_probability(-0.1, p), ParameterError);
  CHECK_THROWS_AS(void_probability(0.1, ClusterParams{-1.0, 3.0, 0.5}), ParameterError);
  CHECK_THROWS_AS(void_probability(0.1, ClusterParams{1.0, 3.0, 0.0}), ParameterError);
  QuadratureSettings bad;
  bad.rel_tol = 0.0;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(cluster_nn_moment(2.0, p, bad), ParameterError);
}

}
