#include "crancost/palm_analytics.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "crancost/errors.hpp"

namespace crancost {

namespace {

constexpr double kPi = std::numbers::pi;

// Inner integrals run tighter than the outer ones so their noise does not
// stall the outer adaptive refinement.
constexpr double kInnerTolScale = 1e-2;

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol, unsigned depth, const char* what) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, depth, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > std::max(abs_tol, rel_tol * std::abs(value))) {
    throw NumericalError(std::string(what) + ": quadrature did not converge (error estimate " +
                             std::to_string(error) + ")",
                         error);
  }
  return value;
}

void require_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw ParameterError("radius must be finite and >= 0");
}

// Rayleigh density of |x| when x ~ N(0, sigma^2 I_2).
double rayleigh_pdf(double x, double sigma) {
  const double s2 = sigma * sigma;
  return x / s2 * std::exp(-0.5 * x * x / s2);
}

// Integral over R^2 of [1 - 1(x not in b(o,r)) exp(-m * mass(|x|))] dx.
double void_exponent(double r, const ClusterParams& p, const QuadratureSettings& q) {
  const double disc = kPi * r * r;
  if (p.mean_offspring == 0.0) return disc;
  auto integrand = [&](double x) {
    return 2.0 * kPi * x * -std::expm1(-p.mean_offspring * gaussian_disc_mass(x, p.sigma, r));
  };
  const double upper = r + q.max_radius_factor * p.sigma;
  return disc + integrate(integrand, r, upper, q.rel_tol * kInnerTolScale,
                          q.abs_tol * kInnerTolScale, q.max_subdivisions, "void probability");
}

// Survival-function moment E[R^k] = int_0^inf k r^(k-1) S(r) dr on [0, r_max].
// For 0 < k < 1 the substitution u = r^k removes the endpoint singularity.
double tail_moment(double k, double r_max, const std::function<double(double)>& survival,
                   const QuadratureSettings& q, const char* what) {
  if (k < 0.0 || !std::isfinite(k)) throw ParameterError("moment exponent must be finite and >= 0");
  if (k == 0.0) return 1.0;
  if (k < 1.0) {
    auto integrand = [&](double u) { return survival(std::pow(u, 1.0 / k)); };
    return integrate(integrand, 0.0, std::pow(r_max, k), q.rel_tol, q.abs_tol, q.max_subdivisions,
                     what);
  }
  auto integrand = [&](double r) { return k * std::pow(r, k - 1.0) * survival(r); };
  return integrate(integrand, 0.0, r_max, q.rel_tol, q.abs_tol, q.max_subdivisions, what);
}

double moment_cutoff(const ClusterParams& p, const QuadratureSettings& q) {
  // 1 - F(r) <= exp(-pi * parent_intensity * r^2), so the parent spacing bounds the tail.
  if (!(p.parent_intensity > 0.0)) {
    throw ParameterError("distance moments need a positive cluster-centre intensity");
  }
  return q.max_radius_factor / std::sqrt(p.parent_intensity);
}

}  // namespace

void ClusterParams::validate() const {
  if (!(parent_intensity >= 0.0) || !std::isfinite(parent_intensity)) {
    throw ParameterError("lambda1c must be finite and >= 0");
  }
  if (!(mean_offspring >= 0.0) || !std::isfinite(mean_offspring)) {
    throw ParameterError("lambda1m must be finite and >= 0");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be positive");
}

void QuadratureSettings::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ParameterError("quadrature tolerances must be > 0");
  if (!(max_radius_factor > 0.0)) throw ParameterError("max_radius_factor must be > 0");
  if (max_subdivisions == 0) throw ParameterError("max_subdivisions must be >= 1");
}

double ppp_contact_moment(double beta, double intensity) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw ParameterError("contact moment needs a positive intensity");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ParameterError("exponent must be >= 0");
  return std::tgamma(0.5 * beta + 1.0) / std::pow(kPi * intensity, 0.5 * beta);
}

double mixed_contact_moment(double base, double beta, double p, double microwave_intensity,
                            double fiber_intensity) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("mixing probability p must lie in [0,1]");
  return base * (p * ppp_contact_moment(beta, microwave_intensity) +
                 (1.0 - p) * ppp_contact_moment(beta, fiber_intensity));
}

double gaussian_disc_mass(double center_dist, double sigma, double radius) {
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  if (!(radius >= 0.0) || !(center_dist >= 0.0)) {
    throw ParameterError("disc radius and centre distance must be >= 0");
  }
  if (radius == 0.0) return 0.0;
  const double nc = (center_dist / sigma) * (center_dist / sigma);
  const double x = (radius / sigma) * (radius / sigma);
  if (nc == 0.0) return -std::expm1(-0.5 * x);  // Rayleigh CDF
  return boost::math::cdf(boost::math::non_central_chi_squared(2.0, nc), x);
}

double void_probability(double r, const ClusterParams& params, const QuadratureSettings& quad) {
  require_radius(r);
  params.validate();
  quad.validate();
  if (r == 0.0) return 1.0;
  return std::exp(-params.parent_intensity * void_exponent(r, params, quad));
}

double j_function(double r, const ClusterParams& params, const QuadratureSettings& quad, JForm form) {
  require_radius(r);
  params.validate();
  quad.validate();
  const double m = params.mean_offspring;
  if (r == 0.0 || m == 0.0) return 1.0;

  const double w_parent = 1.0 / (1.0 + m);
  const double w_offspring = m / (1.0 + m);
  const double upper = r + quad.max_radius_factor * params.sigma;
  const double rel = quad.rel_tol * kInnerTolScale;
  const double abs = quad.abs_tol * kInnerTolScale;
  auto sibling_term = [&](double x) {
    return rayleigh_pdf(x, params.sigma) * std::exp(-m * gaussian_disc_mass(x, params.sigma, r));
  };

  if (form == JForm::kIndependentSuperposition) {
    const double offspring = integrate(sibling_term, 0.0, upper, rel, abs, quad.max_subdivisions, "J");
    return w_parent + w_offspring * offspring;
  }
  // Typical macro: its own Poisson(m) offspring must miss the disc.
  const double own_cluster = std::exp(-m * gaussian_disc_mass(0.0, params.sigma, r));
  // Typical micro: parent at |x| outside the disc, siblings around it miss the disc.
  const double offspring = integrate(sibling_term, r, upper, rel, abs, quad.max_subdivisions, "J");
  return w_parent * own_cluster + w_offspring * offspring;
}

double nn_distance_cdf(double r, const ClusterParams& params, const QuadratureSettings& quad,
                       JForm form) {
  return 1.0 - void_probability(r, params, quad) * j_function(r, params, quad, form);
}

double cluster_nn_moment(double exponent, const ClusterParams& params, const QuadratureSettings& quad,
                         JForm form) {
  params.validate();
  quad.validate();
  if (exponent == 0.0) return 1.0;
  const double r_max = moment_cutoff(params, quad);
  auto survival = [&](double r) {
    return void_probability(r, params, quad) * j_function(r, params, quad, form);
  };
  return tail_moment(exponent, r_max, survival, quad, "nearest-neighbour moment");
}

double empty_space_moment(double exponent, const ClusterParams& params, const QuadratureSettings& quad) {
  params.validate();
  quad.validate();
  if (exponent == 0.0) return 1.0;
  const double r_max = moment_cutoff(params, quad);
  auto survival = [&](double r) { return void_probability(r, params, quad); };
  return tail_moment(exponent, r_max, survival, quad, "empty-space moment");
}

}  // namespace crancost
