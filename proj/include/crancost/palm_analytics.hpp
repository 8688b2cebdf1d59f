#pragma once

// Distance distributions of the base-station and backhaul layers.
//
// Base stations form a Thomas cluster process: macro cluster centres are a
// PPP of intensity `parent_intensity`; each macro spawns Poisson(mean_offspring)
// micros displaced by an isotropic Gaussian with per-axis std `sigma`. Macros
// are themselves part of the layer. All two-dimensional integrals are reduced
// to radial ones by isotropy and evaluated with adaptive Gauss-Kronrod.

namespace crancost {

struct ClusterParams {
  double parent_intensity = 10.0;  // /km^2
  double mean_offspring = 4.0;     // micros per macro
  double sigma = 0.7071067811865476;  // km

  double total_intensity() const noexcept { return parent_intensity * (1.0 + mean_offspring); }
  void validate() const;
};

/// Public default tolerances: abs 1e-8, rel 1e-6, radial truncation at ten
/// characteristic lengths, 15 levels of interval bisection.
struct QuadratureSettings {
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  double max_radius_factor = 10.0;
  unsigned max_subdivisions = 15;

  void validate() const;
};

/// Which Palm form of the J-function to use.
///
/// kParentAware is exact for the cluster process above: a typical macro sees
/// its own offspring, a typical micro sees its parent and its siblings.
/// kIndependentSuperposition mixes J=1 for the macros with the offspring-only
/// Cox J-function, treating the two sub-layers as independent.
enum class JForm { kParentAware, kIndependentSuperposition };

/// E[d^beta] for the distance from a fixed location to the nearest point of a
/// PPP of the given intensity: Gamma(beta/2 + 1) / (pi * intensity)^(beta/2).
double ppp_contact_moment(double beta, double intensity);

/// base * E[d^beta] for a two-point mixed Poisson process that is a PPP of
/// intensity `microwave_intensity` with probability p and of
/// `fiber_intensity` otherwise.
double mixed_contact_moment(double base, double beta, double p, double microwave_intensity,
                            double fiber_intensity);

/// P(|X| <= radius) for X ~ N(c, sigma^2 I_2) with |c| = center_dist, via the
/// noncentral chi-square CDF with 2 degrees of freedom (1 - Q_1(c/sigma, R/sigma)).
double gaussian_disc_mass(double center_dist, double sigma, double radius);

/// Void probability of a disc of radius r: 1 - F(r).
double void_probability(double r, const ClusterParams& params, const QuadratureSettings& quad = {});

double j_function(double r, const ClusterParams& params, const QuadratureSettings& quad = {},
                  JForm form = JForm::kParentAware);

/// Nearest-neighbour distance CDF from the typical base station:
/// G(r) = 1 - (1 - F(r)) J(r).
double nn_distance_cdf(double r, const ClusterParams& params, const QuadratureSettings& quad = {},
                       JForm form = JForm::kParentAware);

/// E[R^exponent] for R ~ nn_distance_cdf, by the tail formula
/// int_0^inf exponent * r^(exponent-1) (1 - G(r)) dr.
double cluster_nn_moment(double exponent, const ClusterParams& params,
                         const QuadratureSettings& quad = {}, JForm form = JForm::kParentAware);

/// E[R^exponent] for the empty-space distance (fixed location to the nearest
/// base station), same tail formula with 1 - F(r).
double empty_space_moment(double exponent, const ClusterParams& params,
                          const QuadratureSettings& quad = {});

}  // namespace crancost
