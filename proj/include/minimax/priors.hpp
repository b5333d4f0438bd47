#pragma once

#include <string>
#include <variant>
#include <vector>

#include "minimax/models.hpp"

namespace minimax {

/// Geometry of the minimum-Fisher-information squared-cosine density on
/// [-1, 1] subject to putting mass a on [0, 1].
struct KeplerSolution {
  double a = 0.5;
  double y_a = 0.0;        // root of y + sin(pi y)/pi = 2a - 1
  double w_a = 2.0;        // support width 2 / (|y_a| + 1)
  double s_minus = -1.0;
  double s_plus = 1.0;
  double min_fisher = 0.0; // 4 pi^2 / w_a^2
};

/// q(t) = cos^2(pi (t - center) / (2 halfwidth)) / halfwidth on center +/- halfwidth.
struct Cosine {
  double center = 0.0;
  double halfwidth = 1.0;
};

/// Kepler-constrained cosine density, moved to `center` and stretched by `scale`.
struct KeplerCosine {
  double a = 0.5;
  KeplerSolution solution;
  double center = 0.0;
  double scale = 1.0;
};

struct GaussianPrior {
  double mu = 0.0;
  double sigma = 1.0;
};

struct UniformPrior {
  double lo = -1.0;
  double hi = 1.0;
};

using Prior = std::variant<Cosine, KeplerCosine, GaussianPrior, UniformPrior>;

struct Interval {
  double lo;
  double hi;
};

struct NicenessReport {
  bool is_nice = true;
  std::vector<std::string> reasons;
};

// Validating constructors.
Prior cosine_prior(double center, double halfwidth);
Prior gaussian_prior(double mu, double sigma);
Prior uniform_prior(double lo, double hi);
Prior kepler_prior(double a, double center = 0.0, double scale = 1.0);

void validate_prior(const Prior& prior);
std::string prior_name(const Prior& prior);

double prior_density(const Prior& prior, double t);

/// q'(t) where it exists; 0 outside the support and at kinks.
double prior_density_derivative(const Prior& prior, double t);

/// Closed support; infinite endpoints for the Gaussian prior.
Interval prior_support(const Prior& prior);

/// Finite interval carrying all but a negligible (< 1e-40) share of the mass.
Interval prior_integration_range(const Prior& prior);

/// Points where the density or its derivative is not smooth.
std::vector<double> prior_kinks(const Prior& prior);

/// Fisher information of the location family generated by the prior.
DivergenceValue prior_fisher_info(const Prior& prior);

/// Solves the Kepler equation y + sin(pi y)/pi = 2a - 1 by bisection.
KeplerSolution solve_kepler(double a, double tol = 1e-13);

/// 4 pi^2 / w_a^2.
double min_fisher_constrained(double a);

/// Density of the constrained minimizer on the unit scale.
double kepler_prior_density(double a, double t);
double kepler_prior_density(const KeplerSolution& sol, double t);

/// t -> q((t - center) / scale) / scale.
Prior dilate(const Prior& prior, double center, double scale);

NicenessReport check_nice(const Prior& prior);

}  // namespace minimax
