#pragma once

#include <string>
#include <vector>

#include "minimax/models.hpp"
#include "minimax/numerics.hpp"
#include "minimax/priors.hpp"

namespace minimax {

/// Joint measures P0(dx, dt) = P_t(dx) Q(dt) and Ph(dx, dt) = P_{t+h}(dx) Q(dt + h)
/// for n IID observations.
struct MixtureSpec {
  Family family = GaussianLocation{1.0};
  long long n = 1;
  Prior prior = GaussianPrior{0.0, 1.0};
  double h = 0.0;
  QuadratureSpec quad{};

  void validate() const;
};

/// Brute-force (x, t) grid for the n = 1 oracles.
struct GridSpec {
  double t_lo = -1.0;
  double t_hi = 1.0;
  int t_points = 2001;
  double x_lo = -1.0;
  double x_hi = 1.0;
  int x_points = 2001;

  void validate() const;
};

struct OracleResult {
  double value = 0.0;
  std::vector<std::string> warnings;  // coverage problems, empty when fine
};

/// Throws ValidationError if the family cannot be mixed over this prior
/// (the Uniform family needs a prior supported on (0, inf)).
void validate_family_prior(const Family& family, const Prior& prior);

/// H^2(Q_h, Q), integrated as the squared difference of root densities.
double prior_shift_hellinger_sq(const Prior& prior, double h, const QuadratureSpec& quad = {});

/// chi^2(Q_h || Q); divergent when the shifted support leaves the support.
DivergenceValue prior_shift_chi_sq(const Prior& prior, double h, const QuadratureSpec& quad = {});

/// H^2(Ph, P0) = H^2(Q_h, Q) + int H^2(P^n_{t+h}, P^n_t) sqrt(q(t+h) q(t)) dt.
double mixture_hellinger_sq(const MixtureSpec& spec);

/// chi^2(Ph || P0) = chi^2(Q_h || Q) + int chi^2(P^n_{t+h} || P^n_t) q(t+h)^2 / q(t) dt,
/// with q(t) = 0 contributing nothing.
DivergenceValue mixture_chi_sq(const MixtureSpec& spec);

/// A grid covering the relevant (x, t) region for n = 1 with the given resolution.
GridSpec default_grid(const Family& family, const Prior& prior, double h, int points = 2001);

/// Trapezoid sum of (sqrt(dPh) - sqrt(dP0))^2 over the (x, t) grid, n = 1.
OracleResult mixture_hellinger_oracle(const Family& family, const Prior& prior, double h,
                                      const GridSpec& grid);

/// chi^2(Ph || lambda Ph + (1 - lambda) P0) for n = 1 by the (x, t) grid.
OracleResult mixture_chi_sq_interpolated_grid(const Family& family, const Prior& prior, double h,
                                              double lambda, const GridSpec& grid);

}  // namespace minimax
