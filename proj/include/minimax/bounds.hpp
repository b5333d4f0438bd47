#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "minimax/mixtures.hpp"
#include "minimax/models.hpp"
#include "minimax/numerics.hpp"
#include "minimax/priors.hpp"

namespace minimax {

struct Identity {};
/// psi(theta) = max(theta, 0).
struct MaxZero {};
/// psi(theta) = max(theta^alpha, 0), taken as 0 for theta <= 0.
struct PowerMax {
  double alpha = 1.0;
};

using Functional = std::variant<Identity, MaxZero, PowerMax>;

Functional power_max(double alpha);
void validate_functional(const Functional& f);
std::string functional_name(const Functional& f);

double functional_eval(const Functional& f, double theta);

/// Almost-everywhere derivative; 0 at the kink theta = 0.
double functional_derivative(const Functional& f, double theta);

struct BoundResult {
  double value = 0.0;
  std::map<std::string, double> argmax;
  std::string method;
};

// ---------------------------------------------------------------------------
// Mixture bounds (arbitrary prior Q, shift h)
// ---------------------------------------------------------------------------

/// [sqrt(A) - sqrt(B)]_+^2 with A = (int psi(t) - psi(t-h) dQ)^2 / (4 H^2(P0, Ph))
/// and B = int (psi(t) - psi(t-h))^2 dQ. Requires a nice prior and h != 0.
double hellinger_mixture_bound(const Family& family, long long n, const Prior& prior,
                               const Functional& f, double h, const QuadratureSpec& quad = {});

/// Default |h| search range [1e-4 s, 10 s], s the prior's dispersion.
Interval default_shift_range(const Prior& prior);

/// Best of hellinger_mixture_bound over h in [h_lo, h_hi] and [-h_hi, -h_lo].
BoundResult hellinger_mixture_bound_sup(const Family& family, long long n, const Prior& prior,
                                        const Functional& f, double h_lo, double h_hi,
                                        const QuadratureSpec& quad = {});

/// Chi-squared mixture bound after the closed-form optimization over the
/// auxiliary weight:  (sqrt((1-l){A - l(A+B)}) - sqrt(l^2 B))^2, zero when
/// (1-l)^2 A <= l B, with A = (int dpsi dQ)^2 / chi^2(Ph || l Ph + (1-l) P0).
/// lambda = 0 works for any n through the decomposition identity; lambda > 0
/// uses the (x, t) grid and is restricted to n = 1.
double chi2_mixture_bound(const Family& family, long long n, const Prior& prior,
                          const Functional& f, double h, double lambda,
                          const QuadratureSpec& quad = {}, int grid_points = 2001);

/// (int psi' dQ)^2 / (I(Q) + n int I(theta) dQ). Gaussian family only.
double van_trees_value(const Family& family, long long n, const Prior& prior,
                       const Functional& f, const QuadratureSpec& quad = {});

// ---------------------------------------------------------------------------
// Local bounds for max(theta, 0) on |theta| < delta (n-scaled)
// ---------------------------------------------------------------------------

/// sup_a n a^2 / (delta^-2 4 pi^2 / w_a^2 + n sup_fisher). argmax key "a".
BoundResult vt_kepler_bound(double delta, long long n, double sup_fisher);

/// Gaussian prior pushed through the arctan reparameterization, for fixed
/// (xi1, xi2):
///   4 n xi2^2 E[g(Z) 1{Z > -xi1/xi2}]^2 / (pi^2 delta^-2 + 4 n xi2^2 E[g(Z)^2]),
/// g(z) = 1 / (1 + (xi1 + z xi2)^2).
double diffeo_bound(double delta, long long n, double xi1, double xi2,
                    const QuadratureSpec& quad = {});

/// Sup of diffeo_bound over xi1 in [-10, 10], xi2 in [1e-3, 10] (log grid).
BoundResult diffeo_bound_sup(double delta, long long n);

/// [(1 - H^2(P^n_theta1, P^n_theta2)) / 4]_+ |psi(theta1) - psi(theta2)|^2.
double two_point_hellinger_bound(const Family& family, long long n, const Functional& f,
                                 double theta1, double theta2);

/// n times the sup of two_point_hellinger_bound over theta1, theta2 in
/// [center - delta, center + delta]. argmax keys "theta1", "theta2".
BoundResult two_point_local_bound(const Family& family, long long n, const Functional& f,
                                  double center, double delta);

// ---------------------------------------------------------------------------
// Scalar asymptotic constants
// ---------------------------------------------------------------------------

double lam_objective_regular(double x);
double lam_objective_uniform_twopoint(double eta);
double lam_objective_uniform_diffeo(double c);

/// Regular two-point constant, about 0.28953. argmax key "x".
BoundResult lam_constant_regular();
/// Uniform model two-point constant, about 0.0558. argmax key "eta".
BoundResult lam_constant_uniform_twopoint();
/// Uniform model diffeomorphism constant, about 0.0635^2. argmax key "C".
BoundResult lam_constant_uniform_diffeo();

// ---------------------------------------------------------------------------
// Density estimation constant
// ---------------------------------------------------------------------------

/// Polynomial kernel on [-1, 1]; coeffs[k] multiplies u^k.
struct PolyKernel {
  std::vector<double> coeffs;
  int order = 1;

  double operator()(double u) const;
  /// d-th derivative at u.
  double derivative(int d, double u) const;
  void validate() const;
};

struct DensityLamTerms {
  double int_k_sq = 0.0;        // int K^2
  double ks_at_zero = 0.0;      // |K^(s)(0)|
  double int_abs_ks = 0.0;      // int |K^(s)|
  double int_k_abs_us = 0.0;    // |int K(u) |u|^s du| / (s-1)!
};

DensityLamTerms density_lam_terms(int s, const PolyKernel& kernel, const QuadratureSpec& quad = {});

/// C(s, M, K) for the local minimax constant of pointwise density estimation.
double density_lam_constant(int s, double M, const PolyKernel& kernel,
                            const QuadratureSpec& quad = {});

}  // namespace minimax
