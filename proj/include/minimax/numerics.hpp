#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace minimax {

using RealFn = std::function<double(double)>;
using RealFn2 = std::function<double(double, double)>;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Standard normal density. Throws ValidationError on non-finite input.
double normal_pdf(double x);

/// Standard normal distribution function, evaluated through erfc so that
/// both tails keep full relative precision.
double normal_cdf(double x);

/// E[Z^2 1{Z >= c}] for Z ~ N(0,1), i.e. c*phi(c) + 1 - Phi(c).
/// Accepts c = +/-infinity.
double gaussian_partial_second_moment(double c);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 60;
  int hermite_order = 80;

  void validate() const;
};

/// Adaptive Simpson on [a, b]. Throws ToleranceNotMet (carrying the best
/// estimate) when a subinterval hits max_depth without meeting tolerance.
double integrate_adaptive(const RealFn& f, double a, double b,
                          const QuadratureSpec& spec = {});

/// Sums integrate_adaptive over consecutive breakpoints. Breakpoints are
/// sorted and deduplicated; points outside [a, b] are dropped.
double integrate_piecewise(const RealFn& f, double a, double b,
                           std::vector<double> breakpoints,
                           const QuadratureSpec& spec = {});

/// Nodes and weights for E[g(Z)], Z ~ N(0,1): sum_i weight[i] * g(node[i]).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussHermiteRule(int order);

  double expectation(const RealFn& g) const;
};

/// Gauss-Hermite estimate of E[g(Z)]. Throws ValidationError if order < 2.
double gauss_hermite_expectation(const RealFn& g, int order = 80);

// ---------------------------------------------------------------------------
// Root finding and derivative-free maximization
// ---------------------------------------------------------------------------

/// Bisection. Requires f(lo) * f(hi) <= 0, otherwise throws BracketError.
double find_root_bisect(const RealFn& f, double lo, double hi, double tol);

struct SearchAxis {
  double lo = 0.0;
  double hi = 1.0;
  bool log_spaced = false;  // requires lo > 0
};

struct SearchBox {
  std::array<SearchAxis, 2> axes;
  int coarse_grid = 64;
  int refine_iters = 200;

  void validate() const;
};

struct Maximum1d {
  double argmax = 0.0;
  double value = 0.0;
};

struct Maximum2d {
  std::array<double, 2> argmax{};
  double value = 0.0;
};

/// Coarse grid scan followed by golden-section refinement inside the best
/// grid cell's neighbourhood. Non-finite objective values count as -inf.
/// Never returns less than the best grid value.
Maximum1d maximize_1d(const RealFn& f, double lo, double hi,
                      int coarse_grid = 64, int refine_iters = 200);

/// Coarse grid scan followed by a compass search with shrinking steps.
Maximum2d maximize_2d(const RealFn2& f, const SearchBox& box);

/// n points from lo to hi inclusive, equally spaced on a log scale.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// n points from lo to hi inclusive, equally spaced.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace minimax
