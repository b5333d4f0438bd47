#include "minimax/mixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minimax/errors.hpp"

namespace minimax {

namespace {

std::vector<double> shifted_kinks(const Prior& prior, double h) {
  auto kinks = prior_kinks(prior);
  const std::size_t n = kinks.size();
  for (std::size_t i = 0; i < n; ++i) kinks.push_back(kinks[i] - h);
  return kinks;
}

Interval union_range(const Prior& prior, double h) {
  const auto r = prior_integration_range(prior);
  return {std::min(r.lo, r.lo - h), std::max(r.hi, r.hi - h)};
}

// Sample weight for the trapezoid rule.
double trapezoid_weight(int i, int count) { return (i == 0 || i == count - 1) ? 0.5 : 1.0; }

// sqrt(p_theta(x)) without forming the density first.
double root_density(const Family& family, double theta, double x) {
  if (const auto* g = std::get_if<GaussianLocation>(&family)) {
    const double z = (x - theta) / g->sigma;
    return std::exp(-0.25 * z * z) / std::sqrt(2.5066282746310002 * g->sigma);
  }
  return std::sqrt(density(family, theta, x));
}

std::vector<std::string> grid_coverage(const Family& family, const Prior& prior, double h,
                                       const GridSpec& grid) {
  std::vector<std::string> warnings;
  const auto t_need = union_range(prior, h);
  if (grid.t_lo > t_need.lo || grid.t_hi < t_need.hi) {
    warnings.emplace_back("t-grid does not cover the union of the prior and shifted prior supports");
  }
  const auto theta = prior_integration_range(prior);
  if (const auto* g = std::get_if<GaussianLocation>(&family)) {
    if (grid.x_lo > theta.lo - 8.0 * g->sigma || grid.x_hi < theta.hi + 8.0 * g->sigma) {
      warnings.emplace_back("x-grid does not cover 8 sigma beyond the parameter range");
    }
  } else if (grid.x_lo > 0.0 || grid.x_hi < theta.hi) {
    warnings.emplace_back("x-grid does not cover the full Uniform support");
  }
  return warnings;
}

}  // namespace

void validate_family_prior(const Family& family, const Prior& prior) {
  validate_prior(prior);
  if (std::holds_alternative<UniformScale>(family)) {
    if (!(prior_support(prior).lo > 0.0)) {
      throw ValidationError("Uniform family needs a prior supported on (0, inf)");
    }
  } else {
    validate_theta(family, 0.0);
  }
}

void MixtureSpec::validate() const {
  if (n < 1) throw ValidationError("MixtureSpec: n must be >= 1");
  if (!std::isfinite(h)) throw ValidationError("MixtureSpec: h must be finite");
  quad.validate();
  validate_family_prior(family, prior);
}

void GridSpec::validate() const {
  if (!(t_lo < t_hi) || !(x_lo < x_hi)) throw ValidationError("GridSpec: need lo < hi");
  if (t_points < 11 || x_points < 11 || t_points % 2 == 0 || x_points % 2 == 0) {
    throw ValidationError("GridSpec: point counts must be odd and >= 11");
  }
}

double prior_shift_hellinger_sq(const Prior& prior, double h, const QuadratureSpec& quad) {
  validate_prior(prior);
  if (h == 0.0) return 0.0;
  const auto range = union_range(prior, h);
  const auto integrand = [&](double t) {
    const double d = std::sqrt(prior_density(prior, t + h)) - std::sqrt(prior_density(prior, t));
    return d * d;
  };
  const double v = integrate_piecewise(integrand, range.lo, range.hi, shifted_kinks(prior, h), quad);
  return std::clamp(v, 0.0, 2.0);
}

DivergenceValue prior_shift_chi_sq(const Prior& prior, double h, const QuadratureSpec& quad) {
  validate_prior(prior);
  if (h == 0.0) return DivergenceValue::finite(0.0);
  const auto support = prior_support(prior);
  if (std::isfinite(support.lo) || std::isfinite(support.hi)) {
    // Q_h lives on support - h, which is not inside the support for h != 0.
    return DivergenceValue::divergent();
  }
  const auto r = prior_integration_range(prior);
  const double lo = std::min(r.lo, r.lo - 2.0 * h);
  const double hi = std::max(r.hi, r.hi - 2.0 * h);
  const auto integrand = [&](double t) {
    const double q = prior_density(prior, t);
    if (q <= 0.0) return 0.0;
    const double ratio = prior_density(prior, t + h) / q - 1.0;
    return ratio * ratio * q;
  };
  return DivergenceValue::finite(
      integrate_piecewise(integrand, lo, hi, shifted_kinks(prior, 2.0 * h), quad));
}

double mixture_hellinger_sq(const MixtureSpec& spec) {
  spec.validate();
  const double h = spec.h;
  if (h == 0.0) return 0.0;
  const double prior_part = prior_shift_hellinger_sq(spec.prior, h, spec.quad);

  const auto r = prior_integration_range(spec.prior);
  const double lo = std::max(r.lo, r.lo - h);
  const double hi = std::min(r.hi, r.hi - h);
  double model_part = 0.0;
  if (lo < hi) {
    const auto integrand = [&](double t) {
      const double overlap = std::sqrt(prior_density(spec.prior, t + h) * prior_density(spec.prior, t));
      if (overlap <= 0.0) return 0.0;
      return hellinger_sq_iid(spec.family, t + h, t, spec.n) * overlap;
    };
    model_part = integrate_piecewise(integrand, lo, hi, shifted_kinks(spec.prior, h), spec.quad);
  }
  return std::clamp(prior_part + model_part, 0.0, 2.0);
}

DivergenceValue mixture_chi_sq(const MixtureSpec& spec) {
  spec.validate();
  const double h = spec.h;
  if (h == 0.0) return DivergenceValue::finite(0.0);
  const auto prior_part = prior_shift_chi_sq(spec.prior, h, spec.quad);
  if (prior_part.is_divergent()) return prior_part;

  const auto r = prior_integration_range(spec.prior);
  const double lo = std::min(r.lo, r.lo - 2.0 * h);
  const double hi = std::max(r.hi, r.hi - 2.0 * h);
  bool divergent = false;
  const auto integrand = [&](double t) {
    const double q = prior_density(spec.prior, t);
    const double qh = prior_density(spec.prior, t + h);
    if (q <= 0.0 || qh <= 0.0) return 0.0;
    const auto chi = chi_sq_iid(spec.family, t + h, t, spec.n);
    if (chi.is_divergent()) {
      divergent = true;
      return 0.0;
    }
    return chi.value() * qh * (qh / q);
  };
  const double model_part =
      integrate_piecewise(integrand, lo, hi, shifted_kinks(spec.prior, 2.0 * h), spec.quad);
  if (divergent || !std::isfinite(model_part)) return DivergenceValue::divergent();
  return DivergenceValue::finite(prior_part.value() + model_part);
}

GridSpec default_grid(const Family& family, const Prior& prior, double h, int points) {
  validate_family_prior(family, prior);
  const auto t = union_range(prior, h);
  const auto theta = prior_integration_range(prior);
  GridSpec grid;
  grid.t_lo = t.lo;
  grid.t_hi = t.hi;
  grid.t_points = points;
  grid.x_points = points;
  if (const auto* g = std::get_if<GaussianLocation>(&family)) {
    grid.x_lo = theta.lo - 10.0 * g->sigma;
    grid.x_hi = theta.hi + 10.0 * g->sigma;
  } else {
    grid.x_lo = 0.0;
    grid.x_hi = theta.hi;
  }
  return grid;
}

OracleResult mixture_hellinger_oracle(const Family& family, const Prior& prior, double h,
                                      const GridSpec& grid) {
  validate_family_prior(family, prior);
  grid.validate();
  OracleResult out;
  out.warnings = grid_coverage(family, prior, h, grid);

  const double dt = (grid.t_hi - grid.t_lo) / (grid.t_points - 1);
  const double dx = (grid.x_hi - grid.x_lo) / (grid.x_points - 1);
  double total = 0.0;
  for (int i = 0; i < grid.t_points; ++i) {
    const double t = grid.t_lo + dt * i;
    const double rq0 = std::sqrt(prior_density(prior, t));
    const double rqh = std::sqrt(prior_density(prior, t + h));
    if (rq0 == 0.0 && rqh == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < grid.x_points; ++j) {
      const double x = grid.x_lo + dx * j;
      const double a = rqh > 0.0 ? rqh * root_density(family, t + h, x) : 0.0;
      const double b = rq0 > 0.0 ? rq0 * root_density(family, t, x) : 0.0;
      row += trapezoid_weight(j, grid.x_points) * (a - b) * (a - b);
    }
    total += trapezoid_weight(i, grid.t_points) * row;
  }
  out.value = total * dt * dx;
  return out;
}

OracleResult mixture_chi_sq_interpolated_grid(const Family& family, const Prior& prior, double h,
                                              double lambda, const GridSpec& grid) {
  validate_family_prior(family, prior);
  grid.validate();
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ValidationError("lambda must lie in [0, 1]");
  }
  OracleResult out;
  out.warnings = grid_coverage(family, prior, h, grid);

  const double dt = (grid.t_hi - grid.t_lo) / (grid.t_points - 1);
  const double dx = (grid.x_hi - grid.x_lo) / (grid.x_points - 1);
  const double keep = 1.0 - lambda;
  double total = 0.0;
  for (int i = 0; i < grid.t_points; ++i) {
    const double t = grid.t_lo + dt * i;
    const double q0 = prior_density(prior, t);
    const double qh = prior_density(prior, t + h);
    if (q0 == 0.0 && qh == 0.0) continue;
    double row = 0.0;
    for (int j = 0; j < grid.x_points; ++j) {
      const double x = grid.x_lo + dx * j;
      const double a = qh > 0.0 ? qh * density(family, t + h, x) : 0.0;
      const double b = q0 > 0.0 ? q0 * density(family, t, x) : 0.0;
      const double mix = lambda * a + keep * b;
      if (mix <= 0.0) {
        // A subnormal a next to an underflowed b is tail noise, not a support gap.
        if (a >= std::numeric_limits<double>::min()) {
          out.warnings.emplace_back("Ph is not dominated by the mixture; chi-squared is infinite");
          out.value = std::numeric_limits<double>::infinity();
          return out;
        }
        continue;
      }
      const double d = a - b;
      row += trapezoid_weight(j, grid.x_points) * d * d / mix;
    }
    total += trapezoid_weight(i, grid.t_points) * row;
  }
  out.value = keep * keep * total * dt * dx;
  return out;
}

}  // namespace minimax
