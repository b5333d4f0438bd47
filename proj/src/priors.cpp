#include "minimax/priors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "minimax/errors.hpp"
#include "minimax/numerics.hpp"

namespace minimax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPi = std::numbers::pi;
constexpr double kGaussianRangeSigmas = 14.0;

double cosine_unit_density(double u) {
  if (u < -1.0 || u > 1.0) return 0.0;
  const double c = std::cos(0.5 * kPi * u);
  return c * c;
}

double cosine_unit_derivative(double u) {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  return -0.5 * kPi * std::sin(kPi * u);
}

void require_probability(double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw ValidationError("constraint a must lie in [0, 1]");
  }
}

}  // namespace

Prior cosine_prior(double center, double halfwidth) {
  Prior p = Cosine{center, halfwidth};
  validate_prior(p);
  return p;
}

Prior gaussian_prior(double mu, double sigma) {
  Prior p = GaussianPrior{mu, sigma};
  validate_prior(p);
  return p;
}

Prior uniform_prior(double lo, double hi) {
  Prior p = UniformPrior{lo, hi};
  validate_prior(p);
  return p;
}

Prior kepler_prior(double a, double center, double scale) {
  Prior p = KeplerCosine{a, solve_kepler(a), center, scale};
  validate_prior(p);
  return p;
}

void validate_prior(const Prior& prior) {
  std::visit(
      overloaded{
          [](const Cosine& c) {
            if (!std::isfinite(c.center) || !(c.halfwidth > 0) || !std::isfinite(c.halfwidth)) {
              throw ValidationError("Cosine prior: need finite center and halfwidth > 0");
            }
          },
          [](const KeplerCosine& k) {
            require_probability(k.a);
            if (!std::isfinite(k.center) || !(k.scale > 0) || !std::isfinite(k.scale)) {
              throw ValidationError("Kepler prior: need finite center and scale > 0");
            }
          },
          [](const GaussianPrior& g) {
            if (!std::isfinite(g.mu) || !(g.sigma > 0) || !std::isfinite(g.sigma)) {
              throw ValidationError("Gaussian prior: need finite mu and sigma > 0");
            }
          },
          [](const UniformPrior& u) {
            if (!std::isfinite(u.lo) || !std::isfinite(u.hi) || !(u.lo < u.hi)) {
              throw ValidationError("Uniform prior: need finite lo < hi");
            }
          }},
      prior);
}

std::string prior_name(const Prior& prior) {
  return std::visit(overloaded{[](const Cosine&) { return std::string("cosine"); },
                               [](const KeplerCosine&) { return std::string("kepler"); },
                               [](const GaussianPrior&) { return std::string("gaussian"); },
                               [](const UniformPrior&) { return std::string("uniform"); }},
                    prior);
}

double prior_density(const Prior& prior, double t) {
  return std::visit(
      overloaded{[&](const Cosine& c) { return cosine_unit_density((t - c.center) / c.halfwidth) / c.halfwidth; },
                 [&](const KeplerCosine& k) {
                   return kepler_prior_density(k.solution, (t - k.center) / k.scale) / k.scale;
                 },
                 [&](const GaussianPrior& g) {
                   const double z = (t - g.mu) / g.sigma;
                   return 0.39894228040143267794 * std::exp(-0.5 * z * z) / g.sigma;
                 },
                 [&](const UniformPrior& u) { return (t >= u.lo && t <= u.hi) ? 1.0 / (u.hi - u.lo) : 0.0; }},
      prior);
}

double prior_density_derivative(const Prior& prior, double t) {
  return std::visit(
      overloaded{[&](const Cosine& c) {
                   return cosine_unit_derivative((t - c.center) / c.halfwidth) / (c.halfwidth * c.halfwidth);
                 },
                 [&](const KeplerCosine& k) {
                   const auto& s = k.solution;
                   const double u = (t - k.center) / k.scale;
                   if (u <= s.s_minus || u >= s.s_plus) return 0.0;
                   const double freq = kPi / s.w_a;
                   const double mid = 0.5 * (s.s_plus + s.s_minus);
                   const double amp = 2.0 / s.w_a;
                   return -amp * freq * std::sin(2.0 * freq * (u - mid)) / (k.scale * k.scale);
                 },
                 [&](const GaussianPrior& g) {
                   const double z = (t - g.mu) / g.sigma;
                   return -z / g.sigma * prior_density(prior, t);
                 },
                 [](const UniformPrior&) { return 0.0; }},
      prior);
}

Interval prior_support(const Prior& prior) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      overloaded{[](const Cosine& c) { return Interval{c.center - c.halfwidth, c.center + c.halfwidth}; },
                 [](const KeplerCosine& k) {
                   return Interval{k.center + k.scale * k.solution.s_minus,
                                   k.center + k.scale * k.solution.s_plus};
                 },
                 [](const GaussianPrior&) { return Interval{-inf, inf}; },
                 [](const UniformPrior& u) { return Interval{u.lo, u.hi}; }},
      prior);
}

Interval prior_integration_range(const Prior& prior) {
  if (const auto* g = std::get_if<GaussianPrior>(&prior)) {
    return {g->mu - kGaussianRangeSigmas * g->sigma, g->mu + kGaussianRangeSigmas * g->sigma};
  }
  return prior_support(prior);
}

std::vector<double> prior_kinks(const Prior& prior) {
  if (std::holds_alternative<GaussianPrior>(prior)) {
    return {std::get<GaussianPrior>(prior).mu};
  }
  const auto s = prior_support(prior);
  return {s.lo, s.hi};
}

DivergenceValue prior_fisher_info(const Prior& prior) {
  return std::visit(
      overloaded{[](const Cosine& c) { return DivergenceValue::finite(kPi * kPi / (c.halfwidth * c.halfwidth)); },
                 [](const KeplerCosine& k) {
                   return DivergenceValue::finite(k.solution.min_fisher / (k.scale * k.scale));
                 },
                 [](const GaussianPrior& g) { return DivergenceValue::finite(1.0 / (g.sigma * g.sigma)); },
                 [](const UniformPrior&) { return DivergenceValue::divergent(); }},
      prior);
}

KeplerSolution solve_kepler(double a, double tol) {
  require_probability(a);
  if (!(tol > 0)) throw ValidationError("solve_kepler: tol must be > 0");

  const double target = 2.0 * a - 1.0;
  double y = 0.0;
  if (target == 1.0 || target == -1.0) {
    // The map is flat at the endpoints, so bisection would only resolve
    // y to about the cube root of machine precision there.
    y = target;
  } else {
    y = find_root_bisect([target](double v) { return v + std::sin(kPi * v) / kPi - target; },
                         -1.0, 1.0, tol);
  }

  KeplerSolution sol;
  sol.a = a;
  sol.y_a = y;
  sol.w_a = 2.0 / (std::abs(y) + 1.0);
  if (a > 0.5) {
    sol.s_plus = 1.0;
    sol.s_minus = 1.0 - sol.w_a;
  } else {
    sol.s_minus = -1.0;
    sol.s_plus = sol.w_a - 1.0;
  }
  sol.min_fisher = 4.0 * kPi * kPi / (sol.w_a * sol.w_a);
  return sol;
}

double min_fisher_constrained(double a) { return solve_kepler(a).min_fisher; }

double kepler_prior_density(const KeplerSolution& sol, double t) {
  if (t < sol.s_minus || t > sol.s_plus) return 0.0;
  const double mid = 0.5 * (sol.s_plus + sol.s_minus);
  const double c = std::cos(kPi / sol.w_a * (t - mid));
  return 2.0 / sol.w_a * c * c;
}

double kepler_prior_density(double a, double t) { return kepler_prior_density(solve_kepler(a), t); }

Prior dilate(const Prior& prior, double center, double scale) {
  if (!(scale > 0) || !std::isfinite(scale) || !std::isfinite(center)) {
    throw ValidationError("dilate: scale must be > 0 and center finite");
  }
  Prior out = std::visit(
      overloaded{[&](const Cosine& c) -> Prior { return Cosine{center + scale * c.center, scale * c.halfwidth}; },
                 [&](const KeplerCosine& k) -> Prior {
                   return KeplerCosine{k.a, k.solution, center + scale * k.center, scale * k.scale};
                 },
                 [&](const GaussianPrior& g) -> Prior { return GaussianPrior{center + scale * g.mu, scale * g.sigma}; },
                 [&](const UniformPrior& u) -> Prior {
                   return UniformPrior{center + scale * u.lo, center + scale * u.hi};
                 }},
      prior);
  validate_prior(out);
  return out;
}

NicenessReport check_nice(const Prior& prior) {
  validate_prior(prior);
  NicenessReport report;
  if (std::holds_alternative<UniformPrior>(prior)) {
    report.reasons.emplace_back("boundary decay: density does not vanish at the support endpoints");
    report.reasons.emplace_back("finite Fisher information: the location family is not differentiable");
  }
  report.is_nice = report.reasons.empty();
  return report;
}

}  // namespace minimax
