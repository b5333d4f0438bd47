#include "minimax/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "minimax/errors.hpp"

namespace minimax {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_n(long long n) {
  if (n < 1) throw ValidationError("n must be >= 1");
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be finite and > 0");
}

void require_nice(const Prior& prior) {
  const auto report = check_nice(prior);
  if (!report.is_nice) {
    std::string msg = "prior is not nice:";
    for (const auto& r : report.reasons) msg += " " + r + ";";
    throw ValidationError(msg);
  }
}

std::vector<double> psi_kinks(const Functional& f, const Prior& prior, double h) {
  auto kinks = prior_kinks(prior);
  if (!std::holds_alternative<Identity>(f)) {
    kinks.push_back(0.0);
    kinks.push_back(h);
  }
  return kinks;
}

// Tightens the absolute tolerance for integrals whose size scales like h^2.
QuadratureSpec scaled_quad(const QuadratureSpec& quad, double h) {
  QuadratureSpec out = quad;
  out.abs_tol = std::max(std::min(quad.abs_tol, 1e-6 * h * h), 1e-300);
  return out;
}

struct ShiftMoments {
  double mean = 0.0;    // int psi(t) - psi(t - h) dQ
  double second = 0.0;  // int (psi(t) - psi(t - h))^2 dQ
};

ShiftMoments shift_moments(const Prior& prior, const Functional& f, double h,
                           const QuadratureSpec& quad) {
  const auto r = prior_integration_range(prior);
  const auto kinks = psi_kinks(f, prior, h);
  const auto diff = [&](double t) { return functional_eval(f, t) - functional_eval(f, t - h); };
  ShiftMoments m;
  m.mean = integrate_piecewise([&](double t) { return diff(t) * prior_density(prior, t); }, r.lo,
                               r.hi, kinks, quad);
  m.second = integrate_piecewise(
      [&](double t) {
        const double d = diff(t);
        return d * d * prior_density(prior, t);
      },
      r.lo, r.hi, kinks, quad);
  return m;
}

double prior_dispersion(const Prior& prior) {
  return std::visit(overloaded{[](const Cosine& c) { return c.halfwidth; },
                               [](const KeplerCosine& k) { return k.scale; },
                               [](const GaussianPrior& g) { return g.sigma; },
                               [](const UniformPrior& u) { return 0.5 * (u.hi - u.lo); }},
                    prior);
}

double factorial(int k) {
  double v = 1.0;
  for (int i = 2; i <= k; ++i) v *= i;
  return v;
}

}  // namespace

Functional power_max(double alpha) {
  Functional f = PowerMax{alpha};
  validate_functional(f);
  return f;
}

void validate_functional(const Functional& f) {
  if (const auto* p = std::get_if<PowerMax>(&f)) {
    if (!(p->alpha > 0.0 && p->alpha <= 1.0)) throw ValidationError("PowerMax: alpha must lie in (0, 1]");
  }
}

std::string functional_name(const Functional& f) {
  return std::visit(overloaded{[](const Identity&) { return std::string("identity"); },
                               [](const MaxZero&) { return std::string("maxzero"); },
                               [](const PowerMax&) { return std::string("powermax"); }},
                    f);
}

double functional_eval(const Functional& f, double theta) {
  return std::visit(overloaded{[&](const Identity&) { return theta; },
                               [&](const MaxZero&) { return std::max(theta, 0.0); },
                               [&](const PowerMax& p) {
                                 return theta <= 0.0 ? 0.0 : std::pow(theta, p.alpha);
                               }},
                    f);
}

double functional_derivative(const Functional& f, double theta) {
  return std::visit(overloaded{[&](const Identity&) { return 1.0; },
                               [&](const MaxZero&) { return theta > 0.0 ? 1.0 : 0.0; },
                               [&](const PowerMax& p) {
                                 return theta > 0.0 ? p.alpha * std::pow(theta, p.alpha - 1.0) : 0.0;
                               }},
                    f);
}

double hellinger_mixture_bound(const Family& family, long long n, const Prior& prior,
                               const Functional& f, double h, const QuadratureSpec& quad) {
  require_n(n);
  validate_functional(f);
  require_nice(prior);
  if (h == 0.0 || !std::isfinite(h)) throw ValidationError("hellinger_mixture_bound: h must be finite and nonzero");
  const auto q = scaled_quad(quad, h);
  const double h2 = mixture_hellinger_sq(MixtureSpec{family, n, prior, h, q});
  if (h2 < 1e-14) throw NumericalError("hellinger_mixture_bound: mixture Hellinger distance underflows");
  const auto m = shift_moments(prior, f, h, q);
  if (m.mean == 0.0) return 0.0;
  const double a = m.mean * m.mean / (4.0 * h2);
  const double root = std::sqrt(a) - std::sqrt(std::max(m.second, 0.0));
  return root > 0.0 ? root * root : 0.0;
}

Interval default_shift_range(const Prior& prior) {
  validate_prior(prior);
  const double s = prior_dispersion(prior);
  return {1e-4 * s, 10.0 * s};
}

BoundResult hellinger_mixture_bound_sup(const Family& family, long long n, const Prior& prior,
                                        const Functional& f, double h_lo, double h_hi,
                                        const QuadratureSpec& quad) {
  if (!(h_lo > 0.0 && h_lo < h_hi) || !std::isfinite(h_hi)) {
    throw ValidationError("hellinger_mixture_bound_sup: need 0 < h_lo < h_hi");
  }
  require_nice(prior);
  // Searched on log|h| so that small shifts get as much resolution as large ones.
  BoundResult best{-1.0, {{"h", h_lo}}, "hellinger_mixture"};
  for (const double sign : {1.0, -1.0}) {
    const auto objective = [&](double u) {
      const double h = sign * std::exp(u);
      try {
        return hellinger_mixture_bound(family, n, prior, f, h, quad);
      } catch (const NumericalError&) {
        return -std::numeric_limits<double>::infinity();
      }
    };
    const auto m = maximize_1d(objective, std::log(h_lo), std::log(h_hi));
    if (m.value > best.value) {
      best.value = m.value;
      best.argmax["h"] = sign * std::exp(m.argmax);
    }
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

double chi2_mixture_bound(const Family& family, long long n, const Prior& prior,
                          const Functional& f, double h, double lambda,
                          const QuadratureSpec& quad, int grid_points) {
  require_n(n);
  validate_functional(f);
  validate_family_prior(family, prior);
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("chi2_mixture_bound: lambda must lie in [0, 1]");
  if (!std::isfinite(h)) throw ValidationError("chi2_mixture_bound: h must be finite");
  if (lambda == 1.0 || h == 0.0) return 0.0;
  if (lambda > 0.0 && n != 1) {
    throw ValidationError("chi2_mixture_bound: lambda > 0 is only supported for n = 1");
  }

  const auto q = scaled_quad(quad, h);
  double chi = 0.0;
  if (lambda == 0.0) {
    const auto d = mixture_chi_sq(MixtureSpec{family, n, prior, h, q});
    if (d.is_divergent()) return 0.0;
    chi = d.value();
  } else {
    chi = mixture_chi_sq_interpolated_grid(family, prior, h, lambda,
                                           default_grid(family, prior, h, grid_points))
              .value;
    if (!std::isfinite(chi)) return 0.0;
  }
  if (!(chi > 0.0)) throw NumericalError("chi2_mixture_bound: chi-squared denominator vanished");

  const auto m = shift_moments(prior, f, h, q);
  const double a = m.mean * m.mean / chi;
  const double b = std::max(m.second, 0.0);
  const double keep = 1.0 - lambda;
  if (lambda == 0.0) return a;
  if (keep * keep * a <= lambda * b) return 0.0;
  const double inner = keep * (a - lambda * (a + b));
  if (inner <= 0.0) return 0.0;
  const double root = std::sqrt(inner) - std::sqrt(lambda * lambda * b);
  return root > 0.0 ? root * root : 0.0;
}

double van_trees_value(const Family& family, long long n, const Prior& prior,
                       const Functional& f, const QuadratureSpec& quad) {
  require_n(n);
  validate_functional(f);
  require_nice(prior);
  const auto info = fisher_info(family, 0.0);
  if (info.is_divergent()) throw ValidationError("van_trees_value: the family has no finite Fisher information");
  const auto prior_info = prior_fisher_info(prior);
  if (prior_info.is_divergent()) throw ValidationError("van_trees_value: prior Fisher information is infinite");

  const auto r = prior_integration_range(prior);
  const auto kinks = prior_kinks(prior);
  const auto density = [&](double t) { return prior_density(prior, t); };
  double numerator = 0.0;
  if (std::holds_alternative<Identity>(f)) {
    numerator = integrate_piecewise(density, r.lo, r.hi, kinks, quad);
  } else if (r.hi > 0.0) {
    const double alpha = std::holds_alternative<PowerMax>(f) ? std::get<PowerMax>(f).alpha : 1.0;
    const double lo = std::max(r.lo, 0.0);
    if (alpha == 1.0) {
      numerator = integrate_piecewise(density, lo, r.hi, kinks, quad);
    } else {
      // u = t^alpha removes the singular derivative at 0.
      std::vector<double> mapped;
      for (double k : kinks) {
        if (k > 0.0) mapped.push_back(std::pow(k, alpha));
      }
      numerator = integrate_piecewise([&](double u) { return density(std::pow(u, 1.0 / alpha)); },
                                      std::pow(lo, alpha), std::pow(r.hi, alpha), mapped, quad);
    }
  }
  return numerator * numerator / (prior_info.value() + static_cast<double>(n) * info.value());
}

BoundResult vt_kepler_bound(double delta, long long n, double sup_fisher) {
  require_delta(delta);
  require_n(n);
  if (!(sup_fisher > 0.0) || !std::isfinite(sup_fisher)) throw ValidationError("sup_fisher must be finite and > 0");
  const double nn = static_cast<double>(n);
  const auto objective = [&](double a) {
    const double w = solve_kepler(a).w_a;
    return nn * a * a / (4.0 * kPi * kPi / (w * w * delta * delta) + nn * sup_fisher);
  };
  const auto m = maximize_1d(objective, 0.0, 1.0);
  return {std::max(m.value, 0.0), {{"a", m.argmax}}, "vt"};
}

double diffeo_bound(double delta, long long n, double xi1, double xi2, const QuadratureSpec& quad) {
  require_delta(delta);
  require_n(n);
  if (!(xi2 > 0.0) || !std::isfinite(xi2) || !std::isfinite(xi1)) {
    throw ValidationError("diffeo_bound: need finite xi1 and xi2 > 0");
  }
  constexpr double kZ = 12.0;
  const double kink = -xi1 / xi2;
  const auto g = [&](double z) {
    const double u = xi1 + z * xi2;
    return 1.0 / (1.0 + u * u);
  };
  double num = 0.0;
  if (kink < kZ) {
    num = integrate_piecewise([&](double z) { return g(z) * normal_pdf(z); }, std::max(kink, -kZ), kZ,
                              {}, quad);
  }
  const double den = integrate_piecewise(
      [&](double z) {
        const double v = g(z);
        return v * v * normal_pdf(z);
      },
      -kZ, kZ, {kink}, quad);
  const double scale = 4.0 * static_cast<double>(n) * xi2 * xi2;
  return scale * num * num / (kPi * kPi / (delta * delta) + scale * den);
}

BoundResult diffeo_bound_sup(double delta, long long n) {
  require_delta(delta);
  require_n(n);
  SearchBox box;
  box.axes[0] = {-10.0, 10.0, false};
  box.axes[1] = {1e-3, 10.0, true};
  const auto m = maximize_2d([&](double a, double b) { return diffeo_bound(delta, n, a, b); }, box);
  return {std::max(m.value, 0.0), {{"xi1", m.argmax[0]}, {"xi2", m.argmax[1]}}, "diffeo"};
}

double two_point_hellinger_bound(const Family& family, long long n, const Functional& f,
                                 double theta1, double theta2) {
  require_n(n);
  validate_functional(f);
  validate_theta(family, theta1);
  validate_theta(family, theta2);
  const double h2 = theta1 == theta2 ? 0.0 : hellinger_sq_iid(family, theta1, theta2, n);
  const double factor = (1.0 - h2) / 4.0;
  if (!(factor > 0.0)) return 0.0;
  const double d = functional_eval(f, theta1) - functional_eval(f, theta2);
  return factor * d * d;
}

BoundResult two_point_local_bound(const Family& family, long long n, const Functional& f,
                                  double center, double delta) {
  require_n(n);
  require_delta(delta);
  validate_functional(f);
  validate_theta(family, center);
  if (std::holds_alternative<UniformScale>(family) && !(center - delta > 0.0)) {
    throw ValidationError("two_point_local_bound: Uniform family needs center - delta > 0");
  }
  SearchBox box;
  box.axes[0] = {center - delta, center + delta, false};
  box.axes[1] = {center - delta, center + delta, false};
  const auto m = maximize_2d(
      [&](double a, double b) { return two_point_hellinger_bound(family, n, f, a, b); }, box);
  return {static_cast<double>(n) * std::max(m.value, 0.0),
          {{"theta1", m.argmax[0]}, {"theta2", m.argmax[1]}},
          "twopoint"};
}

double lam_objective_regular(double x) { return (-0.25 + 0.5 * std::exp(-x * x / 8.0)) * x * x; }

double lam_objective_uniform_twopoint(double eta) {
  return 4.0 * std::max(-0.25 + 0.5 * std::exp(-eta), 0.0) * eta * eta;
}

double lam_objective_uniform_diffeo(double c) {
  if (c <= 0.0) return 0.0;
  const double bracket = c / (2.0 * std::sqrt(-2.0 * std::expm1(-c / 2.0))) - c;
  return bracket > 0.0 ? bracket * bracket : 0.0;
}

BoundResult lam_constant_regular() {
  const auto m = maximize_1d(lam_objective_regular, 0.0, 10.0);
  return {m.value, {{"x", m.argmax}}, "lam_regular"};
}

BoundResult lam_constant_uniform_twopoint() {
  const auto m = maximize_1d(lam_objective_uniform_twopoint, 0.0, 10.0);
  return {m.value, {{"eta", m.argmax}}, "lam_uniform_twopoint"};
}

BoundResult lam_constant_uniform_diffeo() {
  const auto m = maximize_1d(lam_objective_uniform_diffeo, 0.0, 10.0);
  return {m.value, {{"C", m.argmax}}, "lam_uniform_diffeo"};
}

double PolyKernel::operator()(double u) const { return derivative(0, u); }

double PolyKernel::derivative(int d, double u) const {
  if (u < -1.0 || u > 1.0) return 0.0;
  double v = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= d; --k) {
    double c = coeffs[static_cast<std::size_t>(k)];
    for (int j = 0; j < d; ++j) c *= (k - j);
    v = v * u + c;
  }
  return v;
}

void PolyKernel::validate() const {
  if (order < 1) throw ValidationError("PolyKernel: order must be >= 1");
  if (coeffs.empty()) throw ValidationError("PolyKernel: no coefficients");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw ValidationError("PolyKernel: coefficients must be finite");
  }
  // Exact moments of a polynomial on [-1, 1].
  const auto moment = [&](int k) {
    double m = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const auto p = static_cast<int>(j) + k;
      if (p % 2 == 0) m += coeffs[j] * 2.0 / (p + 1);
    }
    return m;
  };
  if (std::abs(moment(0) - 1.0) > 1e-10) throw ValidationError("PolyKernel: must integrate to 1");
  for (int k = 1; k < order; ++k) {
    if (std::abs(moment(k)) > 1e-8) throw ValidationError("PolyKernel: moments below the order must vanish");
  }
}

DensityLamTerms density_lam_terms(int s, const PolyKernel& kernel, const QuadratureSpec& quad) {
  if (s < 1) throw ValidationError("density_lam_terms: s must be >= 1");
  PolyKernel k = kernel;
  k.order = s;
  k.validate();

  DensityLamTerms t;
  t.ks_at_zero = std::abs(k.derivative(s, 0.0));
  if (!(t.ks_at_zero > 0.0)) throw ValidationError("degenerate kernel: K^(s)(0) = 0");

  t.int_k_sq = integrate_adaptive([&](double u) { return k(u) * k(u); }, -1.0, 1.0, quad);
  t.int_k_abs_us = std::abs(integrate_piecewise(
                       [&](double u) { return k(u) * std::pow(std::abs(u), s); }, -1.0, 1.0, {0.0},
                       quad)) /
                   factorial(s - 1);

  // Split |K^(s)| at its sign changes.
  const auto ks = [&](double u) { return k.derivative(s, u); };
  std::vector<double> roots;
  const auto grid = linear_grid(-1.0, 1.0, 2049);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = ks(grid[i]);
    const double b = ks(grid[i + 1]);
    if (a == 0.0) {
      roots.push_back(grid[i]);
    } else if (a * b < 0.0) {
      roots.push_back(find_root_bisect(ks, grid[i], grid[i + 1], 1e-15));
    }
  }
  t.int_abs_ks = integrate_piecewise([&](double u) { return std::abs(ks(u)); }, -1.0, 1.0, roots, quad);
  return t;
}

double density_lam_constant(int s, double M, const PolyKernel& kernel, const QuadratureSpec& quad) {
  if (!(M > 0.0) || !std::isfinite(M)) throw ValidationError("density_lam_constant: M must be finite and > 0");
  const auto t = density_lam_terms(s, kernel, quad);
  const double sd = s;
  const double e = 2.0 * sd + 1.0;
  const double lead = 8.0 * std::pow(sd, 2.0 * sd / e) / (4.0 + 8.0 * sd) * std::pow(kPi, -2.0 / e) *
                      std::pow(t.ks_at_zero / M, 4.0 * sd / e) * std::pow(t.int_k_sq, 2.0 * sd / e);
  const double bracket = M * t.int_k_sq / t.ks_at_zero -
                         std::sqrt(kPi * kPi * (4.0 + 8.0 * sd)) * t.int_k_abs_us *
                             (1.0 + M * t.int_abs_ks / t.ks_at_zero);
  if (!(bracket > 0.0)) return 0.0;
  return lead * bracket * bracket;
}

}  // namespace minimax
