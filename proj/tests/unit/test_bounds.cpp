#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "minimax/bounds.hpp"
#include "minimax/errors.hpp"
#include "minimax/estimators.hpp"

using namespace minimax;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double trapezoid(const std::function<double(double)>& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (f(a) + f(b));
  for (long i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i));
  return s * h;
}

// Dense-grid oracle for the Gaussian expectations in the diffeo bound.
double diffeo_oracle(double delta, long long n, double xi1, double xi2) {
  const auto g = [&](double z) { return 1.0 / (1.0 + std::pow(xi1 + z * xi2, 2)); };
  const double kink = -xi1 / xi2;
  const double num = trapezoid([&](double z) { return g(z) * normal_pdf(z); }, std::max(kink, -14.0), 14.0, 2000000);
  const double den = trapezoid([&](double z) { return g(z) * g(z) * normal_pdf(z); }, -14.0, 14.0, 2000000);
  const double s = 4.0 * n * xi2 * xi2;
  return s * num * num / (kPi * kPi / (delta * delta) + s * den);
}

}  // namespace

TEST_CASE("functional_eval") {
  CHECK(functional_eval(MaxZero{}, -1.0) == 0.0);
  CHECK(functional_eval(MaxZero{}, 2.0) == 2.0);
  CHECK(functional_eval(PowerMax{0.5}, 4.0) == 2.0);
  CHECK(functional_eval(PowerMax{0.5}, -4.0) == 0.0);
  CHECK(functional_eval(Identity{}, -3.5) == -3.5);
  for (double t = -3.0; t <= 3.0; t += 0.25) CHECK(functional_eval(MaxZero{}, t) == functional_eval(PowerMax{1.0}, t));
  CHECK(functional_derivative(MaxZero{}, 0.0) == 0.0);
  CHECK(functional_derivative(MaxZero{}, 0.1) == 1.0);
  CHECK(functional_derivative(PowerMax{0.5}, 4.0) == 0.25);
  CHECK_THROWS_AS(power_max(0.0), ValidationError);
  CHECK_THROWS_AS(power_max(1.5), ValidationError);
}

TEST_CASE("van_trees_value") {
  const auto g = gaussian_family(1.0);
  CHECK(van_trees_value(g, 1, cosine_prior(0.0, 1.0), Identity{}) == Approx(1.0 / (kPi * kPi + 1.0)).epsilon(1e-9));
  CHECK(van_trees_value(g, 1, cosine_prior(0.0, 1.0), MaxZero{}) == Approx(0.25 / (kPi * kPi + 1.0)).epsilon(1e-9));
  CHECK(van_trees_value(g, 1, gaussian_prior(0.0, 1.0), Identity{}) == Approx(0.5).epsilon(1e-9));
  // Dilating the prior by delta scales I(Q) by delta^-2.
  for (double delta : {0.3, 2.0}) {
    const auto p = dilate(cosine_prior(0.0, 1.0), 0.0, delta);
    CHECK(van_trees_value(g, 5, p, Identity{}) ==
          Approx(1.0 / (kPi * kPi / (delta * delta) + 5.0)).epsilon(1e-9));
  }
  // PowerMax: (int alpha t^(alpha-1) q)^2 / (I(Q) + n) against a direct oracle on [eps, 1].
  const auto c = cosine_prior(0.0, 1.0);
  const double alpha = 0.5;
  const double num = trapezoid([&](double u) { return prior_density(c, u * u) * 2.0 * alpha * std::pow(u, 2.0 * alpha - 1.0); },
                               0.0, 1.0, 200000);
  CHECK(van_trees_value(g, 3, c, PowerMax{alpha}) == Approx(num * num / (kPi * kPi + 3.0)).epsilon(1e-8));
  CHECK_THROWS_AS(van_trees_value(uniform_family(), 1, cosine_prior(2.0, 1.0), Identity{}), ValidationError);
  CHECK_THROWS_AS(van_trees_value(g, 1, uniform_prior(-1.0, 1.0), Identity{}), ValidationError);
}

TEST_CASE("hellinger_mixture_bound") {
  const auto g = gaussian_family(1.0);
  const auto p = gaussian_prior(0.0, 1.0);
  // Approaches the van Trees value as h -> 0, with an O(h) gap.
  const double vt = van_trees_value(g, 1, p, Identity{});
  double prev_gap = 1.0;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const double gap = std::abs(hellinger_mixture_bound(g, 1, p, Identity{}, h) - vt);
    CHECK(gap < prev_gap);
    CHECK(gap <= 3.0 * h);
    prev_gap = gap;
  }
  // Closed form for this case: A = h^2 / (4 H^2) with H^2 = 2 - 2 exp(-h^2/4), B = h^2.
  const double h = 0.3;
  const double a = h * h / (4.0 * (-2.0 * std::expm1(-h * h / 4.0)));
  const double expected = std::pow(std::sqrt(a) - h, 2);
  QuadratureSpec q;
  q.rel_tol = 1e-12;
  CHECK(hellinger_mixture_bound(g, 1, p, Identity{}, h, q) == Approx(expected).epsilon(1e-8));
  CHECK_THROWS_AS(hellinger_mixture_bound(g, 1, p, Identity{}, 0.0), ValidationError);
  CHECK_THROWS_AS(hellinger_mixture_bound(g, 1, uniform_prior(-1.0, 1.0), Identity{}, 0.1), ValidationError);
  // Numerator vanishes: psi is constant where the prior lives.
  CHECK(hellinger_mixture_bound(g, 1, cosine_prior(-5.0, 1.0), MaxZero{}, 0.5) == 0.0);
}

TEST_CASE("hellinger_mixture_bound against plug-in risk") {
  const auto g = gaussian_family(1.0);
  const double delta = 0.5;
  const long long n = 100;
  const auto prior = dilate(cosine_prior(0.0, 1.0), 0.0, delta);
  const auto range = default_shift_range(prior);
  const auto r = hellinger_mixture_bound_sup(g, n, prior, MaxZero{}, range.lo, range.hi);
  CHECK(r.value > 0.0);
  CHECK(r.method == "hellinger_mixture");
  CHECK(n * r.value <= local_minimax_risk(PluginMLE{}, delta, n));
}

TEST_CASE("hellinger_mixture_bound_sup symmetry and ceiling") {
  const auto g = gaussian_family(1.0);
  const auto p = gaussian_prior(0.0, 1.0);
  const double plus = hellinger_mixture_bound(g, 1, p, Identity{}, 0.37);
  const double minus = hellinger_mixture_bound(g, 1, p, Identity{}, -0.37);
  CHECK(plus == Approx(minus).epsilon(1e-9));
  const auto r = hellinger_mixture_bound_sup(g, 1, p, Identity{}, 1e-4, 10.0);
  CHECK(r.value <= 0.5);
  double best = 0.0;
  for (double u = std::log(1e-4); u <= std::log(10.0); u += 0.05) best = std::max(best, hellinger_mixture_bound(g, 1, p, Identity{}, std::exp(u)));
  CHECK(r.value >= best - 1e-9);
  CHECK_THROWS_AS(hellinger_mixture_bound_sup(g, 1, p, Identity{}, 0.0, 1.0), ValidationError);
}

TEST_CASE("chi2_mixture_bound") {
  const auto g = gaussian_family(1.0);
  const auto p = gaussian_prior(0.0, 1.0);
  const double h = 0.4;
  QuadratureSpec q;
  q.rel_tol = 1e-12;
  const double v0 = chi2_mixture_bound(g, 1, p, Identity{}, h, 0.0, q);
  const auto chi = mixture_chi_sq(MixtureSpec{g, 1, p, h, q});
  CHECK(v0 == Approx(h * h / chi.value()).epsilon(1e-9));
  CHECK(v0 == Approx(h * h / std::expm1(2.0 * h * h)).epsilon(1e-8));
  CHECK(chi2_mixture_bound(uniform_family(), 1, cosine_prior(3.0, 1.0), Identity{}, 0.1, 0.0) == 0.0);
  CHECK(chi2_mixture_bound(g, 1, p, Identity{}, h, 1.0) == 0.0);
  CHECK_THROWS_AS(chi2_mixture_bound(g, 1, p, Identity{}, h, -0.1), ValidationError);
  CHECK_THROWS_AS(chi2_mixture_bound(g, 1, p, Identity{}, h, 1.1), ValidationError);
  CHECK_THROWS_AS(chi2_mixture_bound(g, 2, p, Identity{}, h, 0.2), ValidationError);

  // lambda > 0: closed form against the grid chi^2 and the moments.
  const double lambda = 0.1;
  const double chil = mixture_chi_sq_interpolated_grid(g, p, h, lambda, default_grid(g, p, h, 2001)).value;
  const double a = h * h / chil;
  const double b = h * h;
  const double expected = std::pow(std::sqrt((1.0 - lambda) * (a - lambda * (a + b))) - lambda * h, 2);
  CHECK(chi2_mixture_bound(g, 1, p, Identity{}, h, lambda) == Approx(expected).epsilon(1e-9));
  // Far-apart shift: the closed form is clamped at zero when (1 - lambda)^2 A <= lambda B.
  const double hf = 3.0;
  const double lf = 0.5;
  const double af = hf * hf / mixture_chi_sq_interpolated_grid(g, p, hf, lf, default_grid(g, p, hf, 2001)).value;
  const double bf = hf * hf;
  if ((1.0 - lf) * (1.0 - lf) * af <= lf * bf) {
    CHECK(chi2_mixture_bound(g, 1, p, Identity{}, hf, lf) == 0.0);
  } else {
    CHECK(chi2_mixture_bound(g, 1, p, Identity{}, hf, lf) > 0.0);
  }
}

TEST_CASE("vt_kepler_bound") {
  const auto r = vt_kepler_bound(100.0, 10000, 1.0);
  CHECK(std::abs(r.value - 1.0) <= 1e-2);
  CHECK(r.method == "vt");
  CHECK(r.argmax.count("a") == 1);
  // Dense a-grid oracle.
  double best = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double a = i / 10000.0;
    const double w = solve_kepler(a).w_a;
    best = std::max(best, 100.0 * a * a / (4.0 * kPi * kPi / (w * w) + 100.0));
  }
  const auto d = vt_kepler_bound(1.0, 100, 1.0);
  CHECK(d.value >= best - 1e-12);
  CHECK(std::abs(d.value - best) <= 1e-6);
  CHECK_THROWS_AS(vt_kepler_bound(0.0, 1, 1.0), ValidationError);
  CHECK_THROWS_AS(vt_kepler_bound(1.0, 0, 1.0), ValidationError);
  CHECK_THROWS_AS(vt_kepler_bound(1.0, 1, 0.0), ValidationError);
}

TEST_CASE("vt_kepler_bound is non-decreasing in delta and n") {
  const auto deltas = log_grid(1e-2, 1e2, 20);
  const auto ns = log_grid(1.0, 1e4, 20);
  std::vector<std::vector<double>> v(20, std::vector<double>(20));
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) v[i][j] = vt_kepler_bound(deltas[i], std::llround(ns[j]), 1.0).value;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      if (i) CHECK(v[i][j] >= v[i - 1][j] - 1e-12);
      if (j) CHECK(v[i][j] >= v[i][j - 1] - 1e-12);
    }
  }
}

TEST_CASE("diffeo_bound") {
  CHECK(std::abs(diffeo_bound(1.0, 100, 0.0, 1.0) - diffeo_oracle(1.0, 100, 0.0, 1.0)) <= 1e-8);
  CHECK(std::abs(diffeo_bound(0.3, 10, 1.5, 4.0) - diffeo_oracle(0.3, 10, 1.5, 4.0)) <= 1e-8);
  CHECK(std::abs(diffeo_bound(1e6, 100, 3.0, 1e-4) - diffeo_oracle(1e6, 100, 3.0, 1e-4)) <= 1e-8);
  CHECK(diffeo_bound(1.0, 100, -50.0, 0.1) <= 1e-12);
  CHECK_THROWS_AS(diffeo_bound(1.0, 1, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(diffeo_bound(1.0, 1, 0.0, -1.0), ValidationError);
}

TEST_CASE("diffeo expectations agree with Gauss-Hermite where the integrand is smooth") {
  const double xi1 = 0.7;
  const double xi2 = 0.05;  // kink far in the lower tail, g varies slowly
  const auto g = [&](double z) { return 1.0 / (1.0 + std::pow(xi1 + z * xi2, 2)); };
  const double den = gauss_hermite_expectation([&](double z) { return g(z) * g(z); }, 80);
  const double num = gauss_hermite_expectation(g, 80);
  const double s = 4.0 * 100 * xi2 * xi2;
  const double gh = s * num * num / (kPi * kPi + s * den);
  CHECK(std::abs(diffeo_bound(1.0, 100, xi1, xi2) - gh) <= 1e-9);
}

TEST_CASE("diffeo_bound_sup") {
  const auto r = diffeo_bound_sup(2.0, 100);
  CHECK(r.argmax.count("xi1") == 1);
  CHECK(r.argmax.count("xi2") == 1);
  // 512 x 512 grid oracle over the same box.
  double best = 0.0;
  const auto x1 = linear_grid(-10.0, 10.0, 512);
  const auto x2 = log_grid(1e-3, 10.0, 512);
  for (double a : x1)
    for (double b : x2) best = std::max(best, diffeo_bound(2.0, 100, a, b));
  CHECK(r.value >= best - 1e-4);
  CHECK(std::abs(r.value - best) <= 1e-4);
  CHECK(diffeo_bound_sup(1e-3, 10).value <= 1e-3);
  for (double delta : {0.1, 1.0, 10.0, 100.0}) {
    for (long long n : {1LL, 100LL, 10000LL}) CHECK(diffeo_bound_sup(delta, n).value <= 1.0);
  }
}

TEST_CASE("two_point_hellinger_bound") {
  const auto g = gaussian_family(1.0);
  CHECK(two_point_hellinger_bound(g, 10, MaxZero{}, 0.4, 0.4) == 0.0);
  CHECK(two_point_hellinger_bound(g, 10, Identity{}, 0.0, 50.0) == 0.0);
  for (double a : {-0.5, 0.1, 0.9}) {
    for (double b : {-0.2, 0.4}) {
      CHECK(two_point_hellinger_bound(g, 7, MaxZero{}, a, b) == two_point_hellinger_bound(g, 7, MaxZero{}, b, a));
    }
  }
  const double d = 0.3;
  const double h2 = -2.0 * std::expm1(-5.0 * d * d / 8.0);
  CHECK(two_point_hellinger_bound(g, 5, Identity{}, 0.0, d) == Approx((1.0 - h2) / 4.0 * d * d).epsilon(1e-14));
  // Uniform: theta2 = 1 + b/n, limit [-1/4 + e^{-b/2}/2]_+ (b/n)^2.
  for (double b : {0.5, 1.0}) {
    const long long n = 1000000;
    const double v = two_point_hellinger_bound(uniform_family(), n, Identity{}, 1.0, 1.0 + b / n);
    const double limit = (-0.25 + 0.5 * std::exp(-b / 2.0)) * std::pow(b / n, 2);
    CHECK(std::abs(v - limit) <= 1e-4 * limit);
  }
  CHECK(two_point_hellinger_bound(uniform_family(), 1000000, Identity{}, 1.0, 1.0 + 2e-6) == 0.0);
  CHECK_THROWS_AS(two_point_hellinger_bound(uniform_family(), 1, Identity{}, -1.0, 1.0), ValidationError);
}

TEST_CASE("two_point_local_bound") {
  const auto r = two_point_local_bound(gaussian_family(1.0), 100, MaxZero{}, 0.0, 1.0);
  // With theta2 = -delta fixed, n [(1-H^2)/4] x^2 is the regular LAM objective in sqrt(n)(x + delta).
  CHECK(r.value == Approx(0.28953).epsilon(2e-3));
  CHECK(r.value <= local_minimax_risk(PluginMLE{}, 1.0, 100));
  CHECK_THROWS_AS(two_point_local_bound(uniform_family(), 10, Identity{}, 0.5, 1.0), ValidationError);
}

TEST_CASE("scalar constants") {
  const auto r = lam_constant_regular();
  CHECK(std::abs(r.value - 0.28953) <= 5e-4);
  CHECK(lam_objective_regular(0.0) == 0.0);
  CHECK(lam_objective_regular(10.0) < 0.0);
  CHECK(r.argmax.at("x") < 10.0);
  const auto t = lam_constant_uniform_twopoint();
  CHECK(std::abs(t.value - 0.0558) <= 5e-4);
  CHECK(lam_objective_uniform_twopoint(0.0) == 0.0);
  CHECK(lam_objective_uniform_twopoint(std::log(2.0) + 1e-12) == 0.0);
  CHECK(lam_objective_uniform_twopoint(std::log(2.0) - 1e-3) > 0.0);
  const auto d = lam_constant_uniform_diffeo();
  CHECK(std::abs(d.value - 0.0635 * 0.0635) <= 1e-4);
  // Near zero the bracket behaves like sqrt(C)/2 - C.
  const double c = 1e-6;
  CHECK(lam_objective_uniform_diffeo(c) == Approx(std::pow(std::sqrt(c) / 2.0 - c, 2)).epsilon(1e-3));
  CHECK(lam_objective_uniform_diffeo(10.0) == 0.0);
}

TEST_CASE("PolyKernel") {
  const PolyKernel epan{{0.75, 0.0, -0.75}, 1};
  CHECK_NOTHROW(epan.validate());
  CHECK(epan(0.0) == 0.75);
  CHECK(epan(1.5) == 0.0);
  CHECK(epan.derivative(1, 0.5) == Approx(-0.75).epsilon(1e-15));
  CHECK_THROWS_AS((PolyKernel{{0.5, 0.0, -0.75}, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((PolyKernel{{0.75, 0.1, -0.75}, 2}.validate()), ValidationError);
}

TEST_CASE("density_lam_constant") {
  const PolyKernel epan{{0.75, 0.0, -0.75}, 1};
  CHECK_THROWS_AS(density_lam_constant(1, 1.0, epan), ValidationError);
  const auto e = density_lam_terms(2, epan);
  CHECK(e.int_k_sq == Approx(0.6).epsilon(1e-12));

  const double c = 0.4;
  const PolyKernel k{{0.75, c, -0.75}, 1};
  const auto t = density_lam_terms(1, k);
  // Trapezoid cross-checks with 10^6 panels.
  const long panels = 1000000;
  CHECK(t.int_k_sq == Approx(trapezoid([&](double u) { return k(u) * k(u); }, -1.0, 1.0, panels)).epsilon(1e-9));
  CHECK(t.int_k_sq == Approx(0.6 + 2.0 * c * c / 3.0).epsilon(1e-12));
  CHECK(t.ks_at_zero == Approx(c).epsilon(1e-15));
  CHECK(t.int_abs_ks ==
        Approx(trapezoid([&](double u) { return std::abs(k.derivative(1, u)); }, -1.0, 1.0, panels)).epsilon(1e-9));
  CHECK(t.int_k_abs_us ==
        Approx(std::abs(trapezoid([&](double u) { return k(u) * std::abs(u); }, -1.0, 1.0, panels))).epsilon(1e-9));

  const auto formula = [&](double M) {
    const double s = 1.0;
    const double lead = 8.0 * std::pow(s, 2.0 * s / 3.0) / 12.0 * std::pow(kPi, -2.0 / 3.0) *
                        std::pow(t.ks_at_zero / M, 4.0 / 3.0) * std::pow(t.int_k_sq, 2.0 / 3.0);
    const double br = M * t.int_k_sq / t.ks_at_zero -
                      std::sqrt(kPi * kPi * 12.0) * t.int_k_abs_us * (1.0 + M * t.int_abs_ks / t.ks_at_zero);
    return br > 0.0 ? lead * br * br : 0.0;
  };
  for (double M : {0.01, 1.0, 100.0}) {
    const double v = density_lam_constant(1, M, k);
    CHECK(v >= 0.0);
    CHECK(v == Approx(formula(M)).epsilon(1e-10));
  }
  CHECK(density_lam_constant(1, 1.0, k) == 0.0);
  CHECK_THROWS_AS(density_lam_constant(1, 0.0, k), ValidationError);
}
