#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minimax/errors.hpp"
#include "minimax/mixtures.hpp"

using namespace minimax;
using doctest::Approx;

namespace {

QuadratureSpec tight() {
  QuadratureSpec q;
  q.abs_tol = 1e-18;
  q.rel_tol = 1e-11;
  return q;
}

// Independent trapezoid for chi^2(Ph || P0) on an (x, t) grid, n = 1.
double chi_grid_oracle(const Family& fam, const Prior& prior, double h, double t_lo, double t_hi, double x_lo,
                       double x_hi, int pts) {
  const double dt = (t_hi - t_lo) / (pts - 1);
  const double dx = (x_hi - x_lo) / (pts - 1);
  double total = 0.0;
  for (int i = 0; i < pts; ++i) {
    const double t = t_lo + dt * i;
    const double q0 = prior_density(prior, t);
    const double qh = prior_density(prior, t + h);
    double row = 0.0;
    for (int j = 0; j < pts; ++j) {
      const double x = x_lo + dx * j;
      const double a = qh * density(fam, t + h, x);
      const double b = q0 * density(fam, t, x);
      if (b <= 0.0) continue;
      row += (j == 0 || j == pts - 1 ? 0.5 : 1.0) * (a - b) * (a - b) / b;
    }
    total += (i == 0 || i == pts - 1 ? 0.5 : 1.0) * row;
  }
  return total * dt * dx;
}

}  // namespace

TEST_CASE("prior_shift_hellinger_sq") {
  CHECK(prior_shift_hellinger_sq(gaussian_prior(0.0, 1.0), 0.0) == 0.0);
  CHECK(std::abs(prior_shift_hellinger_sq(gaussian_prior(0.0, 1.0), 1.0) - (2.0 - 2.0 * std::exp(-0.125))) <= 1e-10);
  CHECK(prior_shift_hellinger_sq(cosine_prior(0.0, 1.0), 2.0) == Approx(2.0).epsilon(1e-12));
  CHECK(prior_shift_hellinger_sq(cosine_prior(0.0, 1.0), 3.0) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("prior_shift_chi_sq") {
  CHECK(prior_shift_chi_sq(cosine_prior(0.0, 1.0), 0.0).value() == 0.0);
  CHECK(prior_shift_chi_sq(cosine_prior(0.0, 1.0), 0.1).is_divergent());
  // Gaussian location: exp(h^2 / s^2) - 1.
  CHECK(std::abs(prior_shift_chi_sq(gaussian_prior(0.0, 1.0), 0.5).value() - std::expm1(0.25)) <= 1e-9);
}

TEST_CASE("mixture_hellinger_sq basics") {
  const MixtureSpec zero{gaussian_family(1.0), 1, gaussian_prior(0.0, 1.0), 0.0, {}};
  CHECK(mixture_hellinger_sq(zero) == 0.0);
  // Gaussian family and Gaussian prior, n = 1: in (x, t) the joint laws are bivariate normals with
  // covariance [[2, 1], [1, 1]] whose means differ by (0, h), so m' S^-1 m = 2 h^2.
  const double h = 0.1;
  const MixtureSpec spec{gaussian_family(1.0), 1, gaussian_prior(0.0, 1.0), h, tight()};
  CHECK(mixture_hellinger_sq(spec) == Approx(-2.0 * std::expm1(-h * h / 4.0)).epsilon(1e-9));
  CHECK_THROWS_AS(mixture_hellinger_sq(MixtureSpec{gaussian_family(1.0), 0, gaussian_prior(0.0, 1.0), h, {}}),
                  ValidationError);
  CHECK_THROWS_AS(mixture_hellinger_sq(MixtureSpec{uniform_family(), 1, cosine_prior(0.0, 1.0), h, {}}),
                  ValidationError);
}

TEST_CASE("mixture_hellinger_sq matches the grid oracle") {
  struct Case {
    Family fam;
    Prior prior;
    double h;
  };
  const Case cases[] = {
      {gaussian_family(1.0), gaussian_prior(0.0, 1.0), 0.1},
      {gaussian_family(1.0), cosine_prior(0.0, 1.0), 0.3},
      {gaussian_family(0.5), kepler_prior(0.75), -0.2},
  };
  for (const auto& c : cases) {
    const double exact = mixture_hellinger_sq(MixtureSpec{c.fam, 1, c.prior, c.h, {}});
    const auto oracle = mixture_hellinger_oracle(c.fam, c.prior, c.h, default_grid(c.fam, c.prior, c.h, 2001));
    CHECK(oracle.warnings.empty());
    CHECK(std::abs(exact - oracle.value) <= 1e-6);
  }
  const auto z = mixture_hellinger_oracle(gaussian_family(1.0), cosine_prior(0.0, 1.0), 0.0,
                                          default_grid(gaussian_family(1.0), cosine_prior(0.0, 1.0), 0.0, 101));
  CHECK(std::abs(z.value) <= 1e-12);
}

TEST_CASE("Uniform family decomposition against a coarse oracle") {
  // The x-integrand jumps at the support edges, so the trapezoid oracle is only O(dx) here.
  const auto fam = uniform_family();
  const auto prior = cosine_prior(2.0, 1.0);
  const double exact = mixture_hellinger_sq(MixtureSpec{fam, 1, prior, 0.2, {}});
  const auto oracle = mixture_hellinger_oracle(fam, prior, 0.2, default_grid(fam, prior, 0.2, 2001));
  CHECK(std::abs(exact - oracle.value) <= 1e-2 * exact);
}

TEST_CASE("oracle coverage warnings") {
  GridSpec g;
  g.t_lo = -0.5;
  g.t_hi = 0.5;
  g.x_lo = -1.0;
  g.x_hi = 1.0;
  g.t_points = 11;
  g.x_points = 11;
  const auto r = mixture_hellinger_oracle(gaussian_family(1.0), cosine_prior(0.0, 1.0), 0.1, g);
  CHECK(r.warnings.size() == 2);
  g.t_points = 10;
  CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("mixture_hellinger_sq is non-decreasing in n") {
  double prev = 0.0;
  for (long long n : {1LL, 2LL, 5LL, 20LL, 100LL, 1000LL}) {
    const double v = mixture_hellinger_sq(MixtureSpec{gaussian_family(1.0), n, cosine_prior(0.0, 1.0), 0.05, {}});
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("small-shift quadratic law") {
  for (const auto& prior : {gaussian_prior(0.0, 1.0), cosine_prior(0.0, 1.0), kepler_prior(0.75)}) {
    for (long long n : {1LL, 10LL}) {
      for (double sigma : {1.0, 2.0}) {
        const auto fam = gaussian_family(sigma);
        const double limit = (prior_fisher_info(prior).value() + n * fisher_info(fam, 0.0).value()) / 4.0;
        for (double h : {1e-2, 1e-3}) {
          const double v = mixture_hellinger_sq(MixtureSpec{fam, n, prior, h, tight()});
          CHECK(std::abs(v / (h * h) - limit) <= 10.0 * h);
        }
      }
    }
  }
}

TEST_CASE("mixture_chi_sq") {
  CHECK(mixture_chi_sq(MixtureSpec{gaussian_family(1.0), 1, gaussian_prior(0.0, 1.0), 0.0, {}}).value() == 0.0);
  CHECK(mixture_chi_sq(MixtureSpec{uniform_family(), 1, cosine_prior(3.0, 1.0), 0.1, {}}).is_divergent());
  CHECK(mixture_chi_sq(MixtureSpec{gaussian_family(1.0), 1, cosine_prior(0.0, 1.0), 0.1, {}}).is_divergent());
  const double h = 0.05;
  const auto v = mixture_chi_sq(MixtureSpec{gaussian_family(1.0), 1, gaussian_prior(0.0, 1.0), h, tight()});
  REQUIRE(v.is_finite());
  CHECK(v.value() >= 0.0);
  const double oracle = chi_grid_oracle(gaussian_family(1.0), gaussian_prior(0.0, 1.0), h, -9.0, 9.0, -16.0, 16.0, 2001);
  CHECK(std::abs(v.value() - oracle) <= 1e-5);
  // Bivariate normal closed form: exp(m' S^-1 m) - 1.
  CHECK(v.value() == Approx(std::expm1(2.0 * h * h)).epsilon(1e-8));
}

TEST_CASE("interpolated chi-squared grid") {
  const auto fam = gaussian_family(1.0);
  const auto prior = gaussian_prior(0.0, 1.0);
  const double h = 0.2;
  const auto grid = default_grid(fam, prior, h, 801);
  const auto at0 = mixture_chi_sq_interpolated_grid(fam, prior, h, 0.0, grid);
  CHECK(at0.value == Approx(std::expm1(2.0 * h * h)).epsilon(1e-4));
  CHECK(mixture_chi_sq_interpolated_grid(fam, prior, h, 1.0, grid).value == 0.0);
  double prev = at0.value;
  for (double lambda : {0.1, 0.3, 0.6, 0.9}) {
    const double v = mixture_chi_sq_interpolated_grid(fam, prior, h, lambda, grid).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(mixture_chi_sq_interpolated_grid(fam, prior, h, 1.5, grid), ValidationError);
}
