#include "minimax/selftest.hpp"

#include <cmath>
#include <numbers>

#include "minimax/bounds.hpp"
#include "minimax/errors.hpp"
#include "minimax/estimators.hpp"
#include "minimax/mixtures.hpp"
#include "minimax/report.hpp"

namespace minimax {

namespace {

CheckResult within(const std::string& name, double error, double tol) {
  CheckResult r;
  r.name = name;
  r.passed = std::isfinite(error) && error <= tol;
  r.detail = "error=" + format_double(error) + " tol=" + format_double(tol);
  return r;
}

}  // namespace

std::vector<CheckResult> run_selftest(double tol_scale) {
  if (!(tol_scale >= 0.0) || !std::isfinite(tol_scale)) throw ValidationError("tol_scale must be finite and >= 0");
  const double pi = std::numbers::pi;
  std::vector<CheckResult> out;

  {
    double err = 0.0;
    for (double x : linear_grid(-8.0, 8.0, 161)) err = std::max(err, std::abs(normal_cdf(x) + normal_cdf(-x) - 1.0));
    out.push_back(within("normal_cdf_symmetry", err, 1e-15 * tol_scale));
  }
  {
    double err = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const auto s = solve_kepler(i / 100.0);
      err = std::max(err, std::abs(s.y_a + std::sin(pi * s.y_a) / pi - (2.0 * s.a - 1.0)));
    }
    out.push_back(within("kepler_residual", err, 1e-12 * tol_scale));
    out.push_back(within("kepler_min_fisher_half", std::abs(min_fisher_constrained(0.5) - pi * pi), 1e-9 * tol_scale));
  }
  {
    double err = 0.0;
    const auto fam = gaussian_family(1.0);
    for (long long n : {1LL, 5LL, 40LL}) {
      for (double d : {0.05, 0.3, 1.2}) {
        const double h2 = -2.0 * std::expm1(-static_cast<double>(n) * d * d / 8.0);
        const double c2 = std::expm1(static_cast<double>(n) * d * d);
        err = std::max(err, std::abs(hellinger_sq_iid(fam, 0.0, d, n) - h2));
        err = std::max(err, std::abs(chi_sq_iid(fam, d, 0.0, n).value() - c2) / c2);
      }
    }
    out.push_back(within("tensorization", err, 1e-12 * tol_scale));
  }
  {
    double err = 0.0;
    struct Case {
      Prior prior;
      double h;
    };
    const Case cases[] = {{gaussian_prior(0.0, 1.0), 0.1}, {cosine_prior(0.0, 1.0), 0.3}, {kepler_prior(0.75), -0.2}};
    for (const auto& c : cases) {
      const auto fam = gaussian_family(1.0);
      const double exact = mixture_hellinger_sq(MixtureSpec{fam, 1, c.prior, c.h, {}});
      const double grid = mixture_hellinger_oracle(fam, c.prior, c.h, default_grid(fam, c.prior, c.h, 1001)).value;
      err = std::max(err, std::abs(exact - grid));
    }
    out.push_back(within("decomposition_oracle", err, 1e-6 * tol_scale));
  }
  {
    double err = std::abs(lam_constant_regular().value - 0.28953);
    err = std::max(err, std::abs(lam_constant_uniform_twopoint().value - 0.0558));
    err = std::max(err, std::abs(lam_constant_uniform_diffeo().value - 0.0635 * 0.0635));
    out.push_back(within("scalar_constants", err, 5e-4 * tol_scale));
  }
  {
    double worst = -1e300;
    for (long long n : {10LL, 100LL}) {
      for (double delta : log_grid(1e-2, 1e2, 9)) {
        const double risk = std::min({constant_local_minimax_risk(delta, n), local_minimax_risk(PluginMLE{}, delta, n),
                                      local_minimax_risk(PreTest{}, delta, n)});
        const double bound = std::max({vt_kepler_bound(delta, n, 1.0).value, diffeo_bound_sup(delta, n).value,
                                       two_point_local_bound(gaussian_family(1.0), n, MaxZero{}, 0.0, delta).value});
        worst = std::max(worst, bound - risk);
      }
    }
    out.push_back(within("dominance", std::max(worst, 0.0), 1e-9 * tol_scale));
  }
  {
    double err = std::abs(plugin_risk_at(0.0, 7) - 0.5);
    err = std::max(err, std::abs(pretest_risk_at(0.0, 16, 0.5) - gaussian_partial_second_moment(2.0)));
    out.push_back(within("estimator_risks", err, 1e-12 * tol_scale));
  }
  return out;
}

}  // namespace minimax
