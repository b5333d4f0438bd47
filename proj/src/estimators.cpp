#include "minimax/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "minimax/errors.hpp"
#include "minimax/numerics.hpp"

namespace minimax {

namespace {

void require_n(long long n) {
  if (n < 1) throw ValidationError("n must be >= 1");
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be finite and > 0");
}

void require_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw ValidationError("theta must be finite and >= 0");
}

}  // namespace

std::string estimator_name(const EstimatorSpec& spec) {
  if (std::holds_alternative<ConstantEstimator>(spec)) return "constant";
  if (std::holds_alternative<PluginMLE>(spec)) return "plugin";
  return "pretest";
}

double pretest_threshold(const PreTest& spec, long long n) {
  require_n(n);
  if (spec.threshold) {
    if (!(*spec.threshold > 0.0) || !std::isfinite(*spec.threshold)) {
      throw ValidationError("pre-test threshold must be finite and > 0");
    }
    return *spec.threshold;
  }
  return std::pow(static_cast<double>(n), -0.25);
}

double constant_local_minimax_risk(double delta, long long n) {
  require_delta(delta);
  require_n(n);
  return static_cast<double>(n) * delta * delta / 4.0;
}

double plugin_risk_at(double theta, long long n) {
  require_theta(theta);
  require_n(n);
  const double m = std::sqrt(static_cast<double>(n)) * theta;
  return gaussian_partial_second_moment(-m) + m * m * normal_cdf(-m);
}

double pretest_risk_at(double theta, long long n, double c_n) {
  require_theta(theta);
  require_n(n);
  if (!(c_n > 0.0) || !std::isfinite(c_n)) throw ValidationError("pre-test threshold must be finite and > 0");
  const double rn = std::sqrt(static_cast<double>(n));
  const double cut = rn * c_n - rn * theta;
  const double m = rn * theta;
  return gaussian_partial_second_moment(cut) + m * m * normal_cdf(cut);
}

RiskPoint local_minimax_point(const EstimatorSpec& spec, double delta, long long n) {
  require_delta(delta);
  require_n(n);
  if (const auto* c = std::get_if<ConstantEstimator>(&spec)) {
    if (!c->c) return {delta, n, constant_local_minimax_risk(delta, n)};
    const double v = *c->c;
    if (!std::isfinite(v)) throw ValidationError("constant estimator needs a finite value");
    // psi ranges over [0, delta) on the neighbourhood.
    const double worst = std::max(std::abs(v), std::abs(delta - v));
    return {std::abs(v) >= std::abs(delta - v) ? 0.0 : delta, n,
            static_cast<double>(n) * worst * worst};
  }
  if (std::holds_alternative<PluginMLE>(spec)) {
    // The pointwise risk is non-decreasing in theta.
    const double theta = delta * (1.0 - 1e-12);
    return {theta, n, plugin_risk_at(theta, n)};
  }
  const double c_n = pretest_threshold(std::get<PreTest>(spec), n);
  const double hi = delta * (1.0 - 1e-12);
  const auto m = maximize_1d([&](double t) { return pretest_risk_at(t, n, c_n); }, 0.0, hi);
  return {m.argmax, n, m.value};
}

double local_minimax_risk(const EstimatorSpec& spec, double delta, long long n) {
  return local_minimax_point(spec, delta, n).value;
}

}  // namespace minimax
