#pragma once

#include <optional>
#include <string>
#include <variant>

namespace minimax {

// Risks are for psi(theta) = max(theta, 0) under N(theta, 1), n-scaled:
// n E|S_n - max(theta, 0)|^2.

/// Always reports c; without c, the minimax constant delta / 2.
struct ConstantEstimator {
  std::optional<double> c;
};
struct PluginMLE {};
/// Reports the sample mean's positive part only when it clears `threshold`.
/// Without a threshold, n^{-1/4} is used.
struct PreTest {
  std::optional<double> threshold;
};

using EstimatorSpec = std::variant<ConstantEstimator, PluginMLE, PreTest>;

std::string estimator_name(const EstimatorSpec& spec);

/// The threshold a PreTest spec uses at sample size n.
double pretest_threshold(const PreTest& spec, long long n);

struct RiskPoint {
  double theta = 0.0;
  long long n = 1;
  double value = 0.0;
};

/// n delta^2 / 4, attained by the constant delta / 2.
double constant_local_minimax_risk(double delta, long long n);

/// E[Z^2 1{Z >= -m}] + m^2 Phi(-m), m = sqrt(n) theta.
double plugin_risk_at(double theta, long long n);

/// E[Z^2 1{Z >= k}] + n theta^2 Phi(k), k = sqrt(n) (c_n - theta).
double pretest_risk_at(double theta, long long n, double c_n);

/// sup over theta in [0, delta) of the pointwise risk.
double local_minimax_risk(const EstimatorSpec& spec, double delta, long long n);

/// Same sup, with the maximizing theta. The constant estimator reports theta = delta.
RiskPoint local_minimax_point(const EstimatorSpec& spec, double delta, long long n);

}  // namespace minimax
