#include "minimax/models.hpp"

#include <cmath>

#include "minimax/errors.hpp"

namespace minimax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_n(long long n) {
  if (n < 1) throw ValidationError("sample size n must be >= 1");
}

}  // namespace

Family gaussian_family(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw ValidationError("GaussianLocation: sigma must be positive and finite");
  }
  return GaussianLocation{sigma};
}

Family uniform_family() { return UniformScale{}; }

std::string family_name(const Family& family) {
  return std::visit(overloaded{[](const GaussianLocation&) { return std::string("gaussian"); },
                               [](const UniformScale&) { return std::string("uniform"); }},
                    family);
}

DivergenceValue DivergenceValue::finite(double value) {
  if (!(value >= 0) || !std::isfinite(value)) {
    throw NumericalError("DivergenceValue: finite value must be >= 0");
  }
  return DivergenceValue(value);
}

double DivergenceValue::value() const {
  if (!value_) throw NumericalError("divergence is infinite");
  return *value_;
}

void validate_theta(const Family& family, double theta) {
  std::visit(overloaded{[&](const GaussianLocation& g) {
                          if (!(g.sigma > 0)) throw ValidationError("GaussianLocation: sigma must be > 0");
                          if (!std::isfinite(theta)) throw ValidationError("GaussianLocation: theta must be finite");
                        },
                        [&](const UniformScale&) {
                          if (!(theta > 0) || !std::isfinite(theta)) {
                            throw ValidationError("UniformScale: theta must be > 0");
                          }
                        }},
             family);
}

double density(const Family& family, double theta, double x) {
  validate_theta(family, theta);
  return std::visit(overloaded{[&](const GaussianLocation& g) {
                                 const double z = (x - theta) / g.sigma;
                                 return 0.39894228040143267794 * std::exp(-0.5 * z * z) / g.sigma;
                               },
                               [&](const UniformScale&) {
                                 return (x >= 0.0 && x <= theta) ? 1.0 / theta : 0.0;
                               }},
                    family);
}

DivergenceValue fisher_info(const Family& family, double theta) {
  validate_theta(family, theta);
  return std::visit(
      overloaded{[](const GaussianLocation& g) { return DivergenceValue::finite(1.0 / (g.sigma * g.sigma)); },
                 [](const UniformScale&) { return DivergenceValue::divergent(); }},
      family);
}

double hellinger_sq(const Family& family, double theta1, double theta2) {
  validate_theta(family, theta1);
  validate_theta(family, theta2);
  return std::visit(overloaded{[&](const GaussianLocation& g) {
                                 const double d = theta1 - theta2;
                                 return -2.0 * std::expm1(-d * d / (8.0 * g.sigma * g.sigma));
                               },
                               [&](const UniformScale&) {
                                 const double lo = std::min(theta1, theta2);
                                 const double gap = std::abs(theta1 - theta2);
                                 // 2(1 - (1 + gap/lo)^{-1/2})
                                 return -2.0 * std::expm1(-0.5 * std::log1p(gap / lo));
                               }},
                    family);
}

DivergenceValue chi_sq(const Family& family, double theta_num, double theta_den) {
  validate_theta(family, theta_num);
  validate_theta(family, theta_den);
  return std::visit(overloaded{[&](const GaussianLocation& g) {
                                 const double d = theta_num - theta_den;
                                 return DivergenceValue::finite(std::expm1(d * d / (g.sigma * g.sigma)));
                               },
                               [&](const UniformScale&) {
                                 if (theta_num > theta_den) return DivergenceValue::divergent();
                                 return DivergenceValue::finite((theta_den - theta_num) / theta_num);
                               }},
                    family);
}

double tensorize_hellinger_sq(double h2, long long n) {
  require_n(n);
  if (n == 1) return h2;
  return -2.0 * std::expm1(static_cast<double>(n) * std::log1p(-0.5 * h2));
}

double hellinger_sq_iid(const Family& family, double theta1, double theta2, long long n) {
  require_n(n);
  return tensorize_hellinger_sq(hellinger_sq(family, theta1, theta2), n);
}

DivergenceValue chi_sq_iid(const Family& family, double theta_num, double theta_den,
                           long long n) {
  require_n(n);
  const auto single = chi_sq(family, theta_num, theta_den);
  if (single.is_divergent() || n == 1) return single;
  const double v = std::expm1(static_cast<double>(n) * std::log1p(single.value()));
  if (!std::isfinite(v)) return DivergenceValue::divergent();
  return DivergenceValue::finite(v);
}

double hellinger_local_ratio(const Family& family, double theta, double h) {
  if (h == 0.0 || !std::isfinite(h)) {
    throw ValidationError("hellinger_local_ratio: h must be finite and nonzero");
  }
  return hellinger_sq(family, theta, theta + h) / (h * h);
}

}  // namespace minimax
