#pragma once

#include <optional>
#include <string>
#include <variant>

namespace minimax {

/// N(theta, sigma^2) with known sigma; theta is the location.
struct GaussianLocation {
  double sigma = 1.0;
};

/// Unif(0, theta), theta > 0.
struct UniformScale {};

using Family = std::variant<GaussianLocation, UniformScale>;

/// Builds a GaussianLocation family, rejecting sigma <= 0.
Family gaussian_family(double sigma);
Family uniform_family();

std::string family_name(const Family& family);

/// Divergences and Fisher information may be infinite. Keeping that case as
/// its own state lets callers branch on it instead of propagating inf.
class DivergenceValue {
 public:
  static DivergenceValue finite(double value);
  static DivergenceValue divergent() { return DivergenceValue(); }

  bool is_finite() const noexcept { return value_.has_value(); }
  bool is_divergent() const noexcept { return !value_.has_value(); }

  /// Throws NumericalError when divergent.
  double value() const;
  double value_or(double fallback) const noexcept { return value_.value_or(fallback); }

  friend bool operator==(const DivergenceValue&, const DivergenceValue&) = default;

 private:
  DivergenceValue() = default;
  explicit DivergenceValue(double v) : value_(v) {}
  std::optional<double> value_;
};

/// Throws ValidationError if theta is not a valid parameter of the family.
void validate_theta(const Family& family, double theta);

double density(const Family& family, double theta, double x);

/// Per-observation Fisher information. Gaussian: 1/sigma^2. Uniform: divergent
/// (the model is not Hellinger differentiable).
DivergenceValue fisher_info(const Family& family, double theta);

/// Squared Hellinger distance, normalized to lie in [0, 2]. Symmetric.
double hellinger_sq(const Family& family, double theta1, double theta2);

/// chi^2(P_num || P_den); divergent when P_num is not dominated by P_den.
DivergenceValue chi_sq(const Family& family, double theta_num, double theta_den);

/// Squared Hellinger distance between n-fold products: 2 - 2(1 - H^2/2)^n.
double hellinger_sq_iid(const Family& family, double theta1, double theta2, long long n);

/// chi^2 between n-fold products: (1 + chi^2)^n - 1.
DivergenceValue chi_sq_iid(const Family& family, double theta_num, double theta_den,
                           long long n);

/// H^2(theta, theta + h) / h^2.
double hellinger_local_ratio(const Family& family, double theta, double h);

/// Tensorization of a single-observation squared Hellinger distance.
double tensorize_hellinger_sq(double h2, long long n);

}  // namespace minimax
