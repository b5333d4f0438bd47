#include "minimax/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "minimax/errors.hpp"

namespace minimax {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2*pi)

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw ValidationError(std::string(what) + ": non-finite input");
  }
}

double finite_or_lowest(double v) {
  return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

struct SimpsonState {
  const RealFn& f;
  int max_depth;
  bool exhausted = false;
};

double simpson(double a, double fa, double, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(SimpsonState& st, double a, double fa, double b, double fb,
                     double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = simpson(a, fa, lm, flm, m, fm);
  const double right = simpson(m, fm, rm, frm, b, fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || !(m > a && b > m)) {
    return left + right + delta / 15.0;
  }
  if (depth >= st.max_depth) {
    st.exhausted = true;
    return left + right + delta / 15.0;
  }
  return adaptive_step(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
         adaptive_step(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double normal_pdf(double x) {
  require_finite(x, "normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double gaussian_partial_second_moment(double c) {
  if (std::isnan(c)) {
    throw ValidationError("gaussian_partial_second_moment: NaN input");
  }
  if (std::isinf(c)) {
    return c < 0 ? 1.0 : 0.0;
  }
  // 1 - Phi(c) = Phi(-c), evaluated without cancellation.
  return c * normal_pdf(c) + normal_cdf(-c);
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0) || max_depth < 10 || hermite_order < 10) {
    throw ValidationError(
        "QuadratureSpec: need abs_tol > 0, rel_tol > 0, max_depth >= 10, "
        "hermite_order >= 10");
  }
}

double integrate_adaptive(const RealFn& f, double a, double b,
                          const QuadratureSpec& spec) {
  spec.validate();
  if (!(a <= b)) {
    throw ValidationError("integrate_adaptive: need a <= b");
  }
  if (a == b) {
    return 0.0;
  }

  // Sixteen initial panels keep narrow features from hiding between the
  // first few sample points.
  constexpr int kPanels = 16;
  const double width = (b - a) / kPanels;
  std::array<double, 2 * kPanels + 1> xs{};
  std::array<double, 2 * kPanels + 1> fs{};
  for (int i = 0; i <= 2 * kPanels; ++i) {
    xs[i] = (i == 2 * kPanels) ? b : a + 0.5 * width * i;
    fs[i] = f(xs[i]);
  }
  std::array<double, kPanels> coarse{};
  double coarse_total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    coarse[p] = simpson(xs[2 * p], fs[2 * p], xs[2 * p + 1], fs[2 * p + 1],
                        xs[2 * p + 2], fs[2 * p + 2]);
    coarse_total += coarse[p];
  }
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(coarse_total));

  SimpsonState st{f, spec.max_depth};
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    total += adaptive_step(st, xs[2 * p], fs[2 * p], xs[2 * p + 2], fs[2 * p + 2],
                           xs[2 * p + 1], fs[2 * p + 1], coarse[p], tol / kPanels, 0);
  }
  if (!std::isfinite(total)) {
    throw NumericalError("integrate_adaptive: integrand produced a non-finite value");
  }
  if (st.exhausted) {
    throw ToleranceNotMet("integrate_adaptive: max_depth exhausted", total);
  }
  return total;
}

double integrate_piecewise(const RealFn& f, double a, double b,
                           std::vector<double> breakpoints,
                           const QuadratureSpec& spec) {
  if (!(a <= b)) {
    throw ValidationError("integrate_piecewise: need a <= b");
  }
  std::erase_if(breakpoints, [&](double x) { return !(x > a && x < b); });
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  QuadratureSpec piece = spec;
  piece.abs_tol = spec.abs_tol / static_cast<double>(breakpoints.size());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    // Shrink each piece by one ulp so a jump at a breakpoint is sampled
    // through its one-sided limit.
    double lo = breakpoints[i];
    double hi = breakpoints[i + 1];
    const double lo_in = std::nextafter(lo, hi);
    const double hi_in = std::nextafter(hi, lo);
    if (lo_in < hi_in) {
      lo = lo_in;
      hi = hi_in;
    }
    total += integrate_adaptive(f, lo, hi, piece);
  }
  return total;
}

GaussHermiteRule::GaussHermiteRule(int order) {
  if (order < 2) {
    throw ValidationError("gauss_hermite: order must be >= 2");
  }
  // Newton iteration on orthonormal Hermite polynomials (weight e^{-x^2}),
  // with the classical asymptotic starting guesses.
  const int n = order;
  const int m = (n + 1) / 2;
  constexpr double kPiM4 = 0.7511255444649425;  // pi^{-1/4}
  std::vector<double> x(n), w(n);
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = kPiM4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) {
        break;
      }
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  nodes.resize(n);
  weights.resize(n);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  // Ascending node order gives a fixed summation order.
  for (int i = 0; i < n; ++i) {
    nodes[i] = std::numbers::sqrt2 * x[n - 1 - i];
    weights[i] = w[n - 1 - i] * inv_sqrt_pi;
  }
}

double GaussHermiteRule::expectation(const RealFn& g) const {
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total += weights[i] * g(nodes[i]);
  }
  return total;
}

double gauss_hermite_expectation(const RealFn& g, int order) {
  return GaussHermiteRule(order).expectation(g);
}

double find_root_bisect(const RealFn& f, double lo, double hi, double tol) {
  if (!(lo <= hi) || !(tol > 0)) {
    throw ValidationError("find_root_bisect: need lo <= hi and tol > 0");
  }
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) {
    throw BracketError("find_root_bisect: no sign change on the bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void SearchBox::validate() const {
  for (const auto& ax : axes) {
    if (!(ax.lo < ax.hi)) throw ValidationError("SearchBox: need lo < hi on every axis");
    if (ax.log_spaced && !(ax.lo > 0)) throw ValidationError("SearchBox: log axis needs lo > 0");
  }
  if (coarse_grid < 3) throw ValidationError("SearchBox: coarse_grid must be >= 3");
  if (refine_iters < 0) throw ValidationError("SearchBox: refine_iters must be >= 0");
}

Maximum1d maximize_1d(const RealFn& f, double lo, double hi, int coarse_grid,
                      int refine_iters) {
  if (!(lo < hi) || coarse_grid < 3) {
    throw ValidationError("maximize_1d: need lo < hi and coarse_grid >= 3");
  }
  const auto grid = linear_grid(lo, hi, static_cast<std::size_t>(coarse_grid));
  Maximum1d best{grid[0], finite_or_lowest(f(grid[0]))};
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = finite_or_lowest(f(grid[i]));
    if (v > best.value) {
      best = {grid[i], v};
      best_i = i;
    }
  }

  // Golden section inside the neighbouring cells.
  double a = grid[best_i == 0 ? 0 : best_i - 1];
  double b = grid[std::min(best_i + 1, grid.size() - 1)];
  constexpr double kInvPhi = 0.61803398874989484820;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = finite_or_lowest(f(c));
  double fd = finite_or_lowest(f(d));
  for (int it = 0; it < refine_iters; ++it) {
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)) + 1e-300) {
      break;
    }
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = finite_or_lowest(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = finite_or_lowest(f(d));
    }
  }
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

Maximum2d maximize_2d(const RealFn2& f, const SearchBox& box) {
  box.validate();
  const auto to_internal = [&](int d, double x) {
    return box.axes[d].log_spaced ? std::log(x) : x;
  };
  const auto to_external = [&](int d, double u) {
    const auto& ax = box.axes[d];
    const double x = ax.log_spaced ? std::exp(u) : u;
    return std::clamp(x, ax.lo, ax.hi);
  };
  std::array<double, 2> ulo{}, uhi{};
  std::array<std::vector<double>, 2> grids;
  for (int d = 0; d < 2; ++d) {
    ulo[d] = to_internal(d, box.axes[d].lo);
    uhi[d] = to_internal(d, box.axes[d].hi);
    grids[d] = linear_grid(ulo[d], uhi[d], static_cast<std::size_t>(box.coarse_grid));
  }
  const auto eval = [&](const std::array<double, 2>& u) {
    return finite_or_lowest(f(to_external(0, u[0]), to_external(1, u[1])));
  };

  std::array<double, 2> best_u{grids[0][0], grids[1][0]};
  double best_v = eval(best_u);
  for (double u0 : grids[0]) {
    for (double u1 : grids[1]) {
      const std::array<double, 2> u{u0, u1};
      const double v = eval(u);
      if (v > best_v) {
        best_v = v;
        best_u = u;
      }
    }
  }

  std::array<double, 2> step{};
  for (int d = 0; d < 2; ++d) {
    step[d] = (uhi[d] - ulo[d]) / (box.coarse_grid - 1);
  }
  for (int it = 0; it < box.refine_iters; ++it) {
    bool moved = false;
    for (int d = 0; d < 2; ++d) {
      for (double sign : {1.0, -1.0}) {
        auto cand = best_u;
        cand[d] = std::clamp(cand[d] + sign * step[d], ulo[d], uhi[d]);
        if (cand[d] == best_u[d]) continue;
        const double v = eval(cand);
        if (v > best_v) {
          best_v = v;
          best_u = cand;
          moved = true;
        }
      }
    }
    if (!moved) {
      step[0] *= 0.5;
      step[1] *= 0.5;
      if (step[0] < 1e-15 * (uhi[0] - ulo[0]) && step[1] < 1e-15 * (uhi[1] - ulo[1])) {
        break;
      }
    }
  }
  return {{to_external(0, best_u[0]), to_external(1, best_u[1])}, best_v};
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0 && hi > 0)) {
    throw ValidationError("log_grid: endpoints must be positive");
  }
  auto out = linear_grid(std::log(lo), std::log(hi), n);
  for (auto& v : out) v = std::exp(v);
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

}  // namespace minimax
