// Command-line front end: kepler | bound | risk | sweep | constants | selftest.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minimax/bounds.hpp"
#include "minimax/errors.hpp"
#include "minimax/estimators.hpp"
#include "minimax/mixtures.hpp"
#include "minimax/report.hpp"
#include "minimax/selftest.hpp"

using namespace minimax;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
  return v;
}

long long parse_count(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not an integer: '" + s + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_real(item));
  return out;
}

// lo:hi:count, log-spaced.
std::vector<double> parse_log_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ValidationError("grid must look like lo:hi:count");
  const double lo = parse_real(parts[0]);
  const double hi = parse_real(parts[1]);
  const long long count = parse_count(parts[2]);
  if (!(lo > 0.0 && lo < hi) || count < 2) throw ValidationError("grid needs 0 < lo < hi and count >= 2");
  return log_grid(lo, hi, static_cast<std::size_t>(count));
}

Family make_family(const std::string& name, double sigma) {
  if (name == "gaussian") return gaussian_family(sigma);
  if (name == "uniform") return uniform_family();
  throw ValidationError("unknown family: " + name);
}

// kind:p1,p2[,...]
Prior make_prior(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<double>{} : parse_reals(spec.substr(colon + 1));
  const auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) throw ValidationError("wrong number of parameters for prior " + kind);
  };
  if (kind == "gaussian") {
    need(2, 2);
    return gaussian_prior(args[0], args[1]);
  }
  if (kind == "cosine") {
    need(2, 2);
    return cosine_prior(args[0], args[1]);
  }
  if (kind == "uniform") {
    need(2, 2);
    return uniform_prior(args[0], args[1]);
  }
  if (kind == "kepler") {
    need(1, 3);
    return kepler_prior(args[0], args.size() > 1 ? args[1] : 0.0, args.size() > 2 ? args[2] : 1.0);
  }
  throw ValidationError("unknown prior: " + kind);
}

Functional make_functional(const std::string& name, double alpha) {
  if (name == "identity") return Identity{};
  if (name == "maxzero") return MaxZero{};
  if (name == "powermax") return power_max(alpha);
  throw ValidationError("unknown functional: " + name);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string result_csv(const BoundResult& r) {
  std::string header = "method,value";
  std::string row = r.method + "," + format_double(r.value);
  for (const auto& [k, v] : r.argmax) {
    header += "," + k;
    row += "," + format_double(v);
  }
  return header + "\n" + row + "\n";
}

struct Options {
  std::string family = "gaussian";
  double sigma = 1.0;
  std::string prior = "gaussian:0,1";
  std::string functional = "maxzero";
  double alpha = 1.0;
  long long n = 1;
  std::string n_list = "100";
  std::optional<double> delta;
  std::string delta_list = "1";
  double lambda = 0.0;
  std::optional<double> h;
  std::optional<double> a;
  std::optional<double> xi1;
  std::optional<double> xi2;
  std::optional<double> theta1;
  std::optional<double> theta2;
  std::optional<double> center;
  std::optional<double> sup_fisher;
  std::optional<double> threshold;
  std::string method = "vt";
  std::string estimator = "plugin";
  std::string mode = "fixed-n-vary-delta";
  std::string methods = "vt,diffeo,twopoint";
  std::string estimators = "constant,plugin,pretest";
  std::string grid;
  std::string out;
  std::string svg;
  int threads = 0;
  double tol_scale = 1.0;
};

int cmd_kepler(const Options& o) {
  std::vector<double> as;
  if (!o.grid.empty()) {
    const long long count = parse_count(o.grid);
    if (count < 2) throw ValidationError("kepler --grid needs at least 2 points");
    as = linear_grid(0.0, 1.0, static_cast<std::size_t>(count));
  } else {
    as = {o.a.value_or(0.75)};
  }
  const auto rows = kepler_table(as);
  emit(kepler_csv(rows), o.out);
  if (!o.svg.empty()) {
    std::vector<double> dens{0.5, 0.75, 0.9};
    if (o.a) dens = {*o.a};
    write_text_file(o.svg, kepler_svg(rows, dens));
  }
  return 0;
}

double require_delta(const Options& o) {
  if (!o.delta) throw ValidationError("--delta is required");
  return *o.delta;
}

int cmd_bound(const Options& o) {
  const auto family = make_family(o.family, o.sigma);
  const auto f = make_functional(o.functional, o.alpha);
  BoundResult r;
  std::string note;
  if (o.method == "vt") {
    const double delta = require_delta(o);
    const double sup_fisher = o.sup_fisher.value_or(fisher_info(family, 1.0).value_or(0.0));
    if (o.a) {
      if (o.n < 1 || !(delta > 0.0)) throw ValidationError("vt needs n >= 1 and delta > 0");
      const double w = solve_kepler(*o.a).w_a;
      const double nn = static_cast<double>(o.n);
      constexpr double pi = std::numbers::pi;
      r = {nn * *o.a * *o.a / (4.0 * pi * pi / (w * w * delta * delta) + nn * sup_fisher), {{"a", *o.a}}, "vt"};
    } else {
      r = vt_kepler_bound(delta, o.n, sup_fisher);
    }
  } else if (o.method == "diffeo") {
    const double delta = require_delta(o);
    if (o.xi1 || o.xi2) {
      if (!o.xi1 || !o.xi2) throw ValidationError("--xi1 and --xi2 go together");
      r = {diffeo_bound(delta, o.n, *o.xi1, *o.xi2), {{"xi1", *o.xi1}, {"xi2", *o.xi2}}, "diffeo"};
    } else {
      r = diffeo_bound_sup(delta, o.n);
    }
  } else if (o.method == "twopoint") {
    if (o.theta1 || o.theta2) {
      if (!o.theta1 || !o.theta2) throw ValidationError("--theta1 and --theta2 go together");
      r = {two_point_hellinger_bound(family, o.n, f, *o.theta1, *o.theta2),
           {{"theta1", *o.theta1}, {"theta2", *o.theta2}},
           "twopoint"};
    } else {
      const double center = o.center.value_or(std::holds_alternative<UniformScale>(family) ? 1.0 : 0.0);
      r = two_point_local_bound(family, o.n, f, center, require_delta(o));
    }
  } else if (o.method == "hellinger") {
    const auto prior = make_prior(o.prior);
    validate_family_prior(family, prior);
    if (o.h) {
      r = {hellinger_mixture_bound(family, o.n, prior, f, *o.h), {{"h", *o.h}}, "hellinger_mixture"};
    } else {
      const auto range = default_shift_range(prior);
      r = hellinger_mixture_bound_sup(family, o.n, prior, f, range.lo, range.hi);
    }
  } else if (o.method == "chi2") {
    const auto prior = make_prior(o.prior);
    validate_family_prior(family, prior);
    if (!o.h) throw ValidationError("--h is required for the chi2 method");
    if (o.lambda == 0.0 && *o.h != 0.0 && mixture_chi_sq(MixtureSpec{family, o.n, prior, *o.h, {}}).is_divergent()) {
      note = "divergent denominator";
    }
    r = {chi2_mixture_bound(family, o.n, prior, f, *o.h, o.lambda), {{"h", *o.h}, {"lambda", o.lambda}}, "chi2_mixture"};
  } else if (o.method == "vantrees") {
    r = {van_trees_value(family, o.n, make_prior(o.prior), f), {}, "van_trees"};
  } else {
    throw ValidationError("unknown bound method: " + o.method);
  }
  if (!o.out.empty()) std::cout << bound_result_text(r);
  if (!note.empty()) std::cerr << "note=" << note << "\n";
  emit(result_csv(r), o.out);
  return 0;
}

int cmd_risk(const Options& o) {
  const double delta = require_delta(o);
  EstimatorSpec spec;
  if (o.estimator == "constant") {
    spec = ConstantEstimator{};
  } else if (o.estimator == "plugin") {
    spec = PluginMLE{};
  } else if (o.estimator == "pretest") {
    spec = PreTest{o.threshold};
  } else {
    throw ValidationError("unknown estimator: " + o.estimator);
  }
  const auto p = local_minimax_point(spec, delta, o.n);
  if (!o.out.empty()) std::cout << "value=" << format_double(p.value) << "\n";
  emit("estimator,delta,n,theta,value\n" + estimator_name(spec) + "," + format_double(delta) + "," +
           std::to_string(o.n) + "," + format_double(p.theta) + "," + format_double(p.value) + "\n",
       o.out);
  return 0;
}

int cmd_sweep(const Options& o) {
  SweepConfig c;
  c.mode = parse_sweep_mode(o.mode);
  c.sigma = o.sigma;
  c.threshold = o.threshold;
  c.threads = o.threads;
  const auto methods = split(o.methods, ',');
  const auto estimators = split(o.estimators, ',');
  const auto has = [](const std::vector<std::string>& v, const char* k) {
    return std::find(v.begin(), v.end(), k) != v.end();
  };
  for (const auto& m : methods) {
    if (m != "vt" && m != "diffeo" && m != "twopoint") throw ValidationError("unknown method: " + m);
  }
  for (const auto& e : estimators) {
    if (e != "constant" && e != "plugin" && e != "pretest") throw ValidationError("unknown estimator: " + e);
  }
  c.vt = has(methods, "vt");
  c.diffeo = has(methods, "diffeo");
  c.twopoint = has(methods, "twopoint");
  c.constant = has(estimators, "constant");
  c.plugin = has(estimators, "plugin");
  c.pretest = has(estimators, "pretest");

  if (c.mode == SweepMode::FixedNVaryDelta) {
    c.n_grid.clear();
    for (const auto& s : split(o.n_list, ',')) c.n_grid.push_back(parse_count(s));
    c.delta_grid = o.grid.empty() ? log_grid(1e-2, 1e2, 50) : parse_log_grid(o.grid);
  } else {
    c.delta_grid = parse_reals(o.delta_list);
    c.n_grid.clear();
    for (double v : o.grid.empty() ? log_grid(1.0, 1e4, 50) : parse_log_grid(o.grid)) {
      const auto n = static_cast<long long>(std::llround(v));
      if (c.n_grid.empty() || n > c.n_grid.back()) c.n_grid.push_back(n);
    }
  }
  const auto rows = run_sweep(c);
  emit(sweep_csv(rows), o.out);
  if (!o.svg.empty()) write_text_file(o.svg, sweep_svg(rows, c));
  return 0;
}

int cmd_constants(const Options& o) {
  emit(constants_csv(constants_table()), o.out);
  return 0;
}

int cmd_selftest(const Options& o) {
  const auto results = run_selftest(o.tol_scale);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " " << r.detail << "\n";
    ok = ok && r.passed;
  }
  std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax lower bounds, least-favorable priors and local minimax risks"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto* kepler = app.add_subcommand("kepler", "Solve the Kepler equation for the constrained cosine prior");
  kepler->add_option("--a", o.a, "Mass on [0, 1]");
  kepler->add_option("--grid", o.grid, "Number of equally spaced a values in [0, 1]");
  kepler->add_option("--out", o.out, "CSV output path (stdout when absent)");
  kepler->add_option("--svg", o.svg, "SVG output path");

  auto* bound = app.add_subcommand("bound", "Evaluate one lower bound");
  bound->add_option("--method", o.method, "vt | diffeo | twopoint | hellinger | chi2 | vantrees");
  bound->add_option("--family", o.family, "gaussian | uniform");
  bound->add_option("--sigma", o.sigma, "Gaussian family standard deviation");
  bound->add_option("--prior", o.prior, "gaussian:mu,sigma | cosine:center,halfwidth | kepler:a[,center,scale] | uniform:lo,hi");
  bound->add_option("--functional", o.functional, "identity | maxzero | powermax");
  bound->add_option("--alpha", o.alpha, "PowerMax exponent in (0, 1]");
  bound->add_option("--n", o.n, "Sample size");
  bound->add_option("--delta", o.delta, "Neighbourhood radius");
  bound->add_option("--lambda", o.lambda, "Interpolation weight for the chi2 method");
  bound->add_option("--h", o.h, "Prior shift (hellinger searches over h when absent)");
  bound->add_option("--a", o.a, "Fix a for the vt method");
  bound->add_option("--xi1", o.xi1, "Fix xi1 for the diffeo method");
  bound->add_option("--xi2", o.xi2, "Fix xi2 for the diffeo method");
  bound->add_option("--theta1", o.theta1, "First point for the twopoint method");
  bound->add_option("--theta2", o.theta2, "Second point for the twopoint method");
  bound->add_option("--center", o.center, "Neighbourhood center for the twopoint search");
  bound->add_option("--sup-fisher", o.sup_fisher, "Supremum of the Fisher information on the neighbourhood");
  bound->add_option("--out", o.out, "CSV output path (stdout when absent)");

  auto* risk = app.add_subcommand("risk", "Local minimax risk of a reference estimator, N(theta, 1)");
  risk->add_option("--estimator", o.estimator, "constant | plugin | pretest");
  risk->add_option("--delta", o.delta, "Neighbourhood radius");
  risk->add_option("--n", o.n, "Sample size");
  risk->add_option("--threshold", o.threshold, "Pre-test threshold (n^-1/4 when absent)");
  risk->add_option("--out", o.out, "CSV output path (stdout when absent)");

  auto* sweep = app.add_subcommand("sweep", "Bounds and risks over a grid");
  sweep->add_option("--mode", o.mode, "fixed-n-vary-delta | fixed-delta-vary-n");
  sweep->add_option("--n", o.n_list, "Comma-separated fixed n values");
  sweep->add_option("--delta", o.delta_list, "Comma-separated fixed delta values");
  sweep->add_option("--grid", o.grid, "Varying axis as lo:hi:count, log-spaced");
  sweep->add_option("--sigma", o.sigma, "Gaussian standard deviation");
  sweep->add_option("--methods", o.methods, "Subset of vt,diffeo,twopoint");
  sweep->add_option("--estimators", o.estimators, "Subset of constant,plugin,pretest");
  sweep->add_option("--threshold", o.threshold, "Pre-test threshold (n^-1/4 when absent)");
  sweep->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  sweep->add_option("--out", o.out, "CSV output path (stdout when absent)");
  sweep->add_option("--svg", o.svg, "SVG output path");

  auto* constants = app.add_subcommand("constants", "Scalar asymptotic constants");
  constants->add_option("--out", o.out, "CSV output path (stdout when absent)");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");
  selftest->add_option("--tol-scale", o.tol_scale, "Multiplier applied to every tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*kepler) return cmd_kepler(o);
    if (*bound) return cmd_bound(o);
    if (*risk) return cmd_risk(o);
    if (*sweep) return cmd_sweep(o);
    if (*constants) return cmd_constants(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
