#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minimax/bounds.hpp"
#include "minimax/errors.hpp"
#include "minimax/estimators.hpp"
#include "minimax/mixtures.hpp"
#include "minimax/models.hpp"
#include "minimax/priors.hpp"
#include "minimax/report.hpp"
#include "minimax/selftest.hpp"

namespace py = pybind11;
using namespace minimax;

namespace {

double as_float(const DivergenceValue& v) {
  return v.value_or(std::numeric_limits<double>::infinity());
}

py::dict as_dict(const BoundResult& r) {
  py::dict d;
  d["method"] = r.method;
  d["value"] = r.value;
  d["argmax"] = r.argmax;
  return d;
}

Functional make_functional(const std::string& name, double alpha) {
  if (name == "identity") return Identity{};
  if (name == "maxzero") return MaxZero{};
  if (name == "powermax") return power_max(alpha);
  throw ValidationError("unknown functional: " + name);
}

EstimatorSpec make_estimator(const std::string& name, std::optional<double> threshold) {
  if (name == "constant") return ConstantEstimator{};
  if (name == "plugin") return PluginMLE{};
  if (name == "pretest") return PreTest{threshold};
  throw ValidationError("unknown estimator: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimax lower bounds, least-favorable priors and local minimax risks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<GaussianLocation>(m, "GaussianLocation").def_readonly("sigma", &GaussianLocation::sigma);
  py::class_<UniformScale>(m, "UniformScale");
  py::class_<Cosine>(m, "CosinePrior");
  py::class_<KeplerCosine>(m, "KeplerPrior");
  py::class_<GaussianPrior>(m, "GaussianPrior");
  py::class_<UniformPrior>(m, "UniformPrior");
  py::class_<Identity>(m, "Identity");
  py::class_<MaxZero>(m, "MaxZero");
  py::class_<PowerMax>(m, "PowerMax").def_readonly("alpha", &PowerMax::alpha);

  m.def("gaussian_family", &gaussian_family, py::arg("sigma") = 1.0);
  m.def("uniform_family", &uniform_family);
  m.def("gaussian_prior", &gaussian_prior, py::arg("mu"), py::arg("sigma"));
  m.def("cosine_prior", &cosine_prior, py::arg("center"), py::arg("halfwidth"));
  m.def("uniform_prior", &uniform_prior, py::arg("lo"), py::arg("hi"));
  m.def("kepler_prior", &kepler_prior, py::arg("a"), py::arg("center") = 0.0, py::arg("scale") = 1.0);
  m.def("functional", &make_functional, py::arg("name"), py::arg("alpha") = 1.0);

  m.def("density", &density, py::arg("family"), py::arg("theta"), py::arg("x"));
  m.def("prior_density", &prior_density, py::arg("prior"), py::arg("t"));
  m.def("hellinger_sq", &hellinger_sq, py::arg("family"), py::arg("theta1"), py::arg("theta2"));
  m.def(
      "chi_sq", [](const Family& f, double a, double b) { return as_float(chi_sq(f, a, b)); },
      py::arg("family"), py::arg("theta_num"), py::arg("theta_den"));
  m.def(
      "fisher_info", [](const Family& f, double t) { return as_float(fisher_info(f, t)); },
      py::arg("family"), py::arg("theta"));
  m.def(
      "prior_fisher_info", [](const Prior& p) { return as_float(prior_fisher_info(p)); }, py::arg("prior"));

  m.def(
      "solve_kepler",
      [](double a) {
        const auto s = solve_kepler(a);
        py::dict d;
        d["a"] = s.a;
        d["y_a"] = s.y_a;
        d["w_a"] = s.w_a;
        d["s_minus"] = s.s_minus;
        d["s_plus"] = s.s_plus;
        d["min_fisher"] = s.min_fisher;
        return d;
      },
      py::arg("a"));

  m.def(
      "mixture_hellinger_sq",
      [](const Family& f, long long n, const Prior& p, double h) {
        return mixture_hellinger_sq(MixtureSpec{f, n, p, h, {}});
      },
      py::arg("family"), py::arg("n"), py::arg("prior"), py::arg("h"));
  m.def(
      "mixture_chi_sq",
      [](const Family& f, long long n, const Prior& p, double h) {
        return as_float(mixture_chi_sq(MixtureSpec{f, n, p, h, {}}));
      },
      py::arg("family"), py::arg("n"), py::arg("prior"), py::arg("h"));

  m.def(
      "hellinger_mixture_bound",
      [](const Family& fam, long long n, const Prior& p, const Functional& f, std::optional<double> h) {
        if (h) return as_dict({hellinger_mixture_bound(fam, n, p, f, *h), {{"h", *h}}, "hellinger_mixture"});
        const auto r = default_shift_range(p);
        return as_dict(hellinger_mixture_bound_sup(fam, n, p, f, r.lo, r.hi));
      },
      py::arg("family"), py::arg("n"), py::arg("prior"), py::arg("functional"), py::arg("h") = py::none());
  m.def(
      "chi2_mixture_bound",
      [](const Family& fam, long long n, const Prior& p, const Functional& f, double h, double lambda) {
        return chi2_mixture_bound(fam, n, p, f, h, lambda);
      },
      py::arg("family"), py::arg("n"), py::arg("prior"), py::arg("functional"), py::arg("h"),
      py::arg("lambda_") = 0.0);
  m.def(
      "van_trees_value",
      [](const Family& fam, long long n, const Prior& p, const Functional& f) {
        return van_trees_value(fam, n, p, f);
      },
      py::arg("family"), py::arg("n"), py::arg("prior"), py::arg("functional"));
  m.def(
      "vt_kepler_bound",
      [](double delta, long long n, double sup_fisher) { return as_dict(vt_kepler_bound(delta, n, sup_fisher)); },
      py::arg("delta"), py::arg("n"), py::arg("sup_fisher") = 1.0);
  m.def(
      "diffeo_bound",
      [](double delta, long long n, std::optional<double> xi1, std::optional<double> xi2) {
        if (xi1 && xi2) {
          return as_dict({diffeo_bound(delta, n, *xi1, *xi2), {{"xi1", *xi1}, {"xi2", *xi2}}, "diffeo"});
        }
        if (xi1 || xi2) throw ValidationError("diffeo_bound: give both xi1 and xi2 or neither");
        return as_dict(diffeo_bound_sup(delta, n));
      },
      py::arg("delta"), py::arg("n"), py::arg("xi1") = py::none(), py::arg("xi2") = py::none());
  m.def(
      "two_point_local_bound",
      [](const Family& fam, long long n, const Functional& f, double center, double delta) {
        return as_dict(two_point_local_bound(fam, n, f, center, delta));
      },
      py::arg("family"), py::arg("n"), py::arg("functional"), py::arg("center"), py::arg("delta"));

  m.def("constants", []() {
    py::list out;
    for (const auto& r : constants_table()) {
      py::dict d;
      d["name"] = r.name;
      d["value"] = r.value;
      d["arg_name"] = r.arg_name;
      d["arg_value"] = r.arg_value;
      d["reference"] = r.reference;
      out.append(d);
    }
    return out;
  });

  m.def(
      "local_minimax_risk",
      [](const std::string& estimator, double delta, long long n, std::optional<double> threshold) {
        return local_minimax_risk(make_estimator(estimator, threshold), delta, n);
      },
      py::arg("estimator"), py::arg("delta"), py::arg("n"), py::arg("threshold") = py::none());

  m.def(
      "sweep_csv",
      [](const std::string& mode, std::vector<long long> n, std::vector<double> delta, double sigma, int threads) {
        SweepConfig c;
        c.mode = parse_sweep_mode(mode);
        c.n_grid = std::move(n);
        c.delta_grid = std::move(delta);
        c.sigma = sigma;
        c.threads = threads;
        return sweep_csv(run_sweep(c));
      },
      py::arg("mode"), py::arg("n"), py::arg("delta"), py::arg("sigma") = 1.0, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "selftest",
      [](double tol_scale) {
        py::list out;
        for (const auto& c : run_selftest(tol_scale)) out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
      },
      py::arg("tol_scale") = 1.0);
}
