#include "minimax/report.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "minimax/errors.hpp"
#include "minimax/estimators.hpp"
#include "minimax/priors.hpp"

namespace minimax {

namespace {

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

struct Series {
  const char* name;
  const char* color;
  bool dashed;
  std::optional<double> CsvRow::*field;
};

constexpr std::array<Series, 6> kSeries{{
    {"bound_vt", "#1f77b4", true, &CsvRow::bound_vt},
    {"bound_diffeo", "#ff7f0e", true, &CsvRow::bound_diffeo},
    {"bound_twopoint", "#2ca02c", true, &CsvRow::bound_twopoint},
    {"risk_constant", "#d62728", false, &CsvRow::risk_constant},
    {"risk_plugin", "#9467bd", false, &CsvRow::risk_plugin},
    {"risk_pretest", "#8c564b", false, &CsvRow::risk_pretest},
}};

// Maps data coordinates into one plot rectangle.
struct Panel {
  double left, top, width, height;
  double x_lo, x_hi, y_lo, y_hi;
  bool log_x;

  double px(double x) const {
    const double u = log_x ? (std::log10(x) - std::log10(x_lo)) / (std::log10(x_hi) - std::log10(x_lo))
                           : (x - x_lo) / (x_hi - x_lo);
    return left + u * width;
  }
  double py(double y) const { return top + height - (y - y_lo) / (y_hi - y_lo) * height; }
};

void svg_text(std::string& out, double x, double y, const std::string& anchor, const std::string& text,
              int size = 12) {
  out += "<text x=\"" + fixed3(x) + "\" y=\"" + fixed3(y) + "\" font-family=\"sans-serif\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + text + "</text>\n";
}

void svg_line(std::string& out, double x1, double y1, double x2, double y2, const std::string& color,
              double width = 1.0) {
  out += "<line x1=\"" + fixed3(x1) + "\" y1=\"" + fixed3(y1) + "\" x2=\"" + fixed3(x2) + "\" y2=\"" +
         fixed3(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" + fixed3(width) + "\"/>\n";
}

void svg_polyline(std::string& out, const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  bool dashed, const std::string& clip) {
  if (pts.empty()) return;
  out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.500\"";
  if (dashed) out += " stroke-dasharray=\"6,4\"";
  if (!clip.empty()) out += " clip-path=\"url(#" + clip + ")\"";
  out += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += fixed3(pts[i].first) + "," + fixed3(pts[i].second);
  }
  out += "\"/>\n";
}

std::string svg_open(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fixed3(width) + "\" height=\"" + fixed3(height) + "\" viewBox=\"0 0 " + fixed3(width) + " " +
         fixed3(height) + "\">\n<rect x=\"0\" y=\"0\" width=\"" + fixed3(width) + "\" height=\"" +
         fixed3(height) + "\" fill=\"#ffffff\"/>\n";
}

void draw_axes(std::string& out, const Panel& p, const std::string& x_label, const std::string& y_label,
               const std::string& title, int y_ticks) {
  out += "<rect x=\"" + fixed3(p.left) + "\" y=\"" + fixed3(p.top) + "\" width=\"" + fixed3(p.width) +
         "\" height=\"" + fixed3(p.height) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.000\"/>\n";
  if (p.log_x) {
    const int k_lo = static_cast<int>(std::ceil(std::log10(p.x_lo) - 1e-9));
    const int k_hi = static_cast<int>(std::floor(std::log10(p.x_hi) + 1e-9));
    for (int k = k_lo; k <= k_hi; ++k) {
      const double v = std::pow(10.0, k);
      const double x = p.px(v);
      svg_line(out, x, p.top + p.height, x, p.top + p.height + 5.0, "#000000");
      svg_text(out, x, p.top + p.height + 18.0, "middle", format_double(v));
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double v = p.x_lo + (p.x_hi - p.x_lo) * i / 4.0;
      const double x = p.px(v);
      svg_line(out, x, p.top + p.height, x, p.top + p.height + 5.0, "#000000");
      svg_text(out, x, p.top + p.height + 18.0, "middle", format_double(std::round(v * 1e6) / 1e6));
    }
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = p.y_lo + (p.y_hi - p.y_lo) * i / y_ticks;
    const double y = p.py(v);
    svg_line(out, p.left - 5.0, y, p.left, y, "#000000");
    svg_text(out, p.left - 8.0, y + 4.0, "end", format_double(std::round(v * 1e6) / 1e6));
  }
  svg_text(out, p.left + p.width / 2.0, p.top + p.height + 36.0, "middle", x_label);
  svg_text(out, p.left - 48.0, p.top + p.height / 2.0, "middle", y_label);
  svg_text(out, p.left + p.width / 2.0, p.top - 10.0, "middle", title, 14);
}

void require_sorted(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw ValidationError(std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw ValidationError(std::string(what) + " grid must be strictly increasing");
  }
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void SweepConfig::validate() const {
  if (n_grid.empty()) throw ValidationError("n grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw ValidationError("n values must be >= 1");
    if (i && !(n_grid[i] > n_grid[i - 1])) throw ValidationError("n grid must be strictly increasing");
  }
  require_sorted(delta_grid, "delta");
  for (double d : delta_grid) {
    if (!(d > 0.0) || !std::isfinite(d)) throw ValidationError("delta values must be finite and > 0");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be finite and > 0");
  if (threshold && !(*threshold > 0.0)) throw ValidationError("threshold must be > 0");
  if (threads < 0) throw ValidationError("threads must be >= 0");
}

SweepMode parse_sweep_mode(const std::string& s) {
  if (s == "fixed-n-vary-delta") return SweepMode::FixedNVaryDelta;
  if (s == "fixed-delta-vary-n") return SweepMode::FixedDeltaVaryN;
  throw ValidationError("unknown sweep mode: " + s);
}

std::string sweep_mode_name(SweepMode mode) {
  return mode == SweepMode::FixedNVaryDelta ? "fixed-n-vary-delta" : "fixed-delta-vary-n";
}

CsvRow sweep_point(const SweepConfig& config, double delta, long long n) {
  // Everything is computed at sigma = 1 and rescaled: the n-scaled risk of
  // max(theta, 0) at (delta, sigma) is sigma^2 times its value at (delta / sigma, 1).
  const double s = config.sigma;
  const double s2 = s * s;
  const double d1 = delta / s;
  CsvRow row;
  row.delta = delta;
  row.n = n;
  if (config.vt) row.bound_vt = vt_kepler_bound(delta, n, 1.0 / s2).value;
  if (config.diffeo) row.bound_diffeo = s2 * diffeo_bound_sup(d1, n).value;
  if (config.twopoint) row.bound_twopoint = two_point_local_bound(gaussian_family(s), n, MaxZero{}, 0.0, delta).value;
  if (config.constant) row.risk_constant = constant_local_minimax_risk(delta, n);
  if (config.plugin) row.risk_plugin = s2 * local_minimax_risk(PluginMLE{}, d1, n);
  if (config.pretest) {
    const double c = config.threshold.value_or(std::pow(static_cast<double>(n), -0.25));
    row.risk_pretest = s2 * local_minimax_risk(PreTest{c / s}, d1, n);
  }
  return row;
}

std::vector<CsvRow> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<std::pair<double, long long>> points;
  if (config.mode == SweepMode::FixedNVaryDelta) {
    for (long long n : config.n_grid)
      for (double d : config.delta_grid) points.emplace_back(d, n);
  } else {
    for (double d : config.delta_grid)
      for (long long n : config.n_grid) points.emplace_back(d, n);
  }

  std::vector<CsvRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = sweep_point(config, points[i].first, points[i].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned count = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  count = std::clamp<unsigned>(count, 1u, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string csv_header() {
  return "delta,n,bound_vt,bound_diffeo,bound_twopoint,risk_constant,risk_plugin,risk_pretest\n";
}

std::string csv_line(const CsvRow& r) {
  return format_double(r.delta) + "," + std::to_string(r.n) + "," + cell(r.bound_vt) + "," +
         cell(r.bound_diffeo) + "," + cell(r.bound_twopoint) + "," + cell(r.risk_constant) + "," +
         cell(r.risk_plugin) + "," + cell(r.risk_pretest) + "\n";
}

std::string sweep_csv(const std::vector<CsvRow>& rows) {
  std::string out = csv_header();
  for (const auto& r : rows) out += csv_line(r);
  return out;
}

std::string sweep_svg(const std::vector<CsvRow>& rows, const SweepConfig& config) {
  const bool vary_delta = config.mode == SweepMode::FixedNVaryDelta;
  std::vector<double> fixed;
  if (vary_delta) {
    for (long long n : config.n_grid) fixed.push_back(static_cast<double>(n));
  } else {
    fixed = config.delta_grid;
  }

  constexpr double kWidth = 760.0;
  constexpr double kPanelHeight = 380.0;
  const double total_height = kPanelHeight * static_cast<double>(fixed.size());
  std::string out = svg_open(kWidth, total_height);

  const double s2 = config.sigma * config.sigma;
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    std::vector<const CsvRow*> mine;
    for (const auto& r : rows) {
      const double key = vary_delta ? static_cast<double>(r.n) : r.delta;
      if (key == fixed[k]) mine.push_back(&r);
    }
    if (mine.empty()) continue;
    const auto xval = [&](const CsvRow* r) { return vary_delta ? r->delta : static_cast<double>(r->n); };
    double x_lo = xval(mine.front());
    double x_hi = xval(mine.back());
    if (x_lo == x_hi) {
      x_lo /= 2.0;
      x_hi *= 2.0;
    }
    const double top = kPanelHeight * static_cast<double>(k) + 40.0;
    const Panel p{80.0, top, 500.0, kPanelHeight - 100.0, x_lo, x_hi, 0.0, 1.5 * s2, true};
    const std::string clip = "clip" + std::to_string(k);
    out += "<defs><clipPath id=\"" + clip + "\"><rect x=\"" + fixed3(p.left) + "\" y=\"" + fixed3(p.top) +
           "\" width=\"" + fixed3(p.width) + "\" height=\"" + fixed3(p.height) + "\"/></clipPath></defs>\n";
    const std::string title = vary_delta ? "n = " + format_double(fixed[k]) : "delta = " + format_double(fixed[k]);
    draw_axes(out, p, vary_delta ? "delta" : "n", "n-scaled risk", title, 6);

    double legend_y = p.top + 12.0;
    for (const auto& s : kSeries) {
      std::vector<std::pair<double, double>> pts;
      for (const CsvRow* r : mine) {
        const auto& v = r->*(s.field);
        if (!v) continue;
        // Values far above the frame are pinned just outside it and clipped.
        const double y = std::min(*v, p.y_hi * 1.05);
        pts.emplace_back(p.px(xval(r)), p.py(y));
      }
      if (pts.empty()) continue;
      svg_polyline(out, pts, s.color, s.dashed, clip);
      const double lx = p.left + p.width + 16.0;
      out += "<line x1=\"" + fixed3(lx) + "\" y1=\"" + fixed3(legend_y) + "\" x2=\"" + fixed3(lx + 28.0) +
             "\" y2=\"" + fixed3(legend_y) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.500\"" +
             (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
      svg_text(out, lx + 34.0, legend_y + 4.0, "start", s.name, 11);
      legend_y += 18.0;
    }
  }
  out += "</svg>\n";
  return out;
}

std::vector<KeplerRow> kepler_table(const std::vector<double>& a_values) {
  std::vector<KeplerRow> rows;
  rows.reserve(a_values.size());
  for (double a : a_values) {
    const auto s = solve_kepler(a);
    rows.push_back({s.a, s.y_a, s.w_a, s.min_fisher});
  }
  return rows;
}

std::string kepler_csv(const std::vector<KeplerRow>& rows) {
  std::string out = "a,y_a,w_a,min_fisher\n";
  for (const auto& r : rows) {
    out += format_double(r.a) + "," + format_double(r.y_a) + "," + format_double(r.w_a) + "," +
           format_double(r.min_fisher) + "\n";
  }
  return out;
}

std::string kepler_svg(const std::vector<KeplerRow>& rows, const std::vector<double>& density_a) {
  constexpr double kWidth = 960.0;
  constexpr double kHeight = 400.0;
  static constexpr std::array<const char*, 6> kColors{"#1f77b4", "#ff7f0e", "#2ca02c",
                                                      "#d62728", "#9467bd", "#8c564b"};
  std::string out = svg_open(kWidth, kHeight);

  std::vector<KeplerSolution> sols;
  double y_max = 0.0;
  for (double a : density_a) {
    sols.push_back(solve_kepler(a));
    y_max = std::max(y_max, 2.0 / sols.back().w_a);
  }
  if (y_max == 0.0) y_max = 1.0;
  const Panel left{70.0, 40.0, 340.0, 300.0, -1.0, 1.0, 0.0, 1.1 * y_max, false};
  draw_axes(out, left, "t", "density", "constrained minimizer", 5);
  double legend_y = left.top + 12.0;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    std::vector<std::pair<double, double>> pts;
    for (double t : linear_grid(-1.0, 1.0, 401)) pts.emplace_back(left.px(t), left.py(kepler_prior_density(sols[i], t)));
    const char* color = kColors[i % kColors.size()];
    svg_polyline(out, pts, color, false, "");
    svg_line(out, left.left + 10.0, legend_y, left.left + 34.0, legend_y, color, 1.5);
    svg_text(out, left.left + 40.0, legend_y + 4.0, "start", "a = " + format_double(sols[i].a), 11);
    legend_y += 18.0;
  }

  if (!rows.empty()) {
    double f_max = 0.0;
    for (const auto& r : rows) f_max = std::max(f_max, r.min_fisher);
    double a_lo = rows.front().a;
    double a_hi = rows.back().a;
    if (a_lo == a_hi) {
      a_lo = 0.0;
      a_hi = 1.0;
    }
    const Panel right{540.0, 40.0, 380.0, 300.0, a_lo, a_hi, 0.0, 1.1 * f_max, false};
    draw_axes(out, right, "a", "minimal Fisher information", "Fisher information against a", 5);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(right.px(r.a), right.py(r.min_fisher));
    svg_polyline(out, pts, "#000000", false, "");
  }
  out += "</svg>\n";
  return out;
}

std::vector<ConstantRow> constants_table() {
  const auto r = lam_constant_regular();
  const auto t = lam_constant_uniform_twopoint();
  const auto d = lam_constant_uniform_diffeo();
  return {
      {"regular_twopoint", r.value, "x", r.argmax.at("x"), 0.28953},
      {"uniform_twopoint", t.value, "eta", t.argmax.at("eta"), 0.0558},
      {"uniform_diffeo", d.value, "C", d.argmax.at("C"), 0.0635 * 0.0635},
  };
}

std::string constants_csv(const std::vector<ConstantRow>& rows) {
  std::string out = "name,value,arg_name,arg_value,reference\n";
  for (const auto& r : rows) {
    out += r.name + "," + format_double(r.value) + "," + r.arg_name + "," + format_double(r.arg_value) + "," +
           format_double(r.reference) + "\n";
  }
  return out;
}

std::string bound_result_text(const BoundResult& result) {
  std::string out = "method=" + result.method + "\nvalue=" + format_double(result.value) + "\n";
  for (const auto& [k, v] : result.argmax) out += k + "=" + format_double(v) + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open output file: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw ValidationError("cannot write output file: " + path);
}

}  // namespace minimax
