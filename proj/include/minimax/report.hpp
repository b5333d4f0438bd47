#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minimax/bounds.hpp"

namespace minimax {

/// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

enum class SweepMode { FixedNVaryDelta, FixedDeltaVaryN };

struct SweepConfig {
  SweepMode mode = SweepMode::FixedNVaryDelta;
  std::vector<long long> n_grid{100};
  std::vector<double> delta_grid = log_grid(1e-2, 1e2, 50);
  double sigma = 1.0;
  bool vt = true;
  bool diffeo = true;
  bool twopoint = true;
  bool constant = true;
  bool plugin = true;
  bool pretest = true;
  std::optional<double> threshold;  // pre-test threshold; n^{-1/4} when absent
  int threads = 0;                  // 0: hardware concurrency

  void validate() const;
};

SweepMode parse_sweep_mode(const std::string& s);
std::string sweep_mode_name(SweepMode mode);

/// One sweep point; every value is n-scaled. Absent methods stay empty.
struct CsvRow {
  double delta = 0.0;
  long long n = 1;
  std::optional<double> bound_vt;
  std::optional<double> bound_diffeo;
  std::optional<double> bound_twopoint;
  std::optional<double> risk_constant;
  std::optional<double> risk_plugin;
  std::optional<double> risk_pretest;
};

/// Computes a single row for MaxZero under N(theta, sigma^2) on |theta| < delta.
CsvRow sweep_point(const SweepConfig& config, double delta, long long n);

/// Rows in grid order: n outer and delta inner for FixedNVaryDelta, the
/// other way round for FixedDeltaVaryN. Points run on worker threads.
std::vector<CsvRow> run_sweep(const SweepConfig& config);

std::string csv_header();
std::string csv_line(const CsvRow& row);
std::string sweep_csv(const std::vector<CsvRow>& rows);

/// Log-x plot: bounds dashed, risks solid, one panel per fixed value.
std::string sweep_svg(const std::vector<CsvRow>& rows, const SweepConfig& config);

struct KeplerRow {
  double a;
  double y_a;
  double w_a;
  double min_fisher;
};

std::vector<KeplerRow> kepler_table(const std::vector<double>& a_values);
std::string kepler_csv(const std::vector<KeplerRow>& rows);

/// Left: densities of the constrained minimizer for `density_a`. Right:
/// minimal Fisher information against a.
std::string kepler_svg(const std::vector<KeplerRow>& rows, const std::vector<double>& density_a);

struct ConstantRow {
  std::string name;
  double value;
  std::string arg_name;
  double arg_value;
  double reference;
};

std::vector<ConstantRow> constants_table();
std::string constants_csv(const std::vector<ConstantRow>& rows);

/// method=..., value=..., then one line per argmax entry.
std::string bound_result_text(const BoundResult& result);

/// Writes bytes verbatim; throws ValidationError when the file cannot be written.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace minimax
