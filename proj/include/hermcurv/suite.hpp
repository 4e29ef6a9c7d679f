#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hermcurv/catalog.hpp"

namespace hermcurv {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kConventionsVersion = "hermcurv-conventions-1";

/// Default tolerances, keyed by check family.
std::map<std::string, double> default_tolerances();

ChartSpec chart_spec_from_json(const nlohmann::json& j);
nlohmann::json chart_spec_to_json(const ChartSpec& spec);

struct SuiteConfig {
  ChartSpec chart;
  std::vector<std::pair<double, double>> params_grid{{1.0, 0.0}};
  int sample_count = 10;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances = default_tolerances();
  std::string output_path; ///< empty: stdout
  std::string format = "json";
};

/// Throws ConfigError.
SuiteConfig suite_config_from_json(const nlohmann::json& j);

struct CheckRecord {
  std::string name;
  std::string chart;
  std::optional<std::pair<double, double>> params;
  int points = 0;
  double residual_max = 0.0;
  double residual_mean = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json extra = nlohmann::json::object();
  std::string error; ///< set when the check aborted
};

struct Report {
  std::vector<CheckRecord> records;
  std::uint64_t seed = 0;
  std::string chart;

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
};

Report run_suite(const SuiteConfig& config);

nlohmann::json report_to_json(const Report& report, bool timestamps);
std::string report_to_csv(const Report& report);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 2;
  std::vector<double> values() const;
};
/// Parses "a:b:n". Throws ConfigError.
Range parse_range(const std::string& text);

struct ScanRow {
  double t = 0.0;
  double s = 0.0;
  double residual = 0.0; ///< max constancy residual over the samples
  double circle = 0.0;   ///< circle_residual(t, s)
};

/// Rows sorted by (t, s). Throws ConfigError.
std::vector<ScanRow> scan_ts(const ChartSpec& chart, const Range& t, const Range& s, int samples, std::uint64_t seed);
std::string scan_to_csv(const std::vector<ScanRow>& rows);

/// Parses "re,im;re,im;...". Throws ConfigError.
CPoint parse_point(const std::string& text);

/// Curv4 dump: JSON document, or CSV with a one-line JSON metadata header.
nlohmann::json curv4_metadata(const std::string& chart, const CPoint& z, const ConnectionParams& params,
                              const Curv4& c);
nlohmann::json curv4_to_json(const std::string& chart, const CPoint& z, const ConnectionParams& params,
                             const Curv4& c);
std::string curv4_to_csv(const std::string& chart, const CPoint& z, const ConnectionParams& params, const Curv4& c);

/// Constancy and direction-sampled HSC at seeded points.
struct HSCScan {
  HSCReport report;
  std::vector<double> hsc_min; ///< per point, over the sampled directions
  std::vector<double> hsc_max;
};
HSCScan hsc_scan(const ChartSpec& chart, const ConnectionParams& params, int samples, std::uint64_t seed,
                 int directions = 8);
nlohmann::json hsc_scan_to_json(const ChartSpec& chart, const ConnectionParams& params, const HSCScan& scan,
                                std::uint64_t seed);

} // namespace hermcurv
