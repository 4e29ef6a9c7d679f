// hermcurv: verification suites, (t, s) scans and curvature dumps.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hermcurv/errors.hpp"
#include "hermcurv/suite.hpp"

using namespace hermcurv;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + what + ": " + e.what());
  }
}

// --chart accepts inline JSON, a path to a JSON file, or a bare tag name.
ChartSpec load_chart(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return chart_spec_from_json(parse_json(arg, "--chart"));
  if (std::filesystem::exists(arg)) return chart_spec_from_json(parse_json(read_file(arg), arg));
  return chart_spec_from_json(json(arg));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ConfigError("cannot write '" + out + "'");
  f << text;
}

void apply_tol(std::map<std::string, double>& tols, const std::vector<std::string>& args) {
  for (const auto& a : args) {
    const auto eq = a.find('=');
    const std::string key = eq == std::string::npos ? "constancy" : a.substr(0, eq);
    const std::string val = eq == std::string::npos ? a : a.substr(eq + 1);
    if (!tols.count(key)) throw ConfigError("unknown tolerance key '" + key + "'");
    double v = 0.0;
    try {
      v = std::stod(val);
    } catch (const std::exception&) {
      throw ConfigError("bad tolerance value '" + val + "'");
    }
    if (!(v > 0.0)) throw ConfigError("tolerance must be > 0");
    tols[key] = v;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of Gauduchon and canonical connections on Hermitian charts"};
  app.require_subcommand(1);

  std::string out, format;
  std::vector<std::string> tols;
  bool no_timestamp = false;
  std::uint64_t seed = 1;
  bool seed_given = false;

  auto* suite = app.add_subcommand("suite", "run the verification suite described by a config file");
  std::string config_path;
  suite->add_option("config", config_path, "suite config JSON")->required();
  suite->add_option("--out", out, "write the report here instead of stdout");
  suite->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("--tol", tols, "tolerance override KEY=VALUE (bare VALUE sets constancy)");
  suite->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { seed = v, seed_given = true; }, "override seed");
  suite->add_flag("--no-timestamp", no_timestamp, "omit wall times and generation time");

  auto* scan = app.add_subcommand("scan", "constancy residual over a (t, s) grid");
  std::string chart_arg, t_range, s_range;
  int samples = 10;
  scan->add_option("--chart", chart_arg, "chart spec: JSON, path, or tag")->required();
  scan->add_option("--t", t_range, "a:b:n")->required();
  scan->add_option("--s", s_range, "a:b:n")->required();
  scan->add_option("--samples", samples, "points per cell");
  scan->add_option("--seed", seed, "sampling seed");
  scan->add_option("--out", out, "CSV output path");

  auto* curv = app.add_subcommand("curv", "dump D^t_s curvature at a point");
  double t = 1.0, s = 0.0;
  std::string point;
  curv->add_option("--chart", chart_arg, "chart spec: JSON, path, or tag")->required();
  curv->add_option("--t", t, "t");
  curv->add_option("--s", s, "s");
  curv->add_option("--point", point, "\"re,im;re,im\"")->required();
  curv->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  curv->add_option("--out", out, "output path");

  auto* hscc = app.add_subcommand("hsc", "holomorphic sectional curvature at seeded points");
  hscc->add_option("--chart", chart_arg, "chart spec: JSON, path, or tag")->required();
  hscc->add_option("--t", t, "t");
  hscc->add_option("--s", s, "s");
  hscc->add_option("--samples", samples, "number of points");
  hscc->add_option("--seed", seed, "sampling seed");
  hscc->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (*suite) {
      SuiteConfig cfg = suite_config_from_json(parse_json(read_file(config_path), config_path));
      if (seed_given) cfg.seed = seed;
      apply_tol(cfg.tolerances, tols);
      if (!format.empty()) cfg.format = format;
      if (!out.empty()) cfg.output_path = out;
      const Report rep = run_suite(cfg);
      emit(cfg.format == "csv" ? report_to_csv(rep) : report_to_json(rep, !no_timestamp).dump(2) + "\n",
           cfg.output_path);
      std::cerr << rep.passed() << " passed, " << rep.failed() << " failed\n";
      return rep.all_pass() ? kPass : kFail;
    }
    if (*scan) {
      const auto rows = scan_ts(load_chart(chart_arg), parse_range(t_range), parse_range(s_range), samples, seed);
      emit(scan_to_csv(rows), out);
      return kPass;
    }
    if (*curv) {
      const ChartSpec spec = load_chart(chart_arg);
      const MetricChart chart = make_chart(spec);
      const CPoint z = parse_point(point);
      const ConnectionParams P(t, s);
      const PointGeometry geo(chart, z);
      const Curv4 R = canonical_curvature(geo, P, unitary_frame(geo.metric()));
      emit(format == "csv" ? curv4_to_csv(chart.label(), z, P, R) : curv4_to_json(chart.label(), z, P, R).dump(2) + "\n",
           out);
      return kPass;
    }
    if (*hscc) {
      const ChartSpec spec = load_chart(chart_arg);
      const ConnectionParams P(t, s);
      const HSCScan res = hsc_scan(spec, P, samples, seed);
      emit(hsc_scan_to_json(spec, P, res, seed).dump(2) + "\n", out);
      return kPass;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const InvalidSpec& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kPass;
}
