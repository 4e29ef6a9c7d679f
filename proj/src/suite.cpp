#include "hermcurv/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "hermcurv/conformal.hpp"
#include "hermcurv/errors.hpp"

namespace hermcurv {

using nlohmann::json;

std::map<std::string, double> default_tolerances() {
  return {
      {"jet", 1e-5},       {"unitarity", 1e-12}, {"hermitian", 1e-10}, {"interpolation", 1e-10},
      {"formula", 1e-8},   {"constancy", 1e-7},  {"hsc", 1e-7},        {"conformal", 1e-7},
      {"torsion", 1e-8},   {"selfdual", 1e-8},   {"weyl", 1e-6},
  };
}

// ---------------------------------------------------------------- chart specs

namespace {

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("expected a real number or [re, im], got " + j.dump());
}

json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

} // namespace

ChartSpec chart_spec_from_json(const json& j) {
  if (j.is_string()) return chart_spec_from_json(json{{"chart", j}});
  if (!j.is_object() || !j.contains("chart") || !j["chart"].is_string())
    throw ConfigError("chart spec must be an object with a string 'chart' tag");
  const std::string tag = j["chart"].get<std::string>();
  const int n = get_or<int>(j, "n", 2);
  if (n < 1) throw ConfigError("chart dimension n must be >= 1");
  const double a = get_or<double>(j, "a", 0.5);

  if (tag == "euclidean") return ChartSpec::euclidean(n);
  if (tag == "hopf_standard") return ChartSpec::hopf_standard(n, a);
  if (tag == "fs_bergman") return ChartSpec::fs_bergman();
  if (tag == "fubini_study") return ChartSpec::fubini_study(n);
  if (tag == "complex_hyperbolic") return ChartSpec::complex_hyperbolic(n);
  if (tag == "admissible") {
    HopfSpec h;
    h.n = n;
    h.a = a;
    h.c0 = get_or<double>(j, "c0", 1.0);
    h.A = CMatrix::Zero(n, n);
    if (j.contains("A")) {
      const json& A = j["A"];
      if (!A.is_array() || A.size() != static_cast<std::size_t>(n)) throw ConfigError("A must be an n x n array");
      for (int r = 0; r < n; ++r) {
        if (!A[r].is_array() || A[r].size() != static_cast<std::size_t>(n)) throw ConfigError("A must be an n x n array");
        for (int c = 0; c < n; ++c) h.A(r, c) = complex_from_json(A[r][c]);
      }
    }
    if (j.contains("multipliers")) {
      for (const auto& m : j["multipliers"]) h.multipliers.push_back(complex_from_json(m));
    } else {
      h.multipliers.assign(static_cast<std::size_t>(n), cplx{a, 0.0});
    }
    return ChartSpec::admissible(std::move(h));
  }
  if (tag == "conformal") {
    if (!j.contains("base")) throw ConfigError("conformal chart needs 'base'");
    if (!j.contains("f") || !j["f"].is_string()) throw ConfigError("conformal chart needs an expression string 'f'");
    return ChartSpec::conformal(chart_spec_from_json(j["base"]), j["f"].get<std::string>());
  }
  if (tag == "inline") {
    if (!j.contains("g") || !j["g"].is_array()) throw ConfigError("inline chart needs 'g': n*n expression strings");
    std::vector<std::string> g;
    for (const auto& e : j["g"]) {
      if (!e.is_string()) throw ConfigError("inline components must be expression strings");
      g.push_back(e.get<std::string>());
    }
    Domain d;
    if (j.contains("domain")) {
      const json& dj = j["domain"];
      const double lo = get_or<double>(dj, "lo", 0.0);
      const double hi = get_or<double>(dj, "hi", std::numeric_limits<double>::infinity());
      d = Domain::annulus(lo, hi);
    }
    return ChartSpec::inline_chart(n, std::move(g), d);
  }
  throw ConfigError("unknown chart tag '" + tag + "'");
}

json chart_spec_to_json(const ChartSpec& spec) {
  using K = ChartSpec::Kind;
  json j{{"chart", kind_name(spec.kind)}, {"n", spec.n}};
  switch (spec.kind) {
  case K::HopfStandard: j["a"] = spec.a; break;
  case K::Admissible: {
    j["a"] = spec.hopf.a;
    j["c0"] = spec.hopf.c0;
    json m = json::array();
    for (const auto& x : spec.hopf.multipliers) m.push_back(complex_to_json(x));
    j["multipliers"] = m;
    json A = json::array();
    for (int r = 0; r < spec.hopf.A.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < spec.hopf.A.cols(); ++c) row.push_back(complex_to_json(spec.hopf.A(r, c)));
      A.push_back(row);
    }
    j["A"] = A;
    break;
  }
  case K::Conformal:
    j["base"] = chart_spec_to_json(*spec.base);
    j["f"] = spec.f;
    break;
  case K::Inline: {
    j["g"] = spec.g;
    for (const auto& c : spec.domain.constraints)
      if (c.kind == DomainConstraint::Kind::NormRange) j["domain"] = {{"lo", c.lo}, {"hi", c.hi}};
    break;
  }
  default: break;
  }
  return j;
}

SuiteConfig suite_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("suite config must be a JSON object");
  if (!j.contains("chart")) throw ConfigError("suite config needs 'chart'");
  SuiteConfig c;
  c.chart = chart_spec_from_json(j["chart"]);
  const char* grid_key = j.contains("params_grid") ? "params_grid" : (j.contains("grid") ? "grid" : nullptr);
  if (grid_key) {
    c.params_grid.clear();
    for (const auto& p : j[grid_key]) {
      if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number())
        c.params_grid.emplace_back(p[0].get<double>(), p[1].get<double>());
      else if (p.is_object() && p.contains("t"))
        c.params_grid.emplace_back(p["t"].get<double>(), get_or<double>(p, "s", 0.0));
      else
        throw ConfigError("params_grid entries must be [t, s] or {\"t\":.., \"s\":..}");
    }
    if (c.params_grid.empty()) throw ConfigError("params_grid must not be empty");
  }
  c.sample_count = get_or<int>(j, "samples", get_or<int>(j, "sample_count", c.sample_count));
  if (c.sample_count < 1) throw ConfigError("sample_count must be >= 1");
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("tolerances must be an object");
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!c.tolerances.count(k)) throw ConfigError("unknown tolerance key '" + k + "'");
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError("tolerance '" + k + "' must be > 0");
      c.tolerances[k] = v.get<double>();
    }
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    c.output_path = get_or<std::string>(o, "path", "");
    c.format = get_or<std::string>(o, "format", "json");
  }
  if (c.format != "json" && c.format != "csv") throw ConfigError("output format must be json or csv");
  return c;
}

// ---------------------------------------------------------------- suite

int Report::passed() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}
int Report::failed() const { return static_cast<int>(records.size()) - passed(); }

namespace {

struct Stat {
  double max = 0.0;
  double sum = 0.0;
  int count = 0;
  void add(double v) {
    max = std::max(max, v);
    sum += v;
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
};

class Runner {
public:
  Runner(const SuiteConfig& cfg) : cfg_(cfg), chart_(make_chart(cfg.chart)) {
    points_ = sample_points(cfg.chart, cfg.sample_count, cfg.seed);
    report_.seed = cfg.seed;
    report_.chart = chart_.label();
  }

  Report run() {
    const auto& grid = cfg_.params_grid;
    check("jet_oracle", std::nullopt, "jet", [&](const CPoint& z, Stat& st, json&) {
      for (const auto& g : chart_.components()) {
        const WJet2 a = eval_jet(g, z);
        const WJet2 b = fd_jet(g, z);
        st.add(max_abs_diff(a, b) / std::max(1.0, max_abs(a)));
      }
    });
    check("frame_unitarity", std::nullopt, "unitarity",
          [&](const CPoint& z, Stat& st, json&) { st.add(unitary_frame(chart_, z).unitarity_defect()); });
    check("hermitian_symmetry", std::nullopt, "hermitian", [&](const CPoint& z, Stat& st, json&) {
      const PointGeometry geo(chart_, z);
      const FrameAtPoint fr = unitary_frame(geo.metric());
      const int n = geo.n();
      for (double t : {-1.0, 0.0, 1.0, 3.0}) {
        const Curv4 R = gauduchon_curvature(geo, t, fr);
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) st.add(std::abs(R(k, l, i, j) - std::conj(R(l, k, j, i))));
      }
    });
    check("interpolation", std::nullopt, "interpolation", [&](const CPoint& z, Stat& st, json&) {
      const PointGeometry geo(chart_, z);
      const FrameAtPoint fr = unitary_frame(geo.metric());
      const Curv4 lc = lc_curvature(geo, fr);
      st.add(max_abs_diff(gauduchon_curvature(geo, 1.0, fr), chern_curvature(geo, fr)));
      for (const auto& [t, s] : grid) {
        (void)s;
        st.add(max_abs_diff(canonical_curvature(geo, {t, 0.0}, fr), gauduchon_curvature(geo, t, fr)));
        st.add(max_abs_diff(canonical_curvature(geo, {t, 1.0}, fr), lc));
      }
    });
    for (const auto& [t, s] : grid) {
      const ConnectionParams P(t, s);
      check("formula_vs_direct", std::make_pair(t, s), "formula", [&](const CPoint& z, Stat& st, json&) {
        const PointGeometry geo(chart_, z);
        const FrameAtPoint fr = unitary_frame(geo.metric());
        st.add(max_abs_diff(canonical_curvature(geo, P, fr), direct_curvature(geo, P, fr)));
      });
      Stat cstat;
      double cmin = std::numeric_limits<double>::infinity(), cmax = -cmin;
      check("constancy", std::make_pair(t, s), "constancy", [&](const CPoint& z, Stat& st, json& extra) {
        const PointGeometry geo(chart_, z);
        const ConstancyResult cr = constancy_residual(canonical_curvature(geo, P, unitary_frame(geo.metric())));
        st.add(cr.residual);
        cstat.add(cr.c);
        cmin = std::min(cmin, cr.c);
        cmax = std::max(cmax, cr.c);
        extra["c_mean"] = cstat.mean();
        extra["c_min"] = cmin;
        extra["c_max"] = cmax;
        extra["circle_residual"] = circle_residual(t, s);
      });
      if (cfg_.chart.kind == ChartSpec::Kind::Admissible && std::abs(circle_residual(t, s)) < 1e-12) {
        check("circle_hsc", std::make_pair(t, s), "hsc", [&](const CPoint& z, Stat& st, json& extra) {
          const PointGeometry geo(chart_, z);
          const ConstancyResult cr = constancy_residual(canonical_curvature(geo, P, unitary_frame(geo.metric())));
          const double ref = admissible_hsc_reference(cfg_.chart.hopf, z);
          st.add(std::abs(cr.c - ref));
          if (std::abs(ref) > 1e-6) extra["fitted_scalar"] = cr.c / ref;
        });
      }
    }
    if (chart_.n() == 2) {
      int disagree = 0;
      check("selfdual_weyl_equivalence", std::nullopt, "weyl", [&](const CPoint& z, Stat& st, json& extra) {
        const PointGeometry geo(chart_, z);
        const auto sd = selfdual_residual(geo);
        const double sdmax = std::max({sd[0], sd[1], sd[2]});
        const double w = weyl_minus(geo).cwiseAbs().maxCoeff();
        const bool a = sdmax < tol("selfdual");
        const bool b = w < tol("weyl");
        if (a != b) ++disagree;
        st.add(a == b ? 0.0 : std::numeric_limits<double>::infinity());
        extra["selfdual_max"] = std::max(extra.value("selfdual_max", 0.0), sdmax);
        extra["weyl_max"] = std::max(extra.value("weyl_max", 0.0), w);
        extra["disagreements"] = disagree;
      });
    }
    if (cfg_.chart.kind == ChartSpec::Kind::Conformal) conformal_checks();
    return std::move(report_);
  }

private:
  double tol(const std::string& key) const { return cfg_.tolerances.at(key); }

  void check(const std::string& name, std::optional<std::pair<double, double>> params, const std::string& tol_key,
             const std::function<void(const CPoint&, Stat&, json&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckRecord rec;
    rec.name = name;
    rec.chart = chart_.label();
    rec.params = params;
    rec.tolerance = tol(tol_key);
    rec.seed = cfg_.seed;
    Stat st;
    try {
      for (const auto& z : points_) {
        body(z, st, rec.extra);
        ++rec.points;
      }
    } catch (const Error& e) {
      rec.error = e.what();
    }
    rec.residual_max = st.max;
    rec.residual_mean = st.mean();
    rec.pass = rec.error.empty() && std::isfinite(st.max) && st.max < rec.tolerance;
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.records.push_back(std::move(rec));
  }

  void conformal_checks() {
    const MetricChart base = make_chart(*cfg_.chart.base);
    const ConformalPair pair = rescale(base, parse_field(cfg_.chart.f));
    check("torsion_law", std::nullopt, "torsion",
          [&](const CPoint& z, Stat& st, json&) { st.add(torsion_transform_residual(pair, z)); });
    for (const auto& [t, s] : cfg_.params_grid) {
      const ConnectionParams P(t, s);
      check("commutation", std::make_pair(t, s), "torsion",
            [&](const CPoint& z, Stat& st, json&) { st.add(commutation_residual(base, pair.f, t, z)); });
      check("conformal_delta", std::make_pair(t, s), "conformal", [&](const CPoint& z, Stat& st, json&) {
        const FrameAtPoint fr = unitary_frame(base, z);
        st.add(max_abs_diff(delta_canonical_predicted(pair, P, z, fr), delta_direct(pair, P, z, fr)));
      });
    }
  }

  const SuiteConfig& cfg_;
  MetricChart chart_;
  std::vector<CPoint> points_;
  Report report_;
};

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

} // namespace

Report run_suite(const SuiteConfig& config) {
  for (const auto& [k, v] : config.tolerances)
    if (!(v > 0.0)) throw ConfigError("tolerance '" + k + "' must be > 0");
  if (config.sample_count < 1) throw ConfigError("sample_count must be >= 1");
  try {
    return Runner(config).run();
  } catch (const InvalidSpec& e) {
    throw ConfigError(e.what());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

json report_to_json(const Report& report, bool timestamps) {
  json recs = json::array();
  for (const auto& r : report.records) {
    json j{{"name", r.name},
           {"chart", r.chart},
           {"params", r.params ? json{{"t", r.params->first}, {"s", r.params->second}} : json(nullptr)},
           {"points", r.points},
           {"residual_max", number_or_string(r.residual_max)},
           {"residual_mean", number_or_string(r.residual_mean)},
           {"tolerance", r.tolerance},
           {"pass", r.pass},
           {"seed", r.seed},
           {"conventions_version", kConventionsVersion}};
    if (!r.extra.empty()) j["extra"] = r.extra;
    if (!r.error.empty()) j["error"] = r.error;
    if (timestamps) j["wall_time_ms"] = r.wall_ms;
    recs.push_back(std::move(j));
  }
  json out{{"schema_version", kSchemaVersion},
           {"conventions_version", kConventionsVersion},
           {"seed", report.seed},
           {"chart", report.chart},
           {"records", recs},
           {"summary", {{"total", report.records.size()}, {"passed", report.passed()}, {"failed", report.failed()}}}};
  if (timestamps) {
    const auto now = std::chrono::system_clock::now();
    out["generated_at_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  }
  return out;
}

std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "name,t,s,points,residual_max,residual_mean,tolerance,pass,seed,conventions_version\n";
  for (const auto& r : report.records) {
    os << r.name << ",";
    if (r.params) os << r.params->first << "," << r.params->second;
    else os << ",";
    os << "," << r.points << "," << r.residual_max << "," << r.residual_mean << "," << r.tolerance << ","
       << (r.pass ? "true" : "false") << "," << r.seed << "," << kConventionsVersion << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- scan

std::vector<double> Range::values() const {
  std::vector<double> v;
  for (int k = 0; k < count; ++k) v.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
  return v;
}

Range parse_range(const std::string& text) {
  Range r;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
    throw ConfigError("range must look like a:b:n, got '" + text + "'");
  if (r.count < 2) throw ConfigError("range resolution must be >= 2");
  return r;
}

std::vector<ScanRow> scan_ts(const ChartSpec& spec, const Range& tr, const Range& sr, int samples, std::uint64_t seed) {
  if (tr.count < 2 || sr.count < 2) throw ConfigError("scan resolution must be >= 2");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  MetricChart chart;
  std::vector<CPoint> pts;
  try {
    chart = make_chart(spec);
    pts = sample_points(spec, samples, seed);
  } catch (const InvalidSpec& e) {
    throw ConfigError(e.what());
  }
  // geometry per point is shared by every grid cell
  std::vector<PointGeometry> geos;
  std::vector<FrameAtPoint> frames;
  for (const auto& z : pts) {
    geos.emplace_back(chart, z);
    frames.push_back(unitary_frame(geos.back().metric()));
  }
  std::vector<ScanRow> rows;
  for (double t : tr.values())
    for (double s : sr.values()) {
      ScanRow row{t, s, 0.0, circle_residual(t, s)};
      for (std::size_t k = 0; k < geos.size(); ++k)
        row.residual = std::max(row.residual, constancy_residual(canonical_curvature(geos[k], {t, s}, frames[k])).residual);
      rows.push_back(row);
    }
  std::sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    return a.t != b.t ? a.t < b.t : a.s < b.s;
  });
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t,s,constancy_residual,circle_residual\n";
  for (const auto& r : rows) os << r.t << "," << r.s << "," << r.residual << "," << r.circle << "\n";
  return os.str();
}

// ---------------------------------------------------------------- dumps

CPoint parse_point(const std::string& text) {
  std::vector<cplx> coords;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ';')) {
    std::istringstream ps(part);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ps >> re)) throw ConfigError("bad point coordinate '" + part + "'");
    if (ps >> comma) {
      if (comma != ',' || !(ps >> im)) throw ConfigError("bad point coordinate '" + part + "'");
    }
    if (!(ps >> std::ws).eof()) throw ConfigError("bad point coordinate '" + part + "'");
    coords.emplace_back(re, im);
  }
  if (coords.empty()) throw ConfigError("empty point");
  return CPoint(std::move(coords));
}

json curv4_metadata(const std::string& chart, const CPoint& z, const ConnectionParams& params, const Curv4& c) {
  json pt = json::array();
  for (const auto& x : z.coords) pt.push_back(complex_to_json(x));
  return json{{"chart", chart},
              {"point", pt},
              {"connection", {{"t", params.t()}, {"s", params.s()}, {"p", params.p()}, {"tag", c.connection}}},
              {"frame", c.frame},
              {"convention", "R[k][l][i][j] = R(e_k, ebar_l, e_i, ebar_j), indices 1-based"},
              {"conventions_version", kConventionsVersion}};
}

json curv4_to_json(const std::string& chart, const CPoint& z, const ConnectionParams& params, const Curv4& c) {
  json j = curv4_metadata(chart, z, params, c);
  json comps = json::array();
  const int n = c.n();
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
          const cplx v = c(k, l, i, jj);
          comps.push_back({k + 1, l + 1, i + 1, jj + 1, v.real(), v.imag()});
        }
  j["columns"] = {"k", "l", "i", "j", "re", "im"};
  j["components"] = comps;
  j["schema_version"] = kSchemaVersion;
  return j;
}

std::string curv4_to_csv(const std::string& chart, const CPoint& z, const ConnectionParams& params, const Curv4& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# " << curv4_metadata(chart, z, params, c).dump() << "\n";
  os << "k,l,i,j,re,im\n";
  const int n = c.n();
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const cplx v = c(k, l, i, j);
          os << k + 1 << "," << l + 1 << "," << i + 1 << "," << j + 1 << "," << v.real() << "," << v.imag() << "\n";
        }
  return os.str();
}

HSCScan hsc_scan(const ChartSpec& spec, const ConnectionParams& params, int samples, std::uint64_t seed,
                 int directions) {
  if (samples < 1) throw ConfigError("samples must be >= 1");
  MetricChart chart;
  std::vector<CPoint> pts;
  try {
    chart = make_chart(spec);
    pts = sample_points(spec, samples, seed);
  } catch (const InvalidSpec& e) {
    throw ConfigError(e.what());
  }
  HSCScan out;
  out.report = hsc_report(chart, params, pts);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;
  for (const auto& z : pts) {
    const PointGeometry geo(chart, z);
    const Curv4 R = canonical_curvature(geo, params, unitary_frame(geo.metric()));
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int d = 0; d < directions; ++d) {
      CVector eta(chart.n());
      for (int i = 0; i < chart.n(); ++i) eta(i) = cplx(gauss(rng), gauss(rng));
      const double h = hsc(R, eta);
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
    out.hsc_min.push_back(lo);
    out.hsc_max.push_back(hi);
  }
  return out;
}

json hsc_scan_to_json(const ChartSpec& spec, const ConnectionParams& params, const HSCScan& scan, std::uint64_t seed) {
  json rows = json::array();
  for (std::size_t k = 0; k < scan.report.samples.size(); ++k) {
    const auto& s = scan.report.samples[k];
    json pt = json::array();
    for (const auto& x : s.point.coords) pt.push_back(complex_to_json(x));
    rows.push_back({{"point", pt},
                    {"c", s.c},
                    {"residual", s.residual},
                    {"hsc_min", scan.hsc_min[k]},
                    {"hsc_max", scan.hsc_max[k]}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"conventions_version", kConventionsVersion},
              {"chart", chart_spec_to_json(spec)},
              {"params", {{"t", params.t()}, {"s", params.s()}}},
              {"seed", seed},
              {"c_mean", scan.report.c_mean},
              {"residual_max", scan.report.residual_max},
              {"samples", rows}};
}

} // namespace hermcurv
