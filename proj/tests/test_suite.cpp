#include <doctest.h>

#include <cmath>

#include "hermcurv/errors.hpp"
#include "hermcurv/suite.hpp"
#include "support.hpp"

using namespace hermcurv;
using namespace hermcurv::testing;
using nlohmann::json;

namespace {

const CheckRecord* find(const Report& r, const std::string& name, std::pair<double, double> p) {
  for (const auto& rec : r.records)
    if (rec.name == name && rec.params && *rec.params == p) return &rec;
  return nullptr;
}

const CheckRecord* find(const Report& r, const std::string& name) {
  for (const auto& rec : r.records)
    if (rec.name == name) return &rec;
  return nullptr;
}

} // namespace

TEST_CASE("config parsing") {
  const SuiteConfig c = suite_config_from_json(json::parse(R"({
    "chart": {"chart": "admissible", "n": 2, "a": 0.5, "A": [[0.2, 0], [0, [0.1, 0]]]},
    "params_grid": [[-1, 0], {"t": 3, "s": 0}],
    "sample_count": 7, "seed": 11,
    "tolerances": {"constancy": 1e-6},
    "output": {"path": "out.csv", "format": "csv"}})"));
  CHECK(c.chart.kind == ChartSpec::Kind::Admissible);
  CHECK(std::abs(c.chart.hopf.A(1, 1) - 0.1) < 1e-15);
  REQUIRE(c.params_grid.size() == 2);
  CHECK(c.params_grid[1] == std::pair<double, double>{3.0, 0.0});
  CHECK(c.sample_count == 7);
  CHECK(c.seed == 11);
  CHECK(c.tolerances.at("constancy") == 1e-6);
  CHECK(c.tolerances.at("formula") == default_tolerances().at("formula"));
  CHECK(c.output_path == "out.csv");
  CHECK(c.format == "csv");

  const SuiteConfig d = suite_config_from_json(json::parse(R"({"chart": "hopf_standard", "grid": [[0, 0]], "samples": 3})"));
  CHECK(d.chart.kind == ChartSpec::Kind::HopfStandard);
  CHECK(d.sample_count == 3);

  const char* bad[] = {
      R"([])",
      R"({})",
      R"({"chart": "nope"})",
      R"({"chart": {"n": 2}})",
      R"({"chart": "euclidean", "params_grid": []})",
      R"({"chart": "euclidean", "params_grid": [[1]]})",
      R"({"chart": "euclidean", "sample_count": 0})",
      R"({"chart": "euclidean", "sample_count": "many"})",
      R"({"chart": "euclidean", "tolerances": {"bogus": 1e-3}})",
      R"({"chart": "euclidean", "tolerances": {"formula": -1}})",
      R"({"chart": "euclidean", "output": {"format": "xml"}})",
      R"({"chart": {"chart": "euclidean", "n": 0}})",
      R"({"chart": {"chart": "conformal", "f": "0"}})",
      R"({"chart": {"chart": "inline", "n": 1}})",
      R"({"chart": {"chart": "admissible", "A": [[0.1]]}})",
  };
  for (const char* b : bad) CHECK_THROWS_AS(suite_config_from_json(json::parse(b)), ConfigError);
}

TEST_CASE("chart spec JSON round trip") {
  std::vector<ChartSpec> specs = catalog_charts();
  specs.push_back(generic_hermitian());
  specs.push_back(ChartSpec::conformal(ChartSpec::hopf_standard(2, 0.3), "(* 0.1 z1 zb1)"));
  HopfSpec tw = reference_admissible();
  tw.c0 = 2.5;
  specs.push_back(ChartSpec::admissible(tw));
  for (const auto& s : specs) {
    const json j = chart_spec_to_json(s);
    const ChartSpec back = chart_spec_from_json(j);
    CHECK(chart_spec_to_json(back) == j);
    CHECK(describe(back) == describe(s));
  }
}

TEST_CASE("suite on the flat chart") {
  SuiteConfig c;
  c.chart = ChartSpec::euclidean(2);
  c.params_grid = {{-1, 0}, {0, 0}, {1, 0}, {3, 0}, {0.5, 0.5}};
  c.sample_count = 5;
  const Report r = run_suite(c);
  CHECK(r.all_pass());
  CHECK(r.failed() == 0);
  CHECK(r.passed() == static_cast<int>(r.records.size()));
  CHECK(find(r, "jet_oracle") != nullptr);
  CHECK(find(r, "selfdual_weyl_equivalence") != nullptr);
  for (const auto& rec : r.records) CHECK(rec.error.empty());
}

TEST_CASE("suite on Hopf") {
  SuiteConfig c;
  c.chart = ChartSpec::hopf_standard(2);
  c.params_grid = {{-1, 0}, {3, 0}, {0, 0}};
  c.sample_count = 10;
  c.seed = 5;
  const Report r = run_suite(c);
  for (auto p : {std::pair<double, double>{-1, 0}, {3, 0}}) {
    const CheckRecord* k = find(r, "constancy", p);
    REQUIRE(k != nullptr);
    CHECK(k->pass);
    CHECK(std::abs(k->extra.at("c_mean").get<double>()) < 1e-8);
    CHECK(find(r, "formula_vs_direct", p)->pass);
  }
  const CheckRecord* bad = find(r, "constancy", {0, 0});
  REQUIRE(bad != nullptr);
  CHECK_FALSE(bad->pass);
  CHECK(bad->residual_max > 1e-2);
  CHECK(r.failed() == 1);
}

TEST_CASE("suite on a conformal chart") {
  SuiteConfig c;
  c.chart = ChartSpec::conformal(ChartSpec::fubini_study(2), "(* 0.1 (+ z1 zb1))");
  c.params_grid = {{0, 0}, {1, 0.5}};
  c.sample_count = 4;
  const Report r = run_suite(c);
  for (const char* name : {"torsion_law", "commutation", "conformal_delta"}) {
    const CheckRecord* k = find(r, name);
    REQUIRE(k != nullptr);
    CHECK(k->pass);
  }
}

TEST_CASE("report serialization") {
  SuiteConfig c;
  c.chart = ChartSpec::euclidean(2);
  c.sample_count = 2;
  const Report r = run_suite(c);
  const json a = report_to_json(r, false);
  const json b = report_to_json(run_suite(c), false);
  CHECK(a == b);
  CHECK(a.at("schema_version") == kSchemaVersion);
  CHECK(a.at("conventions_version") == kConventionsVersion);
  CHECK_FALSE(a.contains("generated_at_unix"));
  CHECK_FALSE(a.at("records")[0].contains("wall_time_ms"));
  const json t = report_to_json(r, true);
  CHECK(t.contains("generated_at_unix"));
  CHECK(t.at("records")[0].contains("wall_time_ms"));
  CHECK(a.at("summary").at("total") == r.records.size());

  const std::string csv = report_to_csv(r);
  CHECK(csv.rfind("name,t,s,points,residual_max", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.records.size()) + 1);
}

TEST_CASE("ranges and points") {
  const Range r = parse_range("-1:3:5");
  CHECK(r.values() == std::vector<double>{-1, 0, 1, 2, 3});
  for (const char* b : {"1:2", "a:b:3", "0:1:1", "0:1:x"}) CHECK_THROWS_AS(parse_range(b), ConfigError);

  const CPoint z = parse_point("1,0.5;-2");
  REQUIRE(z.dim() == 2);
  CHECK(z[0] == cplx(1.0, 0.5));
  CHECK(z[1] == cplx(-2.0, 0.0));
  for (const char* b : {"", "1,", "1;x", "1,2,3"}) CHECK_THROWS_AS(parse_point(b), ConfigError);
}

TEST_CASE("parameter scans") {
  const auto flat = scan_ts(ChartSpec::euclidean(2), parse_range("-1:3:4"), parse_range("0:2:3"), 3, 1);
  REQUIRE(flat.size() == 12);
  for (std::size_t k = 1; k < flat.size(); ++k)
    CHECK((flat[k - 1].t < flat[k].t || (flat[k - 1].t == flat[k].t && flat[k - 1].s < flat[k].s)));
  for (const auto& row : flat) {
    CHECK(std::isfinite(row.residual));
    CHECK(row.residual < 1e-10);
    CHECK(row.circle == circle_residual(row.t, row.s));
  }

  const auto adm = scan_ts(ChartSpec::admissible(reference_admissible()), parse_range("-1:3:5"), parse_range("0:2:3"), 6, 2);
  REQUIRE(adm.size() == 15);
  for (const auto& row : adm) {
    CHECK(std::isfinite(row.residual));
    if (std::abs(row.circle) < 1e-12) CHECK(row.residual < 1e-7);
    else CHECK(row.residual > 1e-3);
  }
  const std::string csv = scan_to_csv(adm);
  CHECK(csv.rfind("t,s,constancy_residual,circle_residual\n", 0) == 0);
  CHECK_THROWS_AS(scan_ts(ChartSpec::euclidean(2), parse_range("0:1:2"), parse_range("0:1:2"), 0, 1), ConfigError);
}

TEST_CASE("curvature dumps") {
  const CPoint z{0.0, 1.0};
  const MetricChart hopf = make_chart(ChartSpec::hopf_standard(2));
  const Curv4 R = gauduchon_curvature(hopf, 3.0, z, unitary_frame(hopf, z));
  const json j = curv4_to_json("hopf_standard", z, {3.0, 0.0}, R);
  CHECK(j.at("components").size() == 16);
  CHECK(j.at("schema_version") == kSchemaVersion);
  const std::string csv = curv4_to_csv("hopf_standard", z, {3.0, 0.0}, R);
  const auto first = csv.substr(0, csv.find('\n'));
  REQUIRE(first.rfind("# ", 0) == 0);
  const json meta = json::parse(first.substr(2));
  CHECK(meta == curv4_metadata("hopf_standard", z, {3.0, 0.0}, R));
  const auto rest = csv.substr(csv.find('\n') + 1);
  CHECK(rest.rfind("k,l,i,j,re,im\n", 0) == 0);
  CHECK(rest.find("\n1,1,2,2,4,0") != std::string::npos);
}

TEST_CASE("HSC scans") {
  const auto spec = ChartSpec::admissible(reference_admissible());
  const HSCScan s = hsc_scan(spec, {-1.0, 0.0}, 5, 3);
  REQUIRE(s.report.samples.size() == 5);
  REQUIRE(s.hsc_min.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(s.hsc_max[k] - s.hsc_min[k] < 1e-8);
    CHECK(std::abs(s.hsc_min[k] - s.report.samples[k].c) < 1e-8);
  }
  const json j = hsc_scan_to_json(spec, {-1.0, 0.0}, s, 3);
  CHECK(j.at("seed") == 3);
  CHECK_THROWS_AS(hsc_scan(spec, {-1.0, 0.0}, 0, 3), ConfigError);
}
