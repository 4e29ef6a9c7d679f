// Acceptance criteria. One line per criterion; exit status is the number of failures.
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "hermcurv/catalog.hpp"
#include "hermcurv/conformal.hpp"
#include "hermcurv/errors.hpp"
#include "hermcurv/oracle.hpp"
#include "support.hpp"

using namespace hermcurv;
using namespace hermcurv::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1. Strominger connection of the standard Hopf metric is flat.
Outcome strominger_flat() {
  const auto spec = ChartSpec::hopf_standard(2);
  const MetricChart chart = make_chart(spec);
  double worst = 0.0;
  for (const auto& z : sample_points(spec, 100, 101)) {
    const PointGeometry geo(chart, z);
    worst = std::max(worst, gauduchon_curvature(geo, -1.0, unitary_frame(geo.metric())).max_abs());
  }
  return {worst < 1e-8, fmt("max |R^-1| = %.3g over 100 points", worst)};
}

// 2. t = 3 on Hopf: zero HSC, non-flat.
Outcome hopf_t3_nonflat() {
  const auto spec = ChartSpec::hopf_standard(2);
  const MetricChart chart = make_chart(spec);
  double res = 0.0, cmax = 0.0, norm = 0.0;
  for (const auto& z : sample_points(spec, 100, 102)) {
    const PointGeometry geo(chart, z);
    const Curv4 R = gauduchon_curvature(geo, 3.0, unitary_frame(geo.metric()));
    const ConstancyResult cr = constancy_residual(R);
    res = std::max(res, cr.residual);
    cmax = std::max(cmax, std::abs(cr.c));
    norm = std::max(norm, R.max_abs());
  }
  const CPoint w{0.0, 1.0};
  const PointGeometry gw(chart, w);
  const double witness = gauduchon_curvature(gw, 3.0, unitary_frame(gw.metric()))(0, 0, 1, 1).real();
  std::ostringstream os;
  os << "residual " << res << ", |c| <= " << cmax << ", max |R^3| = " << norm << ", R_{1 1b 2 2b}(0,1) = " << witness;
  return {res < 1e-8 && cmax < 1e-8 && norm >= 1.0 && std::abs(witness - 4.0) < 1e-8, os.str()};
}

struct CircleRun {
  double t, s;
  double residual_max = 0.0;
  double hsc_err = 0.0;
  double fitted = 0.0;
  std::vector<CPoint> points;
};

CircleRun circle_run(double t, double s) {
  const HopfSpec hs = reference_admissible();
  const auto spec = ChartSpec::admissible(hs);
  const MetricChart chart = make_chart(spec);
  CircleRun run{t, s};
  run.points = sample_points(spec, 50, 103);
  double num = 0.0, den = 0.0;
  for (const auto& z : run.points) {
    const PointGeometry geo(chart, z);
    const ConstancyResult cr = constancy_residual(canonical_curvature(geo, {t, s}, unitary_frame(geo.metric())));
    const double ref = admissible_hsc_reference(hs, z);
    run.residual_max = std::max(run.residual_max, cr.residual);
    run.hsc_err = std::max(run.hsc_err, std::abs(cr.c - ref));
    num += cr.c * ref;
    den += ref * ref;
  }
  run.fitted = num / den;
  return run;
}

const std::vector<std::pair<double, double>> kOnCircle = {{-1, 0}, {3, 0}, {-1, 2}, {0, std::sqrt(3.0)}};
const std::vector<std::pair<double, double>> kOffCircle = {{1, 0}, {0, 0}, {2, 1}};

// 3. Circle law for the admissible metric.
Outcome circle_law() {
  bool ok = true;
  std::ostringstream os;
  for (auto [t, s] : kOnCircle) {
    const CircleRun r = circle_run(t, s);
    const bool pass = r.residual_max < 1e-7 && r.hsc_err < 1e-7 && std::abs(r.fitted - 1.0) < 1e-7;
    ok = ok && pass;
    os << "(" << t << "," << s << ") res " << r.residual_max << " scalar " << r.fitted << "; ";
  }
  for (auto [t, s] : kOffCircle) {
    const CircleRun r = circle_run(t, s);
    ok = ok && r.residual_max > 1e-3;
    os << "(" << t << "," << s << ") res " << r.residual_max << "; ";
  }
  return {ok, os.str()};
}

// 4. Product metric constants.
Outcome product_constants() {
  const auto spec = ChartSpec::fs_bergman();
  const MetricChart chart = make_chart(spec);
  double err = 0.0;
  for (const auto& z : sample_points(spec, 50, 104)) {
    const Curv4 R = lc_curvature(chart, z, unitary_frame(chart, z));
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            cplx expect = 0.0;
            if (k == 0 && l == 0 && i == 0 && j == 0) expect = -1.0;
            if (k == 1 && l == 1 && i == 1 && j == 1) expect = 1.0;
            err = std::max(err, std::abs(R(k, l, i, j) - expect));
          }
  }
  return {err < 1e-8, fmt("max deviation from (-1, 1, 0...) = %.3g", err)};
}

// 5. Self-duality residuals vanish exactly when W- does.
Outcome selfdual_equivalence() {
  std::vector<ChartSpec> bases = catalog_charts();
  bases.push_back(sphere_product());
  bases.push_back(generic_hermitian());
  std::mt19937_64 rng(105);
  int sd_count = 0, nonsd_count = 0, disagree = 0, errors = 0;
  for (int k = 0; k < 200; ++k) {
    ChartSpec spec = bases[static_cast<std::size_t>(k) % bases.size()];
    if ((k / static_cast<int>(bases.size())) % 2 == 1) spec = ChartSpec::conformal(spec, random_real_poly(rng, 2, 0.2));
    try {
      const MetricChart chart = make_chart(spec);
      const CPoint z = sample_points(spec, 1, 1000 + static_cast<std::uint64_t>(k))[0];
      const auto sd = selfdual_residual(chart, z);
      const double w = weyl_minus(chart, z).cwiseAbs().maxCoeff();
      const bool a = std::max({sd[0], sd[1], sd[2]}) < 1e-8;
      const bool b = w < 1e-6;
      (a ? sd_count : nonsd_count)++;
      if (a != b) ++disagree;
    } catch (const Error&) {
      ++errors;
    }
  }
  std::ostringstream os;
  os << sd_count << " self-dual, " << nonsd_count << " not, " << disagree << " disagreements, " << errors << " errors";
  return {disagree == 0 && errors == 0 && sd_count > 0 && nonsd_count > 0, os.str()};
}

// 6. Pointwise constant HSC on the circle implies self-dual.
Outcome constancy_implies_selfdual() {
  const MetricChart chart = make_chart(ChartSpec::admissible(reference_admissible()));
  double worst = 0.0;
  int combos = 0;
  for (auto [t, s] : kOnCircle) {
    const CircleRun r = circle_run(t, s);
    if (!(r.residual_max < 1e-7)) continue;
    ++combos;
    for (const auto& z : r.points) {
      const auto sd = selfdual_residual(chart, z);
      worst = std::max({worst, sd[0], sd[1], sd[2]});
    }
  }
  std::ostringstream os;
  os << combos << " constant combinations, max self-dual residual " << worst;
  return {combos == static_cast<int>(kOnCircle.size()) && worst < 1e-6, os.str()};
}

// 7. Conformal transformation laws.
Outcome conformal_laws() {
  const std::vector<ChartSpec> bases = {ChartSpec::euclidean(2),  ChartSpec::hopf_standard(2),
                                        ChartSpec::fubini_study(2), ChartSpec::fs_bergman(),
                                        generic_hermitian(),        ChartSpec::admissible(reference_admissible())};
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> ut(-2.0, 3.0), us(-2.0, 2.0), ul(-0.5, 0.5);
  double d000 = 0.0, d433 = 0.0, tor = 0.0, comm = 0.0;
  for (int c = 0; c < 20; ++c) {
    const ChartSpec& bspec = bases[static_cast<std::size_t>(c) % bases.size()];
    const MetricChart base = make_chart(bspec);
    std::string f = random_real_poly(rng, 2, 0.25);
    const bool punctured = bspec.kind == ChartSpec::Kind::HopfStandard || bspec.kind == ChartSpec::Kind::Euclidean ||
                           bspec.kind == ChartSpec::Kind::Admissible;
    if (punctured && c % 2 == 0) f = with_log_term(f, ul(rng), 2);
    const ConformalPair pair = rescale(base, parse_field(f));
    const double t = ut(rng), s = us(rng);
    const ChartSpec sample_spec = bspec.kind == ChartSpec::Kind::Euclidean ? ChartSpec::hopf_standard(2) : bspec;
    for (const auto& z : sample_points(sample_spec, 5, 2000 + static_cast<std::uint64_t>(c))) {
      const FrameAtPoint fr = unitary_frame(base, z);
      d000 = std::max(d000, max_abs_diff(delta_gauduchon_predicted(pair, t, z, fr), delta_direct(pair, {t, 0.0}, z, fr)));
      d433 = std::max(d433, max_abs_diff(delta_canonical_predicted(pair, {t, s}, z, fr), delta_direct(pair, {t, s}, z, fr)));
      tor = std::max(tor, torsion_transform_residual(pair, z));
      comm = std::max(comm, commutation_residual(base, pair.f, t, z));
    }
  }
  std::ostringstream os;
  os << "gauduchon delta " << d000 << ", canonical delta " << d433 << ", torsion " << tor << ", commutation " << comm;
  return {d000 < 1e-7 && d433 < 1e-7 && tor < 1e-8 && comm < 1e-8, os.str()};
}

// 8. Interpolation identities.
Outcome interpolation() {
  const std::vector<double> ts = {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0};
  const std::vector<double> ss = {-1.0, 0.5, 2.0};
  double id = 0.0, kahler = 0.0;
  std::uint64_t seed = 108;
  for (const auto& spec : catalog_charts()) {
    const MetricChart chart = make_chart(spec);
    for (const auto& z : sample_points(spec, 50, seed++)) {
      const PointGeometry geo(chart, z);
      const FrameAtPoint fr = unitary_frame(geo.metric());
      const Curv4 lc = lc_curvature(geo, fr);
      id = std::max(id, max_abs_diff(gauduchon_curvature(geo, 1.0, fr), chern_curvature(geo, fr)));
      for (double t : ts) {
        const Curv4 gt = gauduchon_curvature(geo, t, fr);
        id = std::max(id, max_abs_diff(canonical_curvature(geo, {t, 0.0}, fr), gt));
        id = std::max(id, max_abs_diff(canonical_curvature(geo, {t, 1.0}, fr), lc));
        if (is_kahler(spec)) {
          kahler = std::max(kahler, max_abs_diff(gt, lc));
          for (double s : ss) kahler = std::max(kahler, max_abs_diff(canonical_curvature(geo, {t, s}, fr), lc));
        }
      }
    }
  }
  std::ostringstream os;
  os << "identities " << id << ", Kahler family spread " << kahler;
  return {id < 1e-10 && kahler < 1e-9, os.str()};
}

// 9. Oracle agreement.
Outcome oracles() {
  double lc = 0.0;
  for (const auto& spec : {ChartSpec::hopf_standard(2), ChartSpec::fs_bergman()}) {
    const MetricChart chart = make_chart(spec);
    for (const auto& z : sample_points(spec, 20, 109)) {
      const FrameAtPoint fr = unitary_frame(chart, z);
      lc = std::max(lc, max_abs_diff(lc_curvature(chart, z, fr), real_curvature_oracle(chart, z).mixed(fr)));
    }
  }
  double jet = 0.0;
  std::uint64_t seed = 1109;
  for (const auto& spec : catalog_charts()) {
    const MetricChart chart = make_chart(spec);
    for (const auto& z : sample_points(spec, 50, seed++))
      for (const auto& g : chart.components()) {
        const WJet2 a = eval_jet(g, z);
        jet = std::max(jet, max_abs_diff(a, fd_jet(g, z, 1e-4)) / std::max(1.0, max_abs(a)));
      }
  }
  std::ostringstream os;
  os << "curvature oracle " << lc << ", jet oracle (relative) " << jet;
  return {lc < 1e-5 && jet < 1e-5, os.str()};
}

// 10. Complex space forms, with the measured constants frozen.
Outcome space_forms() {
  struct Form {
    ChartSpec spec;
    double c;
  };
  const std::vector<Form> forms = {{ChartSpec::fubini_study(2), 2.0}, {ChartSpec::complex_hyperbolic(2), -2.0}};
  double res = 0.0, spread = 0.0, off = 0.0;
  bool signs = true;
  for (const auto& f : forms) {
    const MetricChart chart = make_chart(f.spec);
    const auto pts = sample_points(f.spec, 20, 110);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        const ConnectionParams P(-2.0 + 1.5 * a, -2.0 + 1.0 * b);
        double lo = 1e300, hi = -1e300;
        for (const auto& z : pts) {
          const PointGeometry geo(chart, z);
          const ConstancyResult cr = constancy_residual(canonical_curvature(geo, P, unitary_frame(geo.metric())));
          res = std::max(res, cr.residual);
          lo = std::min(lo, cr.c);
          hi = std::max(hi, cr.c);
          off = std::max(off, std::abs(cr.c - f.c));
        }
        spread = std::max(spread, hi - lo);
        signs = signs && (f.c > 0 ? lo > 0 : hi < 0);
      }
  }
  std::ostringstream os;
  os << "residual " << res << ", per-grid c spread " << spread << ", |c - frozen| " << off << " (FS 2, CH -2)";
  return {res < 1e-7 && spread < 1e-7 && off < 1e-7 && signs, os.str()};
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"strominger flatness of the Hopf metric", strominger_flat},
      {"t=3 Hopf: zero HSC, non-flat", hopf_t3_nonflat},
      {"admissible circle law", circle_law},
      {"product metric constants", product_constants},
      {"self-duality residuals <=> W-", selfdual_equivalence},
      {"constant HSC implies self-dual", constancy_implies_selfdual},
      {"conformal laws", conformal_laws},
      {"interpolation identities", interpolation},
      {"oracle agreement", oracles},
      {"complex space forms", space_forms},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
