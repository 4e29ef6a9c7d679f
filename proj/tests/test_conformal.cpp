#include <doctest.h>

#include <random>

#include "hermcurv/catalog.hpp"
#include "hermcurv/conformal.hpp"
#include "hermcurv/errors.hpp"
#include "support.hpp"

using namespace hermcurv;
using namespace hermcurv::testing;

namespace {

double metric_gap(const MetricChart& a, const MetricChart& b, const CPoint& z) {
  return (metric_jet(a, z).G - metric_jet(b, z).G).cwiseAbs().maxCoeff();
}

const char* kHopfFactor = "(* -0.5 (log (+ (* z1 zb1) (* z2 zb2))))";
const char* kAdmissibleFactor =
    "(* -0.5 (log (+ (* z1 zb1) (* z2 zb2) (* 0.2 (pow z1 2)) (* 0.2 (pow zb1 2)) (* 0.1 (pow z2 2)) "
    "(* 0.1 (pow zb2 2)))))";

} // namespace

TEST_CASE("zero conformal factor") {
  for (const auto& spec : {ChartSpec::hopf_standard(2), generic_hermitian()}) {
    const MetricChart base = make_chart(spec);
    const ConformalPair pair = rescale(base, parse_field("0"));
    for (const auto& z : sample_points(spec, 5, 201)) {
      CHECK(metric_gap(base, pair.rescaled, z) == 0.0);
      const FrameAtPoint fr = unitary_frame(base, z);
      CHECK(torsion_transform_residual(pair, z) < 1e-12);
      for (double t : {-1.0, 0.0, 3.0}) {
        CHECK(delta_direct(pair, {t, 0.0}, z, fr).max_abs() < 1e-12);
        CHECK(delta_gauduchon_predicted(pair, t, z, fr).max_abs() < 1e-12);
      }
    }
  }
}

TEST_CASE("flat rescalings reproduce the Hopf charts") {
  const MetricChart flat = make_chart(ChartSpec::euclidean(2));
  const auto hopf_spec = ChartSpec::hopf_standard(2);
  const ConformalPair hopf = rescale(flat, parse_field(kHopfFactor));
  for (const auto& z : sample_points(hopf_spec, 20, 202)) CHECK(metric_gap(hopf.rescaled, make_chart(hopf_spec), z) < 1e-12);

  const auto adm_spec = ChartSpec::admissible(reference_admissible());
  const ConformalPair adm = rescale(flat, parse_field(kAdmissibleFactor));
  for (const auto& z : sample_points(adm_spec, 20, 203)) CHECK(metric_gap(adm.rescaled, make_chart(adm_spec), z) < 1e-12);

  const CPoint z{1.0, 0.0};
  const FrameAtPoint fr = unitary_frame(flat, z);
  const Torsion3 T = chern_torsion(hopf.rescaled, z, paired_frame(hopf, z, fr));
  CHECK(std::abs(T(1, 0, 1) + 0.5) < 1e-12);
  CHECK(std::abs(T(1, 1, 0) - 0.5) < 1e-12);
}

TEST_CASE("torsion transformation law") {
  std::mt19937_64 rng(204);
  for (const auto& spec : {ChartSpec::euclidean(2), ChartSpec::hopf_standard(2), ChartSpec::fubini_study(2), generic_hermitian()}) {
    const MetricChart base = make_chart(spec);
    for (int k = 0; k < 4; ++k) {
      const ConformalPair pair = rescale(base, parse_field(random_real_poly(rng, 2)));
      for (const auto& z : sample_points(spec, 3, 205 + static_cast<std::uint64_t>(k)))
        CHECK(torsion_transform_residual(pair, z) < 1e-9);
    }
  }
  const ConformalPair fs = rescale(make_chart(ChartSpec::fubini_study(2)), parse_field("(* 0.05 (+ z1 zb1))"));
  for (const auto& z : sample_points(ChartSpec::fubini_study(2), 10, 206)) CHECK(torsion_transform_residual(fs, z) < 1e-10);
}

TEST_CASE("Gauduchon conformal law") {
  std::mt19937_64 rng(207);
  for (const auto& spec : {ChartSpec::euclidean(2), ChartSpec::hopf_standard(2), ChartSpec::fs_bergman(), generic_hermitian()}) {
    const MetricChart base = make_chart(spec);
    for (int k = 0; k < 3; ++k) {
      std::string f = random_real_poly(rng, 2);
      if (spec.kind == ChartSpec::Kind::HopfStandard) f = with_log_term(f, 0.3, 2);
      const ConformalPair pair = rescale(base, parse_field(f));
      for (const auto& z : sample_points(spec, 3, 208 + static_cast<std::uint64_t>(k))) {
        const FrameAtPoint fr = unitary_frame(base, z);
        for (double t : {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
          const Curv4 d = delta_direct(pair, {t, 0.0}, z, fr);
          CHECK(max_abs_diff(d, delta_gauduchon_predicted(pair, t, z, fr)) < 1e-8);
          CHECK(max_abs_diff(d, delta_canonical_predicted(pair, {t, 0.0}, z, fr)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("Gauduchon law does not depend on the frame") {
  std::mt19937_64 rng(209);
  const auto spec = generic_hermitian();
  const MetricChart base = make_chart(spec);
  const ConformalPair pair = rescale(base, parse_field(random_real_poly(rng, 2)));
  for (const auto& z : sample_points(spec, 4, 210)) {
    const FrameAtPoint fr = unitary_frame(base, z).rotated(random_unitary(rng, 2));
    for (double t : {-1.0, 0.0, 3.0})
      CHECK(max_abs_diff(delta_direct(pair, {t, 0.0}, z, fr), delta_gauduchon_predicted(pair, t, z, fr)) < 1e-8);
  }
}

TEST_CASE("canonical conformal law") {
  std::mt19937_64 rng(211);
  const MetricChart flat = make_chart(ChartSpec::euclidean(2));
  const ConformalPair adm = rescale(flat, parse_field(kAdmissibleFactor));
  for (const auto& z : sample_points(ChartSpec::admissible(reference_admissible()), 10, 212)) {
    const FrameAtPoint fr = unitary_frame(flat, z);
    CHECK(max_abs_diff(delta_direct(adm, {-1.0, 2.0}, z, fr), delta_canonical_predicted(adm, {-1.0, 2.0}, z, fr)) < 1e-8);
  }
  for (const auto& spec : {ChartSpec::hopf_standard(2), generic_hermitian()}) {
    const MetricChart base = make_chart(spec);
    const ConformalPair pair = rescale(base, parse_field(random_real_poly(rng, 2)));
    for (const auto& z : sample_points(spec, 3, 213)) {
      const FrameAtPoint fr = unitary_frame(base, z);
      for (auto [t, s] : std::vector<std::pair<double, double>>{{0.0, 0.5}, {1.0, 1.0}, {3.0, -0.5}, {-1.0, 2.0}, {0.5, 0.25}})
        CHECK(max_abs_diff(delta_direct(pair, {t, s}, z, fr), delta_canonical_predicted(pair, {t, s}, z, fr)) < 1e-8);
    }
  }
}

TEST_CASE("constant conformal factor") {
  const auto spec = generic_hermitian();
  const MetricChart base = make_chart(spec);
  const ConformalPair pair = rescale(base, parse_field("0.7"));
  for (const auto& z : sample_points(spec, 5, 214)) {
    const FrameAtPoint fr = unitary_frame(base, z);
    CHECK(torsion_transform_residual(pair, z) < 1e-12);
    for (double t : {-1.0, 1.0, 3.0}) {
      CHECK(delta_direct(pair, {t, 0.3}, z, fr).max_abs() < 1e-10);
      CHECK(delta_canonical_predicted(pair, {t, 0.3}, z, fr).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("Kahler base") {
  const ConformalPair flat = rescale(make_chart(ChartSpec::euclidean(2)), parse_field("(+ (* 0.3 z1 zb1) (* 0.1 (+ (pow z2 2) (pow zb2 2))) (* 0.2 z1 zb2) (* 0.2 zb1 z2))"));
  const ConformalPair fs = rescale(make_chart(ChartSpec::fubini_study(2)), parse_field("(* 0.2 (+ (* z1 zb2) (* zb1 z2) (pow z1 2) (pow zb1 2)))"));
  for (const auto* pair : {&flat, &fs}) {
    for (const auto& z : sample_points(ChartSpec::euclidean(2), 5, 215)) {
      const FrameAtPoint fr = unitary_frame(pair->base, z);
      for (auto [t, s] : std::vector<std::pair<double, double>>{{3.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {-1.0, 2.0}, {0.5, 0.5}}) {
        const Curv4 measured = symmetrize(delta_direct(*pair, {t, s}, z, fr));
        const Curv4 k = delta_kahler_predicted(*pair, {t, s}, z);
        CHECK(max_abs_diff(measured, k) < 1e-8);
        if (s == 0.0) CHECK(max_abs_diff(k, delta_kahler_predicted_gauduchon(*pair, t, z)) < 1e-14);
      }
    }
  }
  const ConformalPair hopf = rescale(make_chart(ChartSpec::hopf_standard(2)), parse_field("0"));
  CHECK_THROWS_AS(delta_kahler_predicted(hopf, {1.0, 0.0}, CPoint{1.0, 0.0}), BaseNotKahler);
  CHECK_THROWS_AS(delta_kahler_predicted_gauduchon(hopf, 1.0, CPoint{1.0, 0.0}), BaseNotKahler);
}

TEST_CASE("Hessian commutation") {
  std::mt19937_64 rng(216);
  for (const auto& spec : {ChartSpec::euclidean(2), ChartSpec::fubini_study(2), ChartSpec::hopf_standard(2), generic_hermitian()}) {
    const MetricChart base = make_chart(spec);
    const ScalarField f = parse_field(random_real_poly(rng, 2));
    for (const auto& z : sample_points(spec, 4, 217))
      for (double t : {-1.0, 0.0, 1.0, 3.0}) CHECK(commutation_residual(base, f, t, z) < 1e-10);
  }
  const MetricChart flat = make_chart(ChartSpec::euclidean(2));
  const ScalarField f = parse_field("(* (+ z1 zb1) (+ z2 zb2))");
  const PointGeometry geo(flat, CPoint{0.3, cplx(0.1, 0.2)});
  const MixedHessian h = mixed_hessian(geo, eval_jet(f, geo.point()), 0.0, unitary_frame(geo.metric()));
  CHECK((h.k_lbar - h.lbar_k.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(h.k_lbar(0, 1) - 1.0) < 1e-14);
  CHECK(std::abs(h.k_lbar(0, 0)) < 1e-14);
}

TEST_CASE("non-real conformal factor") {
  const MetricChart flat = make_chart(ChartSpec::euclidean(2));
  CHECK_THROWS_AS(rescale(flat, parse_field("z1")), NonRealConformalFactor);
  CHECK_THROWS_AS(rescale(flat, parse_field("[0, 1]")), NonRealConformalFactor);
  CHECK_THROWS_AS(conformal_factor_jet(parse_field("(* z1 z2)"), CPoint{1.0, kI}), NonRealConformalFactor);
  CHECK_NOTHROW(rescale(flat, parse_field("(* z1 zb1)")));
}

TEST_CASE("rescaled chart metadata") {
  const MetricChart fs = make_chart(ChartSpec::fubini_study(2));
  const ConformalPair pair = rescale(fs, parse_field("(* 0.1 z1 zb1)"));
  CHECK(pair.rescaled.n() == 2);
  CHECK(pair.rescaled.label().find("e^{2f}") == 0);
  const MetricChart ch = make_chart(ChartSpec::complex_hyperbolic(2));
  const ConformalPair pc = rescale(ch, parse_field("(log (+ 2 (* z1 zb1)))"));
  CHECK(pc.rescaled.domain().contains(CPoint{0.5, 0.0}));
  CHECK_FALSE(pc.rescaled.domain().contains(CPoint{1.5, 0.0}));
}
