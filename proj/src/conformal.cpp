#include "hermcurv/conformal.hpp"

#include <cmath>

#include "hermcurv/errors.hpp"

namespace hermcurv {

namespace {

void require_real(cplx v, const CPoint& z) {
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
    std::string where;
    for (int i = 0; i < z.dim(); ++i)
      where += (i ? ";" : "") + std::to_string(z[i].real()) + "," + std::to_string(z[i].imag());
    throw NonRealConformalFactor("conformal factor has imaginary part " + std::to_string(v.imag()) + " at " + where);
  }
}

std::vector<CPoint> probe_points(int n, const Domain& dom) {
  double scale = 1.0;
  for (const auto& c : dom.constraints)
    if (std::isfinite(c.hi)) scale = std::min(scale, c.hi);
  std::vector<CPoint> pts;
  for (int k = 0; k < 8; ++k) {
    const double r = scale * (0.25 + 0.09 * k);
    CPoint z(std::vector<cplx>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) z[i] = std::polar(r / std::sqrt(static_cast<double>(n)), 0.7 * k + 1.3 * i + 0.2);
    if (dom.contains(z)) pts.push_back(z);
  }
  return pts;
}

struct Ingredients {
  FrameGradient g;
  CMatrix fkl; // fkl(k, l) = f_{k lbar}
  CArray<3> T;
  cplx fr = 0.0;
};

Ingredients ingredients(const ConformalPair& pair, double p, const CPoint& z, const FrameAtPoint& frame) {
  const PointGeometry geo(pair.base, z);
  const WJet2 fj = conformal_factor_jet(pair.f, z);
  Ingredients in;
  in.g = frame_gradient(fj, frame);
  in.fkl = mixed_hessian(geo, fj, p, frame).k_lbar;
  in.T = chern_torsion(geo, frame).T;
  in.fr = (in.g.d.array() * in.g.dbar.array()).sum(); // sum_r f_r f_rbar
  return in;
}

Curv4 assemble_gauduchon_law(const Ingredients& in, double p, int n) {
  const CVector& fi = in.g.d;
  const CVector& fib = in.g.dbar;
  const CArray<3>& T = in.T;
  const double q = 1.0 - p;
  Curv4 out(n, "predicted delta");
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cplx frTkl = 0.0, fbTjk = 0.0, frTkj = 0.0;
          for (int r = 0; r < n; ++r) {
            frTkl += fi(r) * std::conj(T(k, r, l));
            fbTjk += fib(r) * T(j, r, k);
            frTkj += fi(r) * std::conj(T(k, r, j));
          }
          cplx v = -2.0 * p * in.fkl(k, l) * double(kron(i, j)) + 2.0 * p * q * frTkl * double(kron(i, j)) -
                   q * (in.fkl(i, l) * double(kron(j, k)) + in.fkl(k, j) * double(kron(i, l)));
          v += q * q *
               (fi(i) * std::conj(T(k, j, l)) - fbTjk * double(kron(i, l)) + frTkj * double(kron(i, l)) +
                fib(j) * T(l, i, k) - in.fr * double(kron(j, k) * kron(i, l)) + fi(i) * fib(j) * double(kron(k, l)));
          out(k, l, i, j) = v;
        }
  return out;
}

void add_s_blocks(Curv4& out, const Ingredients& in, double s) {
  const int n = out.n();
  const CVector& fi = in.g.d;
  const CVector& fib = in.g.dbar;
  const CArray<3>& T = in.T;
  const double s2 = s * s;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cplx fbTli = 0.0, frTkj = 0.0;
          for (int r = 0; r < n; ++r) {
            fbTli += fib(r) * T(l, r, i);
            frTkj += fi(r) * std::conj(T(k, r, j));
          }
          const cplx b1 = fi(i) * fib(l) * double(kron(j, k)) + fib(j) * fi(k) * double(kron(i, l)) -
                          fi(i) * fib(j) * double(kron(k, l)) - in.fr * double(kron(j, k) * kron(i, l));
          const cplx b2 = fi(i) * std::conj(T(k, l, j)) - fib(j) * T(l, i, k) - fbTli * double(kron(j, k)) -
                          frTkj * double(kron(i, l));
          out(k, l, i, j) += s2 * (b1 + b2);
        }
}

Curv4 assemble_kahler(const Ingredients& in, double kappa, int n) {
  const CVector& fi = in.g.d;
  const CVector& fib = in.g.dbar;
  const CMatrix& h = in.fkl;
  Curv4 out(n, "predicted symmetrized delta");
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double djk = kron(j, k), dij = kron(i, j), dkl = kron(k, l), dil = kron(i, l);
          out(k, l, i, j) = -0.5 * (h(i, l) * djk + h(k, l) * dij + h(i, j) * dkl + h(k, j) * dil) +
                            0.25 * kappa *
                                (fi(i) * fib(j) * dkl + fi(k) * fib(j) * dil + fi(i) * fib(l) * djk +
                                 fi(k) * fib(l) * dij) -
                            0.5 * kappa * in.fr * (dkl * dij + djk * dil);
        }
  return out;
}

void require_kahler_base(const ConformalPair& pair, const CPoint& z, const FrameAtPoint& frame) {
  const double tor = chern_torsion(pair.base, z, frame).T.max_abs();
  if (tor > 1e-10) throw BaseNotKahler("base chart '" + pair.base.label() + "' has torsion " + std::to_string(tor));
}

} // namespace

ConformalPair rescale(const MetricChart& chart, const ScalarField& f) {
  const Domain dom = chart.domain().intersect(f.domain());
  for (const auto& z : probe_points(chart.n(), dom)) {
    cplx v;
    try {
      v = eval_value(f, z);
    } catch (const DomainError&) {
      continue;
    }
    require_real(v, z);
  }
  const ScalarField e2f = exp(ScalarField::constant(2.0) * f);
  std::vector<ScalarField> comps;
  comps.reserve(chart.components().size());
  for (const auto& g : chart.components()) comps.push_back((e2f * g).with_domain(dom));
  return ConformalPair{chart, f, MetricChart(chart.n(), std::move(comps), dom, "e^{2f}*" + chart.label())};
}

WJet2 conformal_factor_jet(const ScalarField& f, const CPoint& z) {
  WJet2 j = eval_jet(f, z);
  require_real(j.value, z);
  return j;
}

FrameAtPoint paired_frame(const ConformalPair& pair, const CPoint& z, const FrameAtPoint& base_frame) {
  const double f = conformal_factor_jet(pair.f, z).value.real();
  return base_frame.scaled(std::exp(-f));
}

FrameGradient frame_gradient(const WJet2& fj, const FrameAtPoint& frame) {
  return FrameGradient{frame.E.transpose() * fj.d(), frame.E.adjoint() * fj.dbar()};
}

MixedHessian mixed_hessian(const PointGeometry& geo, const WJet2& fj, double t, const FrameAtPoint& frame) {
  const int n = geo.n();
  const ConnectionCoeffs cc = geo.connection(ConnectionParams(t, 0.0));
  auto df = [&](int C) { return C < n ? fj.d(C) : fj.dbar(C - n); };
  CMatrix hk(n, n), hl(n, n); // coordinate versions, indexed (a, b) with a holomorphic, b antiholomorphic
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx ck = 0.0, cl = 0.0;
      for (int C = 0; C < 2 * n; ++C) {
        ck += cc.omega(C, n + b, a) * df(C);
        cl += cc.omega(C, a, n + b) * df(C);
      }
      hk(a, b) = fj.ddbar(a, b) - ck;
      hl(a, b) = fj.ddbar(a, b) - cl;
    }
  MixedHessian out;
  out.k_lbar = frame.E.transpose() * hk * frame.E.conjugate();
  out.lbar_k = (frame.E.transpose() * hl * frame.E.conjugate()).transpose();
  return out;
}

double torsion_transform_residual(const ConformalPair& pair, const CPoint& z) {
  const int n = pair.base.n();
  const FrameAtPoint frame = unitary_frame(pair.base, z);
  const WJet2 fj = conformal_factor_jet(pair.f, z);
  const FrameGradient g = frame_gradient(fj, frame);
  const Torsion3 T = chern_torsion(pair.base, z, frame);
  const Torsion3 Tt = chern_torsion(pair.rescaled, z, paired_frame(pair, z, frame));
  const double ef = std::exp(-fj.value.real());
  double res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const cplx pred = ef * (T(i, j, k) + g.d(j) * double(kron(i, k)) - g.d(k) * double(kron(i, j)));
        res = std::max(res, std::abs(Tt(i, j, k) - pred));
      }
  return res;
}

Curv4 delta_gauduchon_predicted(const ConformalPair& pair, double t, const CPoint& z, const FrameAtPoint& frame) {
  return assemble_gauduchon_law(ingredients(pair, t, z, frame), t, pair.base.n());
}

Curv4 delta_canonical_predicted(const ConformalPair& pair, const ConnectionParams& params, const CPoint& z,
                                const FrameAtPoint& frame) {
  const Ingredients in = ingredients(pair, params.p(), z, frame);
  Curv4 out = assemble_gauduchon_law(in, params.p(), pair.base.n());
  add_s_blocks(out, in, params.s());
  return out;
}

Curv4 delta_direct(const ConformalPair& pair, const ConnectionParams& params, const CPoint& z,
                   const FrameAtPoint& frame) {
  const double f = conformal_factor_jet(pair.f, z).value.real();
  const Curv4 base = direct_curvature(PointGeometry(pair.base, z), params, frame);
  const Curv4 resc = direct_curvature(PointGeometry(pair.rescaled, z), params, paired_frame(pair, z, frame));
  Curv4 out(pair.base.n(), "measured delta");
  out.R = std::exp(2.0 * f) * resc.R - base.R;
  return out;
}

Curv4 delta_kahler_predicted(const ConformalPair& pair, const ConnectionParams& params, const CPoint& z) {
  const FrameAtPoint frame = unitary_frame(pair.base, z);
  require_kahler_base(pair, z, frame);
  const double q = params.p() - 1.0;
  return assemble_kahler(ingredients(pair, params.p(), z, frame), q * q + params.s() * params.s(), pair.base.n());
}

Curv4 delta_kahler_predicted_gauduchon(const ConformalPair& pair, double t, const CPoint& z) {
  const FrameAtPoint frame = unitary_frame(pair.base, z);
  require_kahler_base(pair, z, frame);
  const double q = 1.0 - t;
  return assemble_kahler(ingredients(pair, t, z, frame), q * q, pair.base.n());
}

double commutation_residual(const MetricChart& chart, const ScalarField& f, double t, const CPoint& z) {
  const int n = chart.n();
  const PointGeometry geo(chart, z);
  const FrameAtPoint frame = unitary_frame(geo.metric());
  const WJet2 fj = conformal_factor_jet(f, z);
  const FrameGradient g = frame_gradient(fj, frame);
  const MixedHessian h = mixed_hessian(geo, fj, t, frame);
  const Torsion3 T = chern_torsion(geo, frame);
  double res = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx rhs = 0.0;
      for (int r = 0; r < n; ++r) rhs += g.dbar(r) * T(j, r, k) - g.d(r) * std::conj(T(k, r, j));
      res = std::max(res, std::abs(h.lbar_k(j, k) - h.k_lbar(k, j) - (1.0 - t) * rhs));
    }
  return res;
}

} // namespace hermcurv
