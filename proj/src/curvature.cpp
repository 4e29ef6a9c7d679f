#include "hermcurv/curvature.hpp"

#include <cmath>
#include <sstream>

#include "hermcurv/errors.hpp"

namespace hermcurv {

namespace {

std::string tagged(const char* name, const ConnectionParams& p) {
  std::ostringstream os;
  os << name << "(t=" << p.t() << ",s=" << p.s() << ")";
  return os.str();
}

CArray<4> lowered(const CArray<3>& omega, const CArray<4>& domega, const CMatrix& big) {
  const int m = omega.dim();
  CArray<4> up(m); // up(D, A, B, C): component on w_D of R(w_A, w_B) w_C
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B)
      for (int C = 0; C < m; ++C)
        for (int D = 0; D < m; ++D) {
          cplx v = domega(D, B, C, A) - domega(D, A, C, B);
          for (int E = 0; E < m; ++E) v += omega(E, B, C) * omega(D, A, E) - omega(E, A, C) * omega(D, B, E);
          up(D, A, B, C) = v;
        }
  CArray<4> out(m);
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B)
      for (int C = 0; C < m; ++C)
        for (int F = 0; F < m; ++F) {
          cplx v = 0.0;
          for (int D = 0; D < m; ++D) v += up(D, A, B, C) * big(D, F);
          out(A, B, C, F) = v;
        }
  return out;
}

// out(k, l, i, j) = sum X(a, k) Y(b, l) X(c, i) Y(d, j) in(a, b, c, d), one slot at a time.
CArray<4> transform4(const CArray<4>& in, const CMatrix& X, const CMatrix& Y) {
  const int n = in.dim();
  CArray<4> cur = in;
  for (int slot = 0; slot < 4; ++slot) {
    const CMatrix& M = (slot % 2 == 0) ? X : Y;
    CArray<4> next(n);
    int idx[4];
    for (idx[0] = 0; idx[0] < n; ++idx[0])
      for (idx[1] = 0; idx[1] < n; ++idx[1])
        for (idx[2] = 0; idx[2] < n; ++idx[2])
          for (idx[3] = 0; idx[3] < n; ++idx[3]) {
            int src[4] = {idx[0], idx[1], idx[2], idx[3]};
            cplx v = 0.0;
            for (int a = 0; a < n; ++a) {
              src[slot] = a;
              v += M(a, idx[slot]) * cur(src[0], src[1], src[2], src[3]);
            }
            next(idx[0], idx[1], idx[2], idx[3]) = v;
          }
    cur = std::move(next);
  }
  return cur;
}

} // namespace

double max_abs_diff(const Curv4& a, const Curv4& b) { return max_abs_diff(a.R, b.R); }

CArray<4> full_curvature(const PointGeometry& geo, const ConnectionCoeffs& coeffs) {
  return lowered(coeffs.omega, coeffs.domega, geo.big_metric());
}

CArray<4> full_lc_curvature(const PointGeometry& geo) { return lowered(geo.lc(), geo.dlc(), geo.big_metric()); }

CArray<4> mixed_components(const CArray<4>& full, const FrameAtPoint& frame) {
  const int n = frame.n();
  CArray<4> block(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) block(a, b, c, d) = full(a, n + b, c, n + d);
  return transform4(block, frame.E, frame.E.conjugate());
}

Curv4 chern_curvature(const PointGeometry& geo, const FrameAtPoint& frame) {
  const int n = geo.n();
  const MetricJet& mj = geo.metric();
  // R_{k lbar i jbar} = -d_k d_lbar g_{i jbar} + g^{p qbar} d_k g_{i qbar} d_lbar g_{p jbar}
  CArray<4> coord(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cplx v = -mj.jet(i, j).ddbar(k, l);
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) v += mj.Ginv(p, q) * mj.jet(i, q).d(k) * mj.jet(p, j).dbar(l);
          coord(k, l, i, j) = v;
        }
  Curv4 out(n, "chern");
  out.R = transform4(coord, frame.E, frame.E.conjugate());
  return out;
}

Curv4 chern_curvature(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame) {
  return chern_curvature(PointGeometry(chart, z), frame);
}

Curv4 lc_curvature(const PointGeometry& geo, const FrameAtPoint& frame) {
  Curv4 out(geo.n(), "levi-civita");
  out.R = mixed_components(full_lc_curvature(geo), frame);
  return out;
}

Curv4 lc_curvature(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame) {
  return lc_curvature(PointGeometry(chart, z), frame);
}

Curv4 canonical_curvature(const PointGeometry& geo, const ConnectionParams& params, const FrameAtPoint& frame) {
  const int n = geo.n();
  const double p = params.p();
  const double s = params.s();
  const Curv4 lc = lc_curvature(geo, frame);
  const Torsion3 tor = chern_torsion(geo, frame);
  const CArray<4> DT = torsion_cov_deriv(geo, frame);
  const CArray<3>& T = tor.T;

  Curv4 out(n, tagged("canonical", params));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cplx quad = 0.0;
          cplx last = 0.0;
          for (int r = 0; r < n; ++r) {
            quad += T(r, i, k) * std::conj(T(r, j, l)) - T(j, r, k) * std::conj(T(i, r, l));
            last += std::conj(T(k, r, j)) * T(l, i, r);
          }
          out(k, l, i, j) = lc(k, l, i, j) + p * (DT(j, i, k, l) + std::conj(DT(i, j, l, k))) +
                            (p * p - 2.0 * p) * quad + (s * s - 1.0) * last;
        }
  return out;
}

Curv4 canonical_curvature(const MetricChart& chart, const ConnectionParams& params, const CPoint& z,
                          const FrameAtPoint& frame) {
  return canonical_curvature(PointGeometry(chart, z), params, frame);
}

Curv4 gauduchon_curvature(const PointGeometry& geo, double t, const FrameAtPoint& frame) {
  Curv4 out = canonical_curvature(geo, ConnectionParams(t, 0.0), frame);
  std::ostringstream os;
  os << "gauduchon(t=" << t << ")";
  out.connection = os.str();
  return out;
}

Curv4 gauduchon_curvature(const MetricChart& chart, double t, const CPoint& z, const FrameAtPoint& frame) {
  return gauduchon_curvature(PointGeometry(chart, z), t, frame);
}

Curv4 direct_curvature(const PointGeometry& geo, const ConnectionParams& params, const FrameAtPoint& frame) {
  Curv4 out(geo.n(), tagged("direct", params));
  out.R = mixed_components(full_curvature(geo, geo.connection(params)), frame);
  return out;
}

Curv4 symmetrize(const Curv4& c) {
  const int n = c.n();
  Curv4 out(n, c.connection + "^sym", c.frame);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          // evaluate on the orbit representative so every member gets bit-identical values
          const int k0 = std::min(k, i), i0 = std::max(k, i);
          const int l0 = std::min(l, j), j0 = std::max(l, j);
          out(k, l, i, j) = 0.25 * (c(k0, l0, i0, j0) + c(i0, l0, k0, j0) + c(k0, j0, i0, l0) + c(i0, j0, k0, l0));
        }
  return out;
}

double hsc(const Curv4& c, const CVector& eta) {
  const int n = c.n();
  if (eta.size() != n) throw DimensionError("hsc: direction has wrong dimension");
  const double norm2 = eta.squaredNorm();
  if (!(norm2 > 0.0)) throw ZeroVector("hsc: zero direction");
  cplx v = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          v += c(k, l, i, j) * eta(k) * std::conj(eta(l)) * eta(i) * std::conj(eta(j));
  v /= norm2 * norm2;
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    throw Error("hsc: contraction is not real (imaginary part " + std::to_string(v.imag()) + ")");
  return v.real();
}

ConstancyResult constancy_residual(const Curv4& c) {
  const int n = c.n();
  const Curv4 h = symmetrize(c);
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) acc += 2.0 * h(i, i, k, k).real() / (i == k ? 2.0 : 1.0);
  ConstancyResult out;
  out.c = 2.0 * acc / (n * (n + 1));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double target = 0.5 * out.c * (kron(k, l) * kron(i, j) + kron(k, j) * kron(i, l));
          out.residual = std::max(out.residual, std::abs(h(k, l, i, j) - target));
        }
  return out;
}

double scalar_curvature(const PointGeometry& geo) {
  const CArray<4> R = full_lc_curvature(geo);
  const CMatrix& gi = geo.big_metric_inv();
  const int m = R.dim();
  cplx s = 0.0;
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B)
      for (int C = 0; C < m; ++C)
        for (int D = 0; D < m; ++D) s += gi(B, C) * gi(D, A) * R(A, B, C, D);
  return s.real();
}

std::array<double, 3> selfdual_residual(const PointGeometry& geo) {
  if (geo.n() != 2) throw DimensionError("self-duality residual needs n = 2");
  const FrameAtPoint frame = unitary_frame(geo.metric());
  const Curv4 R = lc_curvature(geo, frame);
  return {std::abs(R(0, 1, 0, 1)), std::abs(R(0, 1, 1, 1) - R(0, 1, 0, 0)),
          std::abs(2.0 * R(0, 1, 1, 0) + 2.0 * R(0, 0, 1, 1) - R(0, 0, 0, 0) - R(1, 1, 1, 1))};
}

std::array<double, 3> selfdual_residual(const MetricChart& chart, const CPoint& z) {
  return selfdual_residual(PointGeometry(chart, z));
}

namespace {

using Bivector = CMatrix; // antisymmetric 2n x 2n components alpha^{AB}

Bivector wedge(const CVector& X, const CVector& Y) { return X * Y.transpose() - Y * X.transpose(); }

CVector conj_vector(const CVector& v) {
  const int n = static_cast<int>(v.size()) / 2;
  CVector out(v.size());
  out.head(n) = v.tail(n).conjugate();
  out.tail(n) = v.head(n).conjugate();
  return out;
}

} // namespace

CMatrix weyl_minus(const PointGeometry& geo) {
  if (geo.n() != 2) throw DimensionError("W- needs n = 2");
  const FrameAtPoint frame = unitary_frame(geo.metric());
  const CArray<4> R = full_lc_curvature(geo);
  const CMatrix& G = geo.big_metric();
  const double s = scalar_curvature(geo);
  const int m = 4;

  const CVector e1 = frame_vector(frame, 0), e2 = frame_vector(frame, 1);
  const CVector e1b = conj_vector(e1), e2b = conj_vector(e2);
  const std::array<std::pair<Bivector, Bivector>, 3> basis = {{
      {wedge(e1, e2b), wedge(e1b, e2)},
      {(wedge(e1, e1b) - wedge(e2, e2b)) / std::sqrt(2.0), (wedge(e1b, e1) - wedge(e2b, e2)) / std::sqrt(2.0)},
      {wedge(e1b, e2), wedge(e1, e2b)},
  }};

  auto rpair = [&](const Bivector& a, const Bivector& b) {
    cplx v = 0.0;
    for (int A = 0; A < m; ++A)
      for (int B = 0; B < m; ++B)
        for (int C = 0; C < m; ++C)
          for (int D = 0; D < m; ++D) v += a(A, B) * b(C, D) * R(A, B, C, D);
    return 0.25 * v;
  };
  auto gpair = [&](const Bivector& a, const Bivector& b) {
    return 0.5 * (G.transpose() * a * G * b.transpose()).trace();
  };

  CMatrix W(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Bivector& x = basis[static_cast<std::size_t>(a)].first;
      const Bivector& ybar = basis[static_cast<std::size_t>(b)].second;
      W(a, b) = -rpair(x, ybar) - (s / 12.0) * gpair(x, ybar);
    }
  return W;
}

CMatrix weyl_minus(const MetricChart& chart, const CPoint& z) { return weyl_minus(PointGeometry(chart, z)); }

HSCReport hsc_report(const MetricChart& chart, const ConnectionParams& params, const std::vector<CPoint>& points) {
  HSCReport rep;
  double sum = 0.0;
  for (const auto& z : points) {
    const PointGeometry geo(chart, z);
    const FrameAtPoint frame = unitary_frame(geo.metric());
    const ConstancyResult cr = constancy_residual(canonical_curvature(geo, params, frame));
    rep.samples.push_back({z, cr.c, cr.residual});
    sum += cr.c;
    rep.residual_max = std::max(rep.residual_max, cr.residual);
  }
  if (!points.empty()) rep.c_mean = sum / static_cast<double>(points.size());
  return rep;
}

} // namespace hermcurv
