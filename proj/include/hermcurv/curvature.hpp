#pragma once

#include <string>
#include <vector>

#include "hermcurv/connection.hpp"

namespace hermcurv {

/// Mixed curvature components R[k][l][i][j] = R_{k lbar i jbar} in a unitary frame.
struct Curv4 {
  CArray<4> R;
  std::string connection; ///< e.g. "chern", "levi-civita", "gauduchon(t=3)"
  std::string frame = "cholesky";

  Curv4() = default;
  explicit Curv4(int n, std::string conn = {}, std::string fr = "cholesky")
      : R(n), connection(std::move(conn)), frame(std::move(fr)) {}

  int n() const { return R.dim(); }
  cplx& operator()(int k, int l, int i, int j) { return R(k, l, i, j); }
  const cplx& operator()(int k, int l, int i, int j) const { return R(k, l, i, j); }
  double max_abs() const { return R.max_abs(); }
};

double max_abs_diff(const Curv4& a, const Curv4& b);

/// Full lowered curvature on the complexified basis w:
/// out(A, B, C, D) = g(R(w_A, w_B) w_C, w_D) for the connection with the given coefficients.
CArray<4> full_curvature(const PointGeometry& geo, const ConnectionCoeffs& coeffs);
/// Same for the Levi-Civita connection.
CArray<4> full_lc_curvature(const PointGeometry& geo);

/// Mixed components R(e_k, ebar_l, e_i, ebar_j) of a full lowered tensor.
CArray<4> mixed_components(const CArray<4>& full, const FrameAtPoint& frame);

Curv4 chern_curvature(const PointGeometry& geo, const FrameAtPoint& frame);
Curv4 chern_curvature(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame);

Curv4 lc_curvature(const PointGeometry& geo, const FrameAtPoint& frame);
Curv4 lc_curvature(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame);

/// R^t assembled from R, T and its covariant derivative.
Curv4 gauduchon_curvature(const PointGeometry& geo, double t, const FrameAtPoint& frame);
Curv4 gauduchon_curvature(const MetricChart& chart, double t, const CPoint& z, const FrameAtPoint& frame);

/// R^D of D^t_s assembled from R, T and its covariant derivative.
Curv4 canonical_curvature(const PointGeometry& geo, const ConnectionParams& params, const FrameAtPoint& frame);
Curv4 canonical_curvature(const MetricChart& chart, const ConnectionParams& params, const CPoint& z,
                          const FrameAtPoint& frame);

/// R^D computed straight from the connection coefficients of D^t_s.
Curv4 direct_curvature(const PointGeometry& geo, const ConnectionParams& params, const FrameAtPoint& frame);

Curv4 symmetrize(const Curv4& c);

/// H(eta) = R(eta, etabar, eta, etabar) / |eta|^4. Throws ZeroVector.
double hsc(const Curv4& c, const CVector& eta);

struct ConstancyResult {
  double c = 0.0;
  double residual = 0.0;
};

/// Best constant c (diagonal average of the symmetrization) and the sup-norm
/// distance of the symmetrization from c/2 (dd + dd).
ConstancyResult constancy_residual(const Curv4& c);

/// Riemannian scalar curvature, exact double contraction of the full tensor.
double scalar_curvature(const PointGeometry& geo);

/// Three residuals of the self-duality criterion, n = 2 only.
std::array<double, 3> selfdual_residual(const PointGeometry& geo);
std::array<double, 3> selfdual_residual(const MetricChart& chart, const CPoint& z);

/// Gram matrix of W- on {e1^ebar2, (e1^ebar1 - e2^ebar2)/sqrt2, ebar1^e2}, n = 2 only.
CMatrix weyl_minus(const PointGeometry& geo);
CMatrix weyl_minus(const MetricChart& chart, const CPoint& z);

struct HSCSample {
  CPoint point;
  double c = 0.0;
  double residual = 0.0;
};

struct HSCReport {
  double c_mean = 0.0;
  double residual_max = 0.0;
  std::vector<HSCSample> samples;
};

/// Constancy at each point for D^t_s in the Cholesky frame, aggregated in input order.
HSCReport hsc_report(const MetricChart& chart, const ConnectionParams& params, const std::vector<CPoint>& points);

} // namespace hermcurv
