#pragma once

#include "hermcurv/connection.hpp"
#include "hermcurv/curvature.hpp"

namespace hermcurv {

/// Brute-force Riemannian curvature of the realified metric in the 2n real
/// coordinates (x_1..x_n, y_1..y_n), built from metric values only:
/// Christoffel symbols by 4th-order central differences, then differenced again.
struct RealCurvatureOracle {
  int n = 0;
  CMatrix metric;        ///< 2n x 2n real metric at the point
  CArray<4> riemann;     ///< riemann(a, b, c, d) = g(R(d_a, d_b) d_c, d_d), real coordinates
  double scalar = 0.0;

  /// Riemann tensor in the complexified basis w = (d_1..d_n, dbar_1..dbar_n).
  CArray<4> complexified() const;
  /// Mixed components in the given frame.
  Curv4 mixed(const FrameAtPoint& frame) const;
};

RealCurvatureOracle real_curvature_oracle(const MetricChart& chart, const CPoint& z, double h = 1e-3);

} // namespace hermcurv
