#pragma once

#include <string>
#include <vector>

#include "hermcurv/scalar_field.hpp"
#include "hermcurv/types.hpp"
#include "hermcurv/wjet.hpp"

namespace hermcurv {

/// A Hermitian metric on an open chart of C^n, components g_{i jbar} = g(d_i, d_jbar).
class MetricChart {
public:
  MetricChart() = default;
  /// components is row-major n x n; entry (i, j) is g_{i jbar}.
  MetricChart(int n, std::vector<ScalarField> components, Domain domain, std::string label);

  /// Builds the full matrix from the upper triangle (row-major, i <= j); the
  /// lower triangle is filled with conj(g_{j ibar}) so Hermitian symmetry holds
  /// by construction.
  static MetricChart from_upper(int n, const std::vector<ScalarField>& upper, Domain domain, std::string label);

  int n() const { return n_; }
  const ScalarField& component(int i, int j) const { return g_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<ScalarField>& components() const { return g_; }
  const Domain& domain() const { return domain_; }
  const std::string& label() const { return label_; }

private:
  int n_ = 0;
  std::vector<ScalarField> g_;
  Domain domain_;
  std::string label_;
};

struct MetricJet {
  int n = 0;
  std::vector<WJet2> jets; ///< row-major, jets[i*n+j] is the jet of g_{i jbar}
  CMatrix G;               ///< G(i, j) = g_{i jbar}
  CMatrix Ginv;            ///< Ginv(p, q) = g^{p qbar}, sum_q g^{p qbar} g_{i qbar} = delta_{pi}

  const WJet2& jet(int i, int j) const { return jets[static_cast<std::size_t>(i * n + j)]; }
};

/// Jets of every component and the inverse metric. Throws NotPositiveDefinite.
MetricJet metric_jet(const MetricChart& chart, const CPoint& z);

/// Unitary frame at a point. Column a of E holds e_a in the coordinate basis:
/// e_a = sum_p E(p, a) d_p, and g(e_a, conj e_b) = (E^T G conj(E))_{ab} = delta_{ab}.
struct FrameAtPoint {
  CMatrix E;
  CMatrix G;

  int n() const { return static_cast<int>(E.cols()); }
  /// max |g(e_a, conj e_b) - delta_ab|
  double unitarity_defect() const;
  /// Frame e'_a = sum_b e_b U(b, a) for a unitary U.
  FrameAtPoint rotated(const CMatrix& U) const;
  /// Frame c * e_a for a real c > 0, paired with metric G / c^2.
  FrameAtPoint scaled(double c) const;
};

/// Deterministic Cholesky frame: G^T = L L^*, E = L^{-*}.
FrameAtPoint unitary_frame(const MetricJet& mj);
FrameAtPoint unitary_frame(const MetricChart& chart, const CPoint& z);

/// The pair (t, s); p and b are always derived.
class ConnectionParams {
public:
  constexpr ConnectionParams(double t = 1.0, double s = 0.0) : t_(t), s_(s) {}
  constexpr double t() const { return t_; }
  constexpr double s() const { return s_; }
  constexpr double p() const { return t_ - t_ * s_; }
  constexpr double b() const { return p() * p() - 2.0 * p() - 1.0 + s_ * s_; }

private:
  double t_;
  double s_;
};

/// Connection coefficients on the complexified tangent bundle in the basis
/// w = (d_1..d_n, dbar_1..dbar_n): nabla_{w_A} w_B = sum_C omega(C, A, B) w_C,
/// with domega(C, A, B, E) = d_E omega(C, A, B).
struct ConnectionCoeffs {
  CArray<3> omega;
  CArray<4> domega;
};

/// Everything needed at a single point: metric jets, complexified metric and
/// its derivatives, Levi-Civita Christoffel symbols and Chern symbols with
/// first derivatives.
class PointGeometry {
public:
  PointGeometry(const MetricChart& chart, const CPoint& z);

  int n() const { return mj_.n; }
  const CPoint& point() const { return z_; }
  const MetricJet& metric() const { return mj_; }
  /// Complexified metric on w: big(a, n+b) = big(n+b, a) = g_{a bbar}, zero otherwise.
  const CMatrix& big_metric() const { return big_; }
  const CMatrix& big_metric_inv() const { return big_inv_; }
  /// Levi-Civita Christoffel symbols lc(C, A, B) and derivatives dlc(C, A, B, E).
  const CArray<3>& lc() const { return lc_; }
  const CArray<4>& dlc() const { return dlc_; }
  /// Chern symbols on the holomorphic block: nabla_{d_a} d_b = chern(p, a, b) d_p.
  const CArray<3>& chern() const { return chern_; }
  /// dchern(p, a, b, E) = d_E chern(p, a, b), E over all 2n Wirtinger directions.
  const CArray<4>& dchern() const { return dchern_; }

  /// Coefficients of D^t_s = (1-s)(t Chern + (1-t) Lichnerowicz) + s Levi-Civita.
  ConnectionCoeffs connection(const ConnectionParams& params) const;

private:
  CPoint z_;
  MetricJet mj_;
  CMatrix big_;
  CMatrix big_inv_;
  CArray<3> lc_;
  CArray<4> dlc_;
  CArray<3> chern_;
  CArray<4> dchern_;
};

/// Chern torsion in a unitary frame: T(j, i, k) = T^j_{ik}, where
/// T(e_i, e_k) = 2 T^j_{ik} e_j. Antisymmetric in (i, k) exactly.
struct Torsion3 {
  CArray<3> T;
  const cplx& operator()(int j, int i, int k) const { return T(j, i, k); }
  int n() const { return T.dim(); }
};

Torsion3 chern_torsion(const PointGeometry& geo, const FrameAtPoint& frame);
Torsion3 chern_torsion(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame);

/// Coordinate torsion tensor S(p, a, b) with T(d_a, d_b) = 2 S(p, a, b) d_p.
CArray<3> coordinate_torsion(const PointGeometry& geo);

/// Chern-covariant derivative DT(j, i, k, l) = T^j_{ik, lbar}.
/// For the Chern connection nabla_{dbar_l} d_i = 0, so in holomorphic
/// coordinates the covariant derivative is the plain dbar derivative of the
/// coordinate components.
CArray<4> torsion_cov_deriv(const PointGeometry& geo, const FrameAtPoint& frame);
CArray<4> torsion_cov_deriv(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame);

/// gamma(j, i, K) is the coefficient of gamma^j_i on phi^K (K < n) or conj(phi^{K-n}) (K >= n);
/// theta2(j, i, k) is the coefficient of (theta_2)^j_i on phi^k.
struct GammaTheta2 {
  std::vector<cplx> gamma;  ///< n * n * 2n, index (j * n + i) * 2n + K
  CArray<3> theta2;
  int n = 0;
  cplx gamma_at(int j, int i, int K) const {
    return gamma[static_cast<std::size_t>((j * n + i) * 2 * n + K)];
  }
};

GammaTheta2 gamma_theta2(const Torsion3& torsion);
GammaTheta2 gamma_theta2(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame);

/// Vectors of the frame in the complexified coordinate basis w (length 2n).
CVector frame_vector(const FrameAtPoint& frame, int a);
CVector frame_vector_bar(const FrameAtPoint& frame, int a);

} // namespace hermcurv
