#pragma once

#include "hermcurv/connection.hpp"
#include "hermcurv/curvature.hpp"

namespace hermcurv {

/// g~ = e^{2f} g with f real.
struct ConformalPair {
  MetricChart base;
  ScalarField f;
  MetricChart rescaled;
};

/// Builds the rescaled chart with components exp(2f) g_{i jbar}.
/// f is probed for realness at deterministic points of the domain.
/// Throws NonRealConformalFactor.
ConformalPair rescale(const MetricChart& chart, const ScalarField& f);

/// Jet of f at z; throws NonRealConformalFactor if the value is not real.
WJet2 conformal_factor_jet(const ScalarField& f, const CPoint& z);

/// Frame e~_a = e^{-f} e_a of the rescaled metric paired with a base frame.
FrameAtPoint paired_frame(const ConformalPair& pair, const CPoint& z, const FrameAtPoint& base_frame);

/// First derivatives f_i = e_i f and f_ibar = ebar_i f in a frame.
struct FrameGradient {
  CVector d;    ///< f_i
  CVector dbar; ///< f_ibar
};
FrameGradient frame_gradient(const WJet2& fj, const FrameAtPoint& frame);

/// Both orderings of the mixed covariant Hessian of f with respect to nabla^t:
///   k_lbar(k, l) = f_{k lbar} = ebar_l e_k f - (nabla_{ebar_l} e_k) f
///   lbar_k(l, k) = f_{lbar k} = e_k ebar_l f - (nabla_{e_k} ebar_l) f
struct MixedHessian {
  CMatrix k_lbar;
  CMatrix lbar_k;
};
MixedHessian mixed_hessian(const PointGeometry& geo, const WJet2& fj, double t, const FrameAtPoint& frame);

/// sup-norm of direct torsion of the rescaled chart minus e^{-f}(T + f_j d_ik - f_k d_ij).
double torsion_transform_residual(const ConformalPair& pair, const CPoint& z);

/// Right-hand side of the Gauduchon conformal law for e^{2f} R~^t - R^t.
Curv4 delta_gauduchon_predicted(const ConformalPair& pair, double t, const CPoint& z, const FrameAtPoint& frame);

/// Right-hand side of the canonical conformal law for e^{2f} R~^D - R^D.
Curv4 delta_canonical_predicted(const ConformalPair& pair, const ConnectionParams& params, const CPoint& z,
                                const FrameAtPoint& frame);

/// e^{2f} R~ - R measured from the connection coefficients of both charts in paired frames.
Curv4 delta_direct(const ConformalPair& pair, const ConnectionParams& params, const CPoint& z,
                   const FrameAtPoint& frame);

/// Symmetrized delta over a Kahler base in its Cholesky frame, general (t, s) form.
/// Throws BaseNotKahler if the base torsion exceeds 1e-10 at z.
Curv4 delta_kahler_predicted(const ConformalPair& pair, const ConnectionParams& params, const CPoint& z);
/// The s = 0 form, written with t.
Curv4 delta_kahler_predicted_gauduchon(const ConformalPair& pair, double t, const CPoint& z);

/// sup over (j, k) of |f_{jbar k} - f_{k jbar} - (1-t)(f_rbar T^j_{rk} - f_r conj(T^k_{rj}))|.
double commutation_residual(const MetricChart& chart, const ScalarField& f, double t, const CPoint& z);

} // namespace hermcurv
