#pragma once

#include "hermcurv/types.hpp"

namespace hermcurv {

/// Value and all Wirtinger partial derivatives through second order of a
/// scalar field at a point of C^n.
///
/// Storage is unified over the 2n independent variables (z_1..z_n, zbar_1..zbar_n):
/// grad(A) = d/dw_A and hess(A, B) = d/dw_A d/dw_B with w = (z, zbar).
/// The named accessors expose the blocks
///   d()        : d_i        = grad.head(n)
///   dbar()     : d_ibar     = grad.tail(n)
///   dd()       : d_i d_j    = hess top-left
///   ddbar()    : d_i d_jbar = hess top-right (row i holomorphic, column j antiholomorphic)
///   dbardbar() : d_ibar d_jbar = hess bottom-right
/// hess is kept exactly symmetric by every operation.
class WJet2 {
public:
  WJet2() = default;
  explicit WJet2(int n);

  static WJet2 constant(int n, cplx c);
  /// The coordinate function z_i (conj = false) or zbar_i (conj = true).
  static WJet2 coordinate(int n, int i, bool conj, cplx value);

  int n() const { return n_; }

  cplx value = {};
  CVector grad;
  CMatrix hess;

  auto d() const { return grad.head(n_); }
  auto dbar() const { return grad.tail(n_); }
  auto dd() const { return hess.topLeftCorner(n_, n_); }
  auto ddbar() const { return hess.topRightCorner(n_, n_); }
  auto dbardbar() const { return hess.bottomRightCorner(n_, n_); }

  cplx d(int i) const { return grad(i); }
  cplx dbar(int i) const { return grad(n_ + i); }
  cplx dd(int i, int j) const { return hess(i, j); }
  cplx ddbar(int i, int j) const { return hess(i, n_ + j); }
  cplx dbardbar(int i, int j) const { return hess(n_ + i, n_ + j); }

  bool all_finite() const;

  WJet2& operator+=(const WJet2& o);
  WJet2& operator-=(const WJet2& o);
  WJet2& operator*=(const WJet2& o);
  WJet2& operator*=(cplx s);

  friend WJet2 operator+(WJet2 a, const WJet2& b) { return a += b; }
  friend WJet2 operator-(WJet2 a, const WJet2& b) { return a -= b; }
  friend WJet2 operator*(WJet2 a, const WJet2& b) { return a *= b; }
  friend WJet2 operator*(cplx s, WJet2 a) { return a *= s; }
  friend WJet2 operator-(WJet2 a) { return a *= cplx{-1.0}; }

private:
  int n_ = 0;
};

/// Chain rule for an analytic function phi of one complex variable:
/// value phi(u), first derivative phi'(u) du, second phi'(u) ddu + phi''(u) du du.
WJet2 compose(const WJet2& u, cplx phi, cplx dphi, cplx ddphi);

/// Division; the caller is responsible for guarding b.value != 0.
WJet2 operator/(const WJet2& a, const WJet2& b);
WJet2 exp(const WJet2& u);
WJet2 log(const WJet2& u);
WJet2 pow(const WJet2& u, int k);

/// Jet of the complex-conjugate field: swaps the roles of z and zbar.
WJet2 conj(const WJet2& u);

/// max over all entries of |a - b|.
double max_abs_diff(const WJet2& a, const WJet2& b);
/// max over all entries of |a|.
double max_abs(const WJet2& a);

} // namespace hermcurv
