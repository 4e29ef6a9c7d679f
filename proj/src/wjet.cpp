#include "hermcurv/wjet.hpp"

#include <cmath>

namespace hermcurv {

namespace {

void symmetrize_hessian(CMatrix& h) {
  const auto m = h.rows();
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b) h(b, a) = h(a, b);
}

} // namespace

WJet2::WJet2(int n) : grad(CVector::Zero(2 * n)), hess(CMatrix::Zero(2 * n, 2 * n)), n_(n) {}

WJet2 WJet2::constant(int n, cplx c) {
  WJet2 j(n);
  j.value = c;
  return j;
}

WJet2 WJet2::coordinate(int n, int i, bool conj, cplx value) {
  WJet2 j(n);
  j.value = value;
  j.grad(conj ? n + i : i) = 1.0;
  return j;
}

bool WJet2::all_finite() const {
  auto fin = [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  if (!fin(value)) return false;
  for (Eigen::Index a = 0; a < grad.size(); ++a)
    if (!fin(grad(a))) return false;
  for (Eigen::Index a = 0; a < hess.size(); ++a)
    if (!fin(hess.data()[a])) return false;
  return true;
}

WJet2& WJet2::operator+=(const WJet2& o) {
  value += o.value;
  grad += o.grad;
  hess += o.hess;
  return *this;
}

WJet2& WJet2::operator-=(const WJet2& o) {
  value -= o.value;
  grad -= o.grad;
  hess -= o.hess;
  return *this;
}

WJet2& WJet2::operator*=(cplx s) {
  value *= s;
  grad *= s;
  hess *= s;
  return *this;
}

WJet2& WJet2::operator*=(const WJet2& o) {
  const int m = 2 * n_;
  CMatrix h(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      h(a, b) = hess(a, b) * o.value + (grad(a) * o.grad(b) + grad(b) * o.grad(a)) + value * o.hess(a, b);
  symmetrize_hessian(h);
  grad = grad * o.value + value * o.grad;
  value *= o.value;
  hess = std::move(h);
  return *this;
}

WJet2 compose(const WJet2& u, cplx phi, cplx dphi, cplx ddphi) {
  const int m = 2 * u.n();
  WJet2 r(u.n());
  r.value = phi;
  r.grad = dphi * u.grad;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) r.hess(a, b) = dphi * u.hess(a, b) + ddphi * (u.grad(a) * u.grad(b));
  symmetrize_hessian(r.hess);
  return r;
}

WJet2 operator/(const WJet2& a, const WJet2& b) {
  const cplx v = b.value;
  return a * compose(b, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

WJet2 exp(const WJet2& u) {
  const cplx e = std::exp(u.value);
  return compose(u, e, e, e);
}

WJet2 log(const WJet2& u) {
  const cplx v = u.value;
  return compose(u, std::log(v), 1.0 / v, -1.0 / (v * v));
}

WJet2 pow(const WJet2& u, int k) {
  if (k == 0) return WJet2::constant(u.n(), 1.0);
  const cplx v = u.value;
  const double kd = k;
  const cplx p = std::pow(v, k);
  const cplx p1 = kd * std::pow(v, k - 1);
  const cplx p2 = (k == 1) ? cplx{0.0} : kd * (kd - 1.0) * std::pow(v, k - 2);
  return compose(u, p, p1, p2);
}

WJet2 conj(const WJet2& u) {
  const int n = u.n();
  WJet2 r(n);
  r.value = std::conj(u.value);
  // d/dz_i conj(f) = conj(d/dzbar_i f), so the (z, zbar) halves swap.
  for (int i = 0; i < n; ++i) {
    r.grad(i) = std::conj(u.grad(n + i));
    r.grad(n + i) = std::conj(u.grad(i));
  }
  auto swap = [n](int a) { return a < n ? a + n : a - n; };
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) r.hess(a, b) = std::conj(u.hess(swap(a), swap(b)));
  return r;
}

double max_abs_diff(const WJet2& a, const WJet2& b) {
  double m = std::abs(a.value - b.value);
  m = std::max(m, (a.grad - b.grad).cwiseAbs().maxCoeff());
  m = std::max(m, (a.hess - b.hess).cwiseAbs().maxCoeff());
  return m;
}

double max_abs(const WJet2& a) {
  double m = std::abs(a.value);
  m = std::max(m, a.grad.cwiseAbs().maxCoeff());
  m = std::max(m, a.hess.cwiseAbs().maxCoeff());
  return m;
}

} // namespace hermcurv
