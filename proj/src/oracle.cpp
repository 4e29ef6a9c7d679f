#include "hermcurv/oracle.hpp"

#include <Eigen/LU>

namespace hermcurv {

namespace {

// real coordinate r: r < n moves Re z_r, otherwise Im z_{r-n}
CPoint shifted(const CPoint& z, int r, double h) {
  const int n = z.dim();
  CPoint p = z;
  p[r % n] += (r < n) ? cplx{h, 0.0} : cplx{0.0, h};
  return p;
}

Eigen::MatrixXd real_metric(const MetricChart& chart, const CPoint& z) {
  const int n = chart.n();
  Eigen::MatrixXd g(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const cplx v = eval_value(chart.component(a, b), z);
      g(a, b) = g(n + a, n + b) = 2.0 * v.real();
      g(a, n + b) = 2.0 * v.imag();
      g(n + b, a) = 2.0 * v.imag();
    }
  return 0.5 * (g + g.transpose());
}

template <typename F>
Eigen::MatrixXd central4(F&& f, const CPoint& z, int r, double h) {
  return (8.0 * (f(shifted(z, r, h)) - f(shifted(z, r, -h))) - (f(shifted(z, r, 2 * h)) - f(shifted(z, r, -2 * h)))) /
         (12.0 * h);
}

// gamma[c] (a, b) = Gamma^c_{ab}
std::vector<Eigen::MatrixXd> christoffel(const MetricChart& chart, const CPoint& z, double h) {
  const int m = 2 * chart.n();
  const Eigen::MatrixXd g = real_metric(chart, z);
  const Eigen::MatrixXd gi = g.inverse();
  std::vector<Eigen::MatrixXd> dg;
  for (int r = 0; r < m; ++r)
    dg.push_back(central4([&](const CPoint& p) { return real_metric(chart, p); }, z, r, h));
  std::vector<Eigen::MatrixXd> gam(static_cast<std::size_t>(m), Eigen::MatrixXd::Zero(m, m));
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double v = 0.0;
        for (int d = 0; d < m; ++d)
          v += gi(c, d) * (dg[static_cast<std::size_t>(a)](b, d) + dg[static_cast<std::size_t>(b)](a, d) -
                           dg[static_cast<std::size_t>(d)](a, b));
        gam[static_cast<std::size_t>(c)](a, b) = 0.5 * v;
      }
  return gam;
}

} // namespace

RealCurvatureOracle real_curvature_oracle(const MetricChart& chart, const CPoint& z, double h) {
  const int n = chart.n();
  const int m = 2 * n;
  const Eigen::MatrixXd g = real_metric(chart, z);
  const auto gam = christoffel(chart, z, h);
  // dgam[r][c](a, b) = d_r Gamma^c_{ab}
  std::vector<std::vector<Eigen::MatrixXd>> dgam;
  for (int r = 0; r < m; ++r) {
    auto plus1 = christoffel(chart, shifted(z, r, h), h);
    auto minus1 = christoffel(chart, shifted(z, r, -h), h);
    auto plus2 = christoffel(chart, shifted(z, r, 2 * h), h);
    auto minus2 = christoffel(chart, shifted(z, r, -2 * h), h);
    std::vector<Eigen::MatrixXd> d;
    for (int c = 0; c < m; ++c) {
      const auto k = static_cast<std::size_t>(c);
      d.push_back((8.0 * (plus1[k] - minus1[k]) - (plus2[k] - minus2[k])) / (12.0 * h));
    }
    dgam.push_back(std::move(d));
  }

  RealCurvatureOracle out;
  out.n = n;
  out.metric = g.cast<cplx>();
  out.riemann = CArray<4>(m);
  CArray<4> up(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double v = dgam[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)](b, c) -
                     dgam[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)](a, c);
          for (int e = 0; e < m; ++e)
            v += gam[static_cast<std::size_t>(e)](b, c) * gam[static_cast<std::size_t>(d)](a, e) -
                 gam[static_cast<std::size_t>(e)](a, c) * gam[static_cast<std::size_t>(d)](b, e);
          up(d, a, b, c) = v;
        }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int f = 0; f < m; ++f) {
          cplx v = 0.0;
          for (int d = 0; d < m; ++d) v += up(d, a, b, c) * g(d, f);
          out.riemann(a, b, c, f) = v;
        }
  const Eigen::MatrixXd gi = g.inverse();
  double s = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) s += gi(b, c) * gi(d, a) * out.riemann(a, b, c, d).real();
  out.scalar = s;
  return out;
}

CArray<4> RealCurvatureOracle::complexified() const {
  const int m = 2 * n;
  // w_A = sum_r P(r, A) d_r with d_k = (d_x - i d_y)/2, dbar_k = (d_x + i d_y)/2
  CMatrix P = CMatrix::Zero(m, m);
  for (int k = 0; k < n; ++k) {
    P(k, k) = 0.5;
    P(n + k, k) = -0.5 * kI;
    P(k, n + k) = 0.5;
    P(n + k, n + k) = 0.5 * kI;
  }
  CArray<4> out(m);
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B)
      for (int C = 0; C < m; ++C)
        for (int D = 0; D < m; ++D) {
          cplx v = 0.0;
          for (int a = 0; a < m; ++a) {
            if (P(a, A) == cplx{}) continue;
            for (int b = 0; b < m; ++b) {
              if (P(b, B) == cplx{}) continue;
              for (int c = 0; c < m; ++c) {
                if (P(c, C) == cplx{}) continue;
                for (int d = 0; d < m; ++d) {
                  if (P(d, D) == cplx{}) continue;
                  v += P(a, A) * P(b, B) * P(c, C) * P(d, D) * riemann(a, b, c, d);
                }
              }
            }
          }
          out(A, B, C, D) = v;
        }
  return out;
}

Curv4 RealCurvatureOracle::mixed(const FrameAtPoint& frame) const {
  Curv4 out(n, "levi-civita(real oracle)");
  out.R = mixed_components(complexified(), frame);
  return out;
}

} // namespace hermcurv
