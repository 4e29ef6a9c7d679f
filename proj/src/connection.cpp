#include "hermcurv/connection.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "hermcurv/errors.hpp"

namespace hermcurv {

MetricChart::MetricChart(int n, std::vector<ScalarField> components, Domain domain, std::string label)
    : n_(n), g_(std::move(components)), domain_(std::move(domain)), label_(std::move(label)) {
  if (n_ < 1 || g_.size() != static_cast<std::size_t>(n_ * n_))
    throw InvalidSpec("metric chart needs n >= 1 and n*n components");
}

MetricChart MetricChart::from_upper(int n, const std::vector<ScalarField>& upper, Domain domain, std::string label) {
  if (upper.size() != static_cast<std::size_t>(n * (n + 1) / 2))
    throw InvalidSpec("upper triangle of an n x n metric needs n(n+1)/2 components");
  std::vector<ScalarField> full(static_cast<std::size_t>(n * n));
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      full[static_cast<std::size_t>(i * n + j)] = upper[k];
      if (j != i) full[static_cast<std::size_t>(j * n + i)] = conj(upper[k]);
      ++k;
    }
  return MetricChart(n, std::move(full), std::move(domain), std::move(label));
}

MetricJet metric_jet(const MetricChart& chart, const CPoint& z) {
  const int n = chart.n();
  if (z.dim() != n) throw DimensionError("point dimension does not match chart '" + chart.label() + "'");
  if (!chart.domain().contains(z)) throw DomainError("point outside the domain of chart '" + chart.label() + "'");
  MetricJet mj;
  mj.n = n;
  mj.jets.reserve(static_cast<std::size_t>(n * n));
  mj.G = CMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mj.jets.push_back(eval_jet(chart.component(i, j), z));
      mj.G(i, j) = mj.jets.back().value;
    }
  const CMatrix herm = 0.5 * (mj.G + mj.G.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (!(lmin > 0.0)) {
    std::ostringstream os;
    os << "metric '" << chart.label() << "' not positive definite (smallest eigenvalue " << lmin << ")";
    throw NotPositiveDefinite(os.str());
  }
  mj.Ginv = mj.G.transpose().inverse();
  return mj;
}

// ---------------------------------------------------------------- frames

double FrameAtPoint::unitarity_defect() const {
  const CMatrix M = E.transpose() * G * E.conjugate();
  return (M - CMatrix::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff();
}

FrameAtPoint FrameAtPoint::rotated(const CMatrix& U) const { return FrameAtPoint{E * U, G}; }

FrameAtPoint FrameAtPoint::scaled(double c) const { return FrameAtPoint{c * E, G / (c * c)}; }

FrameAtPoint unitary_frame(const MetricJet& mj) {
  const CMatrix H = mj.G.transpose();
  Eigen::LLT<CMatrix> llt(H);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("Cholesky factorization failed");
  const CMatrix L = llt.matrixL();
  const CMatrix Linv = L.triangularView<Eigen::Lower>().solve(CMatrix::Identity(mj.n, mj.n));
  return FrameAtPoint{Linv.adjoint(), mj.G};
}

FrameAtPoint unitary_frame(const MetricChart& chart, const CPoint& z) { return unitary_frame(metric_jet(chart, z)); }

CVector frame_vector(const FrameAtPoint& frame, int a) {
  const int n = frame.n();
  CVector v = CVector::Zero(2 * n);
  v.head(n) = frame.E.col(a);
  return v;
}

CVector frame_vector_bar(const FrameAtPoint& frame, int a) {
  const int n = frame.n();
  CVector v = CVector::Zero(2 * n);
  v.tail(n) = frame.E.col(a).conjugate();
  return v;
}

// ---------------------------------------------------------------- point geometry

PointGeometry::PointGeometry(const MetricChart& chart, const CPoint& z) : z_(z), mj_(metric_jet(chart, z)) {
  const int n = mj_.n;
  const int m = 2 * n;

  big_ = CMatrix::Zero(m, m);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) big_(a, n + b) = big_(n + b, a) = mj_.G(a, b);
  big_inv_ = big_.inverse();

  // Jet of the complexified metric entry (A, B); nullptr for the structural zeros.
  auto entry = [&](int A, int B) -> const WJet2* {
    if (A < n && B >= n) return &mj_.jet(A, B - n);
    if (A >= n && B < n) return &mj_.jet(B, A - n);
    return nullptr;
  };
  auto d1 = [&](int A, int B, int E) -> cplx {
    const WJet2* j = entry(A, B);
    return j ? j->grad(E) : cplx{};
  };
  auto d2 = [&](int A, int B, int E, int F) -> cplx {
    const WJet2* j = entry(A, B);
    return j ? j->hess(E, F) : cplx{};
  };

  // Koszul terms K(A, B, D) = d_A g_BD + d_B g_AD - d_D g_AB and their derivatives.
  CArray<3> K(m);
  CArray<4> dK(m);
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B)
      for (int D = 0; D < m; ++D) {
        K(A, B, D) = d1(B, D, A) + d1(A, D, B) - d1(A, B, D);
        for (int E = 0; E < m; ++E) dK(A, B, D, E) = d2(B, D, A, E) + d2(A, D, B, E) - d2(A, B, D, E);
      }

  std::vector<CMatrix> dbig_inv(static_cast<std::size_t>(m));
  for (int E = 0; E < m; ++E) {
    CMatrix dG(m, m);
    for (int A = 0; A < m; ++A)
      for (int B = 0; B < m; ++B) dG(A, B) = d1(A, B, E);
    dbig_inv[static_cast<std::size_t>(E)] = -big_inv_ * dG * big_inv_;
  }

  lc_ = CArray<3>(m);
  dlc_ = CArray<4>(m);
  for (int C = 0; C < m; ++C)
    for (int A = 0; A < m; ++A)
      for (int B = 0; B < m; ++B) {
        cplx acc = 0.0;
        for (int D = 0; D < m; ++D) acc += big_inv_(C, D) * K(A, B, D);
        lc_(C, A, B) = 0.5 * acc;
        for (int E = 0; E < m; ++E) {
          const CMatrix& dinv = dbig_inv[static_cast<std::size_t>(E)];
          cplx dacc = 0.0;
          for (int D = 0; D < m; ++D) dacc += dinv(C, D) * K(A, B, D) + big_inv_(C, D) * dK(A, B, D, E);
          dlc_(C, A, B, E) = 0.5 * dacc;
        }
      }

  // Chern: chern(p, a, b) = sum_q g^{p qbar} d_a g_{b qbar}.
  chern_ = CArray<3>(n);
  dchern_ = CArray<4>(m);
  std::vector<CMatrix> dGinv(static_cast<std::size_t>(m));
  for (int E = 0; E < m; ++E) {
    CMatrix dGT(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) dGT(x, y) = mj_.jet(y, x).grad(E);
    dGinv[static_cast<std::size_t>(E)] = -mj_.Ginv * dGT * mj_.Ginv;
  }
  for (int p = 0; p < n; ++p)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        cplx acc = 0.0;
        for (int q = 0; q < n; ++q) acc += mj_.Ginv(p, q) * mj_.jet(b, q).grad(a);
        chern_(p, a, b) = acc;
        for (int E = 0; E < m; ++E) {
          const CMatrix& dinv = dGinv[static_cast<std::size_t>(E)];
          cplx dacc = 0.0;
          for (int q = 0; q < n; ++q) dacc += dinv(p, q) * mj_.jet(b, q).grad(a) + mj_.Ginv(p, q) * mj_.jet(b, q).hess(a, E);
          dchern_(p, a, b, E) = dacc;
        }
      }
}

ConnectionCoeffs PointGeometry::connection(const ConnectionParams& params) const {
  const int n = this->n();
  const int m = 2 * n;
  const double t = params.t();
  const double s = params.s();
  const double wc = (1.0 - s) * t;         // Chern weight
  const double wl = (1.0 - s) * (1.0 - t); // Lichnerowicz weight
  auto swap = [n](int A) { return A < n ? A + n : A - n; };

  ConnectionCoeffs cc{CArray<3>(m), CArray<4>(m)};
  for (int C = 0; C < m; ++C)
    for (int A = 0; A < m; ++A)
      for (int B = 0; B < m; ++B) {
        const bool same_type = (C < n) == (B < n);
        cplx w = s * lc_(C, A, B);
        if (same_type) w += wl * lc_(C, A, B);
        if (C < n && A < n && B < n) w += wc * chern_(C, A, B);
        if (C >= n && A >= n && B >= n) w += wc * std::conj(chern_(C - n, A - n, B - n));
        cc.omega(C, A, B) = w;
        for (int E = 0; E < m; ++E) {
          cplx dw = s * dlc_(C, A, B, E);
          if (same_type) dw += wl * dlc_(C, A, B, E);
          if (C < n && A < n && B < n) dw += wc * dchern_(C, A, B, E);
          if (C >= n && A >= n && B >= n) dw += wc * std::conj(dchern_(C - n, A - n, B - n, swap(E)));
          cc.domega(C, A, B, E) = dw;
        }
      }
  return cc;
}

// ---------------------------------------------------------------- torsion

CArray<3> coordinate_torsion(const PointGeometry& geo) {
  const int n = geo.n();
  CArray<3> S(n);
  for (int p = 0; p < n; ++p)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const cplx v = 0.5 * (geo.chern()(p, a, b) - geo.chern()(p, b, a));
        S(p, a, b) = v;
        S(p, b, a) = -v;
      }
  return S;
}

Torsion3 chern_torsion(const PointGeometry& geo, const FrameAtPoint& frame) {
  const int n = geo.n();
  const CArray<3> S = coordinate_torsion(geo);
  const CMatrix Einv = frame.E.inverse();
  Torsion3 out{CArray<3>(n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        cplx acc = 0.0;
        for (int p = 0; p < n; ++p)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) acc += Einv(j, p) * S(p, a, b) * frame.E(a, i) * frame.E(b, k);
        out.T(j, i, k) = acc;
        out.T(j, k, i) = -acc;
      }
  return out;
}

Torsion3 chern_torsion(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame) {
  return chern_torsion(PointGeometry(chart, z), frame);
}

CArray<4> torsion_cov_deriv(const PointGeometry& geo, const FrameAtPoint& frame) {
  const int n = geo.n();
  // dS(p, a, b, q) = d_qbar S(p, a, b)
  CArray<4> dS(n);
  for (int p = 0; p < n; ++p)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int q = 0; q < n; ++q)
          dS(p, a, b, q) = 0.5 * (geo.dchern()(p, a, b, n + q) - geo.dchern()(p, b, a, n + q));
  const CMatrix Einv = frame.E.inverse();
  const CMatrix Ebar = frame.E.conjugate();
  CArray<4> out(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx acc = 0.0;
          for (int p = 0; p < n; ++p)
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                for (int q = 0; q < n; ++q)
                  acc += Einv(j, p) * dS(p, a, b, q) * frame.E(a, i) * frame.E(b, k) * Ebar(q, l);
          out(j, i, k, l) = acc;
          out(j, k, i, l) = -acc;
        }
  return out;
}

CArray<4> torsion_cov_deriv(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame) {
  return torsion_cov_deriv(PointGeometry(chart, z), frame);
}

GammaTheta2 gamma_theta2(const Torsion3& torsion) {
  const int n = torsion.n();
  GammaTheta2 out;
  out.n = n;
  out.gamma.assign(static_cast<std::size_t>(n * n * 2 * n), cplx{});
  out.theta2 = CArray<3>(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        // gamma^j_i = T^j_{ik} phi^k - conj(T^i_{jk}) conj(phi^k)
        out.gamma[static_cast<std::size_t>((j * n + i) * 2 * n + k)] = torsion(j, i, k);
        out.gamma[static_cast<std::size_t>((j * n + i) * 2 * n + n + k)] = -std::conj(torsion(i, j, k));
        // (theta_2)^j_i = conj(T^k_{ij}) phi^k
        out.theta2(j, i, k) = std::conj(torsion(k, i, j));
      }
  return out;
}

GammaTheta2 gamma_theta2(const MetricChart& chart, const CPoint& z, const FrameAtPoint& frame) {
  return gamma_theta2(chern_torsion(chart, z, frame));
}

} // namespace hermcurv
