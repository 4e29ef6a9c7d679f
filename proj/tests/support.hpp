#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>

#include "hermcurv/catalog.hpp"

namespace hermcurv::testing {

inline CMatrix diag2(double a, double b) {
  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 0) = a;
  A(1, 1) = b;
  return A;
}

inline HopfSpec reference_admissible() { return HopfSpec::isotropic(diag2(0.2, 0.1)); }

/// S^2 x S^2 product of two round factors: Kahler but not self-dual.
inline ChartSpec sphere_product() {
  return ChartSpec::inline_chart(2, {"(/ 2 (pow (+ 1 (* z1 zb1)) 2))", "0", "0", "(/ 2 (pow (+ 1 (* z2 zb2)) 2))"});
}

/// A Hermitian, non-Kahler, non-self-dual metric on the unit ball.
inline ChartSpec generic_hermitian() {
  return ChartSpec::inline_chart(2,
                                 {"(+ 2 (* z1 zb1) (* 0.3 (+ z2 zb2)))", "(* 0.4 z1 zb2)", "(* 0.4 zb1 z2)",
                                  "(+ 1.5 (* 0.5 z2 zb2) (* [0, 0.2] (- z1 zb1)))"},
                                 Domain::ball(1.0));
}

/// The six named catalog charts on C^2.
inline std::vector<ChartSpec> catalog_charts() {
  return {ChartSpec::euclidean(2),     ChartSpec::hopf_standard(2),     ChartSpec::admissible(reference_admissible()),
          ChartSpec::fs_bergman(),     ChartSpec::fubini_study(2),      ChartSpec::complex_hyperbolic(2)};
}

inline bool is_kahler(const ChartSpec& s) {
  using K = ChartSpec::Kind;
  return s.kind == K::Euclidean || s.kind == K::FsBergman || s.kind == K::FubiniStudy ||
         s.kind == K::ComplexHyperbolic;
}

/// Random real polynomial of degree <= 3 in (z, zbar), written as a prefix expression.
inline std::string random_real_poly(std::mt19937_64& rng, int n, double scale = 0.3) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> idx(1, n);
  std::ostringstream os;
  os.precision(17);
  os << "(+";
  for (int term = 0; term < 4; ++term) {
    const double re = scale * u(rng), im = scale * u(rng);
    const int deg = 1 + term % 3;
    std::string mono, cmono;
    for (int d = 0; d < deg; ++d) {
      const int i = idx(rng);
      const bool bar = (d == 1 && term % 2 == 1);
      mono += std::string(" ") + (bar ? "zb" : "z") + std::to_string(i);
      cmono += std::string(" ") + (bar ? "z" : "zb") + std::to_string(i);
    }
    os << " (* [" << re << ", " << im << "]" << mono << ")";
    os << " (* [" << re << ", " << -im << "]" << cmono << ")";
  }
  os << ")";
  return os.str();
}

/// Adds c log|z|^2 to a real polynomial; singular only at the origin.
inline std::string with_log_term(const std::string& poly, double c, int n) {
  std::ostringstream os;
  os.precision(17);
  os << "(+ " << poly << " (* " << c << " (log (+";
  for (int i = 1; i <= n; ++i) os << " (* z" << i << " zb" << i << ")";
  os << "))))";
  return os.str();
}

inline CMatrix random_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(M);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

} // namespace hermcurv::testing
