#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hermcurv/connection.hpp"
#include "hermcurv/curvature.hpp"

namespace hermcurv {

/// Isosceles Hopf data: sigma(z) = (a_1 z_1, ..., a_n z_n) with |a_i| = a,
/// and the symmetric matrix A of xi_A = |z|^2 + z^T A z + conj(z^T A z).
struct HopfSpec {
  int n = 2;
  double a = 0.5;
  std::vector<cplx> multipliers;
  CMatrix A;
  double c0 = 1.0;

  /// multipliers all equal to a, given A.
  static HopfSpec isotropic(const CMatrix& A, double a = 0.5, double c0 = 1.0);
};

struct ChartSpec {
  enum class Kind { Euclidean, HopfStandard, Admissible, FsBergman, FubiniStudy, ComplexHyperbolic, Conformal, Inline };

  Kind kind = Kind::Euclidean;
  int n = 2;
  double a = 0.5;                   ///< Hopf modulus, used for the sampling annulus
  HopfSpec hopf;                    ///< Admissible
  std::shared_ptr<ChartSpec> base;  ///< Conformal
  std::string f;                    ///< Conformal factor expression
  std::vector<std::string> g;       ///< Inline components, row-major n x n
  Domain domain;                    ///< Inline

  static ChartSpec euclidean(int n);
  static ChartSpec hopf_standard(int n, double a = 0.5);
  static ChartSpec admissible(HopfSpec spec);
  static ChartSpec fs_bergman();
  static ChartSpec fubini_study(int n);
  static ChartSpec complex_hyperbolic(int n);
  static ChartSpec conformal(ChartSpec base, std::string f);
  static ChartSpec inline_chart(int n, std::vector<std::string> g, Domain domain = {});
};

const char* kind_name(ChartSpec::Kind k);
std::string describe(const ChartSpec& spec);

/// Throws InvalidSpec.
MetricChart make_chart(const ChartSpec& spec);

struct Violation {
  std::string constraint; ///< "modulus", "dimension", "isosceles", "symmetry", "spectral bound", "equivariance", "scale"
  double margin = 0.0;    ///< size of the violation, >= 0 (0 on a closed boundary)
  std::string message;
};

std::vector<Violation> validate_admissible(const HopfSpec& spec);

/// xi_A(z)
double xi_A(const HopfSpec& spec, const CPoint& z);

/// -(4 z^T A Abar zbar + z^T A z + conj(z^T A z)) / (c0 xi_A).
double admissible_hsc_reference(const HopfSpec& spec, const CPoint& z);

/// The closed-form t = 3 Gauduchon curvature of the standard Hopf metric in the frame |z| d_i.
Curv4 hopf_t3_reference(const CPoint& z);

/// (1 - t + t s)^2 + s^2 - 4.
double circle_residual(double t, double s);

/// Seeded sample points in the safe region of a chart.
std::vector<CPoint> sample_points(const ChartSpec& spec, int count, std::uint64_t seed);

} // namespace hermcurv
