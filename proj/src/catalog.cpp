#include "hermcurv/catalog.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "hermcurv/conformal.hpp"
#include "hermcurv/errors.hpp"

namespace hermcurv {

namespace {

constexpr double kPuncture = 1e-6;

Domain punctured() { return Domain::annulus(kPuncture, std::numeric_limits<double>::infinity()); }

ScalarField c(double v) { return ScalarField::constant(v); }

// z^T A z as a polynomial in z, and its conjugate as a polynomial in zbar.
ScalarField quadratic(const CMatrix& A, bool conjugate) {
  ScalarField q = c(0.0);
  const int n = static_cast<int>(A.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (A(i, j) == cplx{}) continue;
      if (conjugate)
        q = q + ScalarField::constant(std::conj(A(i, j))) * ScalarField::zbar(i) * ScalarField::zbar(j);
      else
        q = q + ScalarField::constant(A(i, j)) * ScalarField::z(i) * ScalarField::z(j);
    }
  return q;
}

ScalarField xi_field(const HopfSpec& spec) {
  return ScalarField::norm2(spec.n) + quadratic(spec.A, false) + quadratic(spec.A, true);
}

std::vector<ScalarField> diagonal(int n, const ScalarField& d) {
  std::vector<ScalarField> g(static_cast<std::size_t>(n * n), c(0.0));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i * n + i)] = d;
  return g;
}

void require_n(int n, int lo) {
  if (n < lo) throw InvalidSpec("chart dimension must be at least " + std::to_string(lo));
}

} // namespace

HopfSpec HopfSpec::isotropic(const CMatrix& A, double a, double c0) {
  HopfSpec s;
  s.n = static_cast<int>(A.rows());
  s.a = a;
  s.multipliers.assign(static_cast<std::size_t>(s.n), cplx{a, 0.0});
  s.A = A;
  s.c0 = c0;
  return s;
}

ChartSpec ChartSpec::euclidean(int n) {
  ChartSpec s;
  s.kind = Kind::Euclidean;
  s.n = n;
  return s;
}

ChartSpec ChartSpec::hopf_standard(int n, double a) {
  ChartSpec s;
  s.kind = Kind::HopfStandard;
  s.n = n;
  s.a = a;
  return s;
}

ChartSpec ChartSpec::admissible(HopfSpec spec) {
  ChartSpec s;
  s.kind = Kind::Admissible;
  s.n = spec.n;
  s.a = spec.a;
  s.hopf = std::move(spec);
  return s;
}

ChartSpec ChartSpec::fs_bergman() {
  ChartSpec s;
  s.kind = Kind::FsBergman;
  s.n = 2;
  return s;
}

ChartSpec ChartSpec::fubini_study(int n) {
  ChartSpec s;
  s.kind = Kind::FubiniStudy;
  s.n = n;
  return s;
}

ChartSpec ChartSpec::complex_hyperbolic(int n) {
  ChartSpec s;
  s.kind = Kind::ComplexHyperbolic;
  s.n = n;
  return s;
}

ChartSpec ChartSpec::conformal(ChartSpec base, std::string f) {
  ChartSpec s;
  s.kind = Kind::Conformal;
  s.n = base.n;
  s.a = base.a;
  s.base = std::make_shared<ChartSpec>(std::move(base));
  s.f = std::move(f);
  return s;
}

ChartSpec ChartSpec::inline_chart(int n, std::vector<std::string> g, Domain domain) {
  ChartSpec s;
  s.kind = Kind::Inline;
  s.n = n;
  s.g = std::move(g);
  s.domain = std::move(domain);
  return s;
}

const char* kind_name(ChartSpec::Kind k) {
  switch (k) {
  case ChartSpec::Kind::Euclidean: return "euclidean";
  case ChartSpec::Kind::HopfStandard: return "hopf_standard";
  case ChartSpec::Kind::Admissible: return "admissible";
  case ChartSpec::Kind::FsBergman: return "fs_bergman";
  case ChartSpec::Kind::FubiniStudy: return "fubini_study";
  case ChartSpec::Kind::ComplexHyperbolic: return "complex_hyperbolic";
  case ChartSpec::Kind::Conformal: return "conformal";
  case ChartSpec::Kind::Inline: return "inline";
  }
  return "?";
}

std::string describe(const ChartSpec& spec) {
  std::ostringstream os;
  os << kind_name(spec.kind) << "(" << spec.n;
  if (spec.kind == ChartSpec::Kind::HopfStandard) os << ", a=" << spec.a;
  if (spec.kind == ChartSpec::Kind::Admissible) {
    os << ", a=" << spec.hopf.a << ", A=[";
    for (int i = 0; i < spec.hopf.A.rows(); ++i)
      for (int j = 0; j < spec.hopf.A.cols(); ++j) os << (i + j ? " " : "") << spec.hopf.A(i, j).real()
                                                        << (spec.hopf.A(i, j).imag() >= 0 ? "+" : "")
                                                        << spec.hopf.A(i, j).imag() << "i";
    os << "], c0=" << spec.hopf.c0;
  }
  if (spec.kind == ChartSpec::Kind::Conformal) os << ", base=" << describe(*spec.base) << ", f=" << spec.f;
  os << ")";
  return os.str();
}

MetricChart make_chart(const ChartSpec& spec) {
  const int n = spec.n;
  using K = ChartSpec::Kind;
  switch (spec.kind) {
  case K::Euclidean:
    require_n(n, 1);
    return MetricChart(n, diagonal(n, c(1.0)), Domain::everywhere(), describe(spec));
  case K::HopfStandard:
    require_n(n, 1);
    if (!(spec.a > 0.0 && spec.a < 1.0)) throw InvalidSpec("Hopf modulus a must lie in (0, 1)");
    return MetricChart(n, diagonal(n, c(1.0) / ScalarField::norm2(n)), punctured(), describe(spec));
  case K::Admissible: {
    const auto v = validate_admissible(spec.hopf);
    if (!v.empty()) {
      std::string msg = "invalid admissible spec:";
      for (const auto& x : v) msg += " [" + x.constraint + "] " + x.message + ";";
      throw InvalidSpec(msg);
    }
    const ScalarField conf = c(spec.hopf.c0) / xi_field(spec.hopf);
    return MetricChart(spec.hopf.n, diagonal(spec.hopf.n, conf), punctured(), describe(spec));
  }
  case K::FsBergman: {
    if (n != 2) throw InvalidSpec("fs_bergman is a surface chart (n = 2)");
    std::vector<ScalarField> g(4, c(0.0));
    const ScalarField r1 = ScalarField::z(0) * ScalarField::zbar(0);
    const ScalarField r2 = ScalarField::z(1) * ScalarField::zbar(1);
    g[0] = c(2.0) / pow(c(1.0) - r1, 2);
    g[3] = c(2.0) / pow(c(1.0) + r2, 2);
    return MetricChart(2, std::move(g), Domain::coord_disc(0, 1.0), describe(spec));
  }
  case K::FubiniStudy:
  case K::ComplexHyperbolic: {
    require_n(n, 1);
    const bool fs = spec.kind == K::FubiniStudy;
    const ScalarField r = ScalarField::norm2(n);
    const ScalarField w = fs ? c(1.0) + r : c(1.0) - r;
    std::vector<ScalarField> g;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const ScalarField off = ScalarField::zbar(i) * ScalarField::z(j) / pow(w, 2);
        ScalarField gij = fs ? -off : off;
        if (i == j) gij = c(1.0) / w + gij;
        g.push_back(gij);
      }
    return MetricChart(n, std::move(g), fs ? Domain::everywhere() : Domain::ball(1.0), describe(spec));
  }
  case K::Conformal: {
    if (!spec.base) throw InvalidSpec("conformal chart needs a base");
    const MetricChart base = make_chart(*spec.base);
    const ScalarField f = parse_field(spec.f);
    if (f.min_dimension() > base.n()) throw InvalidSpec("conformal factor references a coordinate beyond n");
    MetricChart out = rescale(base, f).rescaled;
    return MetricChart(out.n(), out.components(), out.domain(), describe(spec));
  }
  case K::Inline: {
    require_n(n, 1);
    if (spec.g.size() != static_cast<std::size_t>(n * n)) throw InvalidSpec("inline chart needs n*n components");
    std::vector<ScalarField> g;
    for (const auto& s : spec.g) {
      ScalarField f = parse_field(s);
      if (f.min_dimension() > n) throw InvalidSpec("inline component references a coordinate beyond n: " + s);
      g.push_back(f);
    }
    return MetricChart(n, std::move(g), spec.domain, "inline(" + std::to_string(n) + ")");
  }
  }
  throw InvalidSpec("unknown chart kind");
}

std::vector<Violation> validate_admissible(const HopfSpec& spec) {
  std::vector<Violation> out;
  auto fail = [&](std::string c, double margin, std::string msg) { out.push_back({std::move(c), margin, std::move(msg)}); };
  const int n = spec.n;
  if (!(spec.a > 0.0 && spec.a < 1.0))
    fail("modulus", spec.a <= 0.0 ? -spec.a : spec.a - 1.0, "a = " + std::to_string(spec.a) + " outside (0, 1)");
  if (!(spec.c0 > 0.0)) fail("scale", -spec.c0, "c0 = " + std::to_string(spec.c0) + " must be positive");
  if (n < 1 || spec.A.rows() != n || spec.A.cols() != n || spec.multipliers.size() != static_cast<std::size_t>(n)) {
    fail("dimension", 1.0, "A must be n x n and there must be n multipliers");
    return out;
  }
  constexpr double tol = 1e-12;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(std::abs(spec.multipliers[static_cast<std::size_t>(i)]) - spec.a);
    if (d > tol) fail("isosceles", d, "|a_" + std::to_string(i + 1) + "| differs from a by " + std::to_string(d));
  }
  const double asym = (spec.A - spec.A.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol) fail("symmetry", asym, "A - A^T has entry of size " + std::to_string(asym));
  // for symmetric A, A conj(A) = A A^* so its top eigenvalue is the squared top singular value
  Eigen::JacobiSVD<CMatrix> svd(spec.A);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  if (!(smax < 0.5)) {
    std::ostringstream os;
    os << "A*conj(A) eigenvalue " << smax * smax << " >= 0.25";
    fail("spectral bound", smax * smax - 0.25, os.str());
  }
  CMatrix D = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) D(i, i) = spec.multipliers[static_cast<std::size_t>(i)];
  const double eq = (D * spec.A * D - spec.a * spec.a * spec.A).cwiseAbs().maxCoeff();
  if (eq > tol) {
    std::ostringstream os;
    os << "D A D - a^2 A has entry of size " << eq;
    fail("equivariance", eq, os.str());
  }
  return out;
}

double xi_A(const HopfSpec& spec, const CPoint& z) {
  if (z.dim() != spec.n) throw DimensionError("point dimension does not match HopfSpec");
  cplx q = 0.0;
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j) q += z[i] * spec.A(i, j) * z[j];
  return z.norm2() + 2.0 * q.real();
}

double admissible_hsc_reference(const HopfSpec& spec, const CPoint& z) {
  const double xi = xi_A(spec, z);
  if (!(xi > 0.0)) throw DomainError("xi_A is not positive at the point");
  const CVector zv = Eigen::Map<const CVector>(z.coords.data(), spec.n);
  const CVector Az = spec.A * zv;
  const double quart = Az.squaredNorm(); // z^T A conj(A) zbar = |A z|^2 for symmetric A
  const cplx q = zv.transpose() * Az;
  return -(4.0 * quart + 2.0 * q.real()) / (spec.c0 * xi);
}

Curv4 hopf_t3_reference(const CPoint& z) {
  const int n = z.dim();
  const double r = z.norm2();
  if (!(r > 0.0)) throw ZeroPoint("the t = 3 Hopf formula needs z != 0");
  Curv4 out(n, "gauduchon(t=3) reference", "|z| d_i");
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const cplx v = 3.0 * double(kron(k, l) * kron(i, j) - kron(i, l) * kron(j, k)) +
                         (std::conj(z[k]) * z[j] * double(kron(i, l)) + std::conj(z[i]) * z[l] * double(kron(j, k)) +
                          std::conj(z[i]) * z[j] * double(kron(k, l)) - 3.0 * std::conj(z[k]) * z[l] * double(kron(i, j))) /
                             r;
          out(k, l, i, j) = v;
        }
  return out;
}

double circle_residual(double t, double s) {
  const double u = 1.0 - t + t * s;
  return u * u + s * s - 4.0;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> uni{0.0, 1.0};
  std::normal_distribution<double> gauss{0.0, 1.0};

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * uni(rng); }

  CPoint sphere(int n, double radius) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& x : v) {
        x = {gauss(rng), gauss(rng)};
        norm2 += std::norm(x);
      }
    } while (norm2 < 1e-20);
    const double s = radius / std::sqrt(norm2);
    for (auto& x : v) x *= s;
    return CPoint(std::move(v));
  }

  cplx disc(double radius) { return std::polar(uniform(0.0, radius), uniform(0.0, 2.0 * M_PI)); }
};

CPoint draw(const ChartSpec& spec, Sampler& s) {
  using K = ChartSpec::Kind;
  const int n = spec.n;
  switch (spec.kind) {
  case K::HopfStandard:
  case K::Admissible: return s.sphere(n, s.uniform(spec.a + 0.05, 0.95));
  case K::ComplexHyperbolic: return s.sphere(n, s.uniform(0.0, 0.9));
  case K::FsBergman: {
    const cplx z1 = s.disc(0.9);
    const cplx z2 = s.disc(1.5);
    return CPoint{z1, z2};
  }
  case K::Conformal: return draw(*spec.base, s);
  case K::Inline: {
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (const auto& c : spec.domain.constraints)
      if (c.kind == DomainConstraint::Kind::NormRange) {
        lo = std::max(lo, c.lo);
        hi = std::min(hi, c.hi);
      }
    const double rlo = lo > 0.0 ? lo + 0.05 * (std::isfinite(hi) ? hi - lo : 1.0) : 0.0;
    const double rhi = std::isfinite(hi) ? 0.9 * hi : 1.5;
    return s.sphere(n, s.uniform(rlo, std::max(rlo, rhi)));
  }
  case K::Euclidean:
  case K::FubiniStudy: return s.sphere(n, s.uniform(0.0, 1.5));
  }
  return s.sphere(n, 0.5);
}

} // namespace

std::vector<CPoint> sample_points(const ChartSpec& spec, int count, std::uint64_t seed) {
  const MetricChart chart = make_chart(spec);
  Sampler s(seed);
  std::vector<CPoint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * std::max(count, 1)) throw DomainError("could not sample the domain of " + chart.label());
    CPoint z = draw(spec, s);
    if (!chart.domain().contains(z)) continue;
    out.push_back(std::move(z));
  }
  return out;
}

} // namespace hermcurv
