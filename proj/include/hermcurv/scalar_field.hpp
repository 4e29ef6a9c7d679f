#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hermcurv/types.hpp"
#include "hermcurv/wjet.hpp"

namespace hermcurv {

/// One constraint of a chart domain. Open sets only.
struct DomainConstraint {
  enum class Kind {
    NormRange, ///< lo < |z| < hi   (lo == 0 admits z = 0)
    CoordDisc, ///< |z_index| < hi
  };
  Kind kind = Kind::NormRange;
  int index = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Intersection of simple open constraints; empty list means all of C^n.
struct Domain {
  std::vector<DomainConstraint> constraints;

  static Domain everywhere() { return {}; }
  static Domain ball(double radius);
  static Domain annulus(double lo, double hi);
  static Domain coord_disc(int index, double radius);

  bool contains(const CPoint& z) const;
  Domain intersect(const Domain& other) const;
  std::string describe() const;
};

/// Node of an immutable expression tree over (z, zbar).
struct ExprNode {
  enum class Op { Const, Coord, ConjCoord, Add, Sub, Mul, Div, Neg, Exp, Log, Pow, Conj };
  Op op = Op::Const;
  cplx constant = {};
  int index = 0; ///< coordinate index (0-based) or integer exponent for Pow
  std::vector<std::shared_ptr<const ExprNode>> args;
};

/// A scalar field on a chart: an expression tree plus the domain it is declared on.
///
/// Log, division and negative integer powers carry a guard: evaluation throws
/// DomainError when the argument magnitude drops below kGuard.
class ScalarField {
public:
  static constexpr double kGuard = 1e-14;

  ScalarField(); ///< the zero constant
  ScalarField(std::shared_ptr<const ExprNode> root, Domain domain = {});

  static ScalarField constant(cplx c);
  static ScalarField z(int i);
  static ScalarField zbar(int i);
  /// |z|^2 = sum_i z_i zbar_i on C^n.
  static ScalarField norm2(int n);

  const ExprNode& root() const { return *root_; }
  const std::shared_ptr<const ExprNode>& root_ptr() const { return root_; }
  const Domain& domain() const { return domain_; }
  ScalarField with_domain(Domain d) const { return ScalarField(root_, std::move(d)); }

  /// Largest coordinate index referenced plus one.
  int min_dimension() const;

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a);

private:
  std::shared_ptr<const ExprNode> root_;
  Domain domain_;
};

ScalarField exp(const ScalarField& f);
ScalarField log(const ScalarField& f);
ScalarField pow(const ScalarField& f, int k);
ScalarField conj(const ScalarField& f);

/// Exact Wirtinger 2-jet by forward propagation through the tree.
/// Throws DomainError (z outside the domain or a guard fails) or NonFinite.
WJet2 eval_jet(const ScalarField& field, const CPoint& z);

/// Plain value of the field.
cplx eval_value(const ScalarField& field, const CPoint& z);

/// Central-difference approximation of the 2-jet in the 2n real coordinates,
/// converted to Wirtinger form. Second derivatives use the 5-point stencil on
/// the diagonal and the 4-point cross stencil off it.
/// Throws DomainError if a stencil point leaves the domain.
WJet2 fd_jet(const ScalarField& field, const CPoint& z, double h = 1e-4);

/// Prefix-expression serialization.
///
///   expr    := number | '[' number ',' number ']' | 'z' INT | 'zb' INT
///            | '(' op expr+ ')'
///   op      := '+' | '*'            n-ary
///            | '-'                  unary negation or binary subtraction
///            | '/'                  binary
///            | 'exp' | 'log' | 'conj'  unary
///            | 'pow' expr INT       integer power
///
/// Coordinates are 1-based: z1 is the first coordinate, zb1 its conjugate.
/// Example: (log (+ (* z1 zb1) (* z2 zb2))) is log |z|^2 on C^2.
std::string to_string(const ScalarField& f);
ScalarField parse_field(std::string_view text, Domain domain = {});

} // namespace hermcurv
