#include "hermcurv/scalar_field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hermcurv/errors.hpp"

namespace hermcurv {

using Op = ExprNode::Op;
using NodePtr = std::shared_ptr<const ExprNode>;

// ---------------------------------------------------------------- Domain

Domain Domain::ball(double radius) {
  return Domain{{DomainConstraint{DomainConstraint::Kind::NormRange, 0, 0.0, radius}}};
}

Domain Domain::annulus(double lo, double hi) {
  return Domain{{DomainConstraint{DomainConstraint::Kind::NormRange, 0, lo, hi}}};
}

Domain Domain::coord_disc(int index, double radius) {
  return Domain{{DomainConstraint{DomainConstraint::Kind::CoordDisc, index, 0.0, radius}}};
}

bool Domain::contains(const CPoint& z) const {
  for (const auto& c : constraints) {
    switch (c.kind) {
    case DomainConstraint::Kind::NormRange: {
      const double r = std::sqrt(z.norm2());
      if (!(r < c.hi)) return false;
      if (c.lo > 0.0 && !(r > c.lo)) return false;
      break;
    }
    case DomainConstraint::Kind::CoordDisc:
      if (c.index >= z.dim() || !(std::abs(z[c.index]) < c.hi)) return false;
      break;
    }
  }
  for (const auto& v : z.coords)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Domain Domain::intersect(const Domain& other) const {
  Domain d = *this;
  d.constraints.insert(d.constraints.end(), other.constraints.begin(), other.constraints.end());
  return d;
}

std::string Domain::describe() const {
  if (constraints.empty()) return "C^n";
  std::ostringstream os;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    if (k) os << " and ";
    if (c.kind == DomainConstraint::Kind::NormRange)
      os << c.lo << " < |z| < " << c.hi;
    else
      os << "|z" << c.index + 1 << "| < " << c.hi;
  }
  return os.str();
}

// ---------------------------------------------------------------- builders

namespace {

NodePtr make_node(Op op, std::vector<NodePtr> args, cplx c = {}, int index = 0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->constant = c;
  n->index = index;
  n->args = std::move(args);
  return n;
}

} // namespace

ScalarField::ScalarField() : root_(make_node(Op::Const, {}, 0.0)) {}

ScalarField::ScalarField(NodePtr root, Domain domain) : root_(std::move(root)), domain_(std::move(domain)) {}

ScalarField ScalarField::constant(cplx c) { return ScalarField(make_node(Op::Const, {}, c)); }

ScalarField ScalarField::z(int i) { return ScalarField(make_node(Op::Coord, {}, {}, i)); }

ScalarField ScalarField::zbar(int i) { return ScalarField(make_node(Op::ConjCoord, {}, {}, i)); }

ScalarField ScalarField::norm2(int n) {
  std::vector<NodePtr> terms;
  for (int i = 0; i < n; ++i) terms.push_back((z(i) * zbar(i)).root_ptr());
  if (terms.size() == 1) return ScalarField(terms.front());
  return ScalarField(make_node(Op::Add, std::move(terms)));
}

int ScalarField::min_dimension() const {
  int m = 0;
  std::vector<const ExprNode*> stack{root_.get()};
  while (!stack.empty()) {
    const ExprNode* n = stack.back();
    stack.pop_back();
    if (n->op == Op::Coord || n->op == Op::ConjCoord) m = std::max(m, n->index + 1);
    for (const auto& a : n->args) stack.push_back(a.get());
  }
  return m;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(Op::Add, {a.root_, b.root_}), a.domain_.intersect(b.domain_));
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(Op::Sub, {a.root_, b.root_}), a.domain_.intersect(b.domain_));
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(Op::Mul, {a.root_, b.root_}), a.domain_.intersect(b.domain_));
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(Op::Div, {a.root_, b.root_}), a.domain_.intersect(b.domain_));
}
ScalarField operator-(const ScalarField& a) { return ScalarField(make_node(Op::Neg, {a.root_}), a.domain_); }

ScalarField exp(const ScalarField& f) { return ScalarField(make_node(Op::Exp, {f.root_ptr()}), f.domain()); }
ScalarField log(const ScalarField& f) { return ScalarField(make_node(Op::Log, {f.root_ptr()}), f.domain()); }
ScalarField pow(const ScalarField& f, int k) {
  return ScalarField(make_node(Op::Pow, {f.root_ptr()}, {}, k), f.domain());
}
ScalarField conj(const ScalarField& f) { return ScalarField(make_node(Op::Conj, {f.root_ptr()}), f.domain()); }

// ---------------------------------------------------------------- evaluation

namespace {

void guard(cplx v, const char* what) {
  if (!(std::abs(v) >= ScalarField::kGuard)) throw DomainError(std::string(what) + ": argument too close to 0");
}

void check_coord(int index, const CPoint& z) {
  if (index >= z.dim())
    throw DimensionError("field references z" + std::to_string(index + 1) + " on a point of dimension " +
                         std::to_string(z.dim()));
}

/// Generic evaluator; T is WJet2 or cplx.
template <typename T>
struct Evaluator {
  const CPoint& z;

  T constant(cplx c) const;
  T coord(int i, bool conj) const;

  T eval(const ExprNode& node) const {
    switch (node.op) {
    case Op::Const:
      return constant(node.constant);
    case Op::Coord:
      check_coord(node.index, z);
      return coord(node.index, false);
    case Op::ConjCoord:
      check_coord(node.index, z);
      return coord(node.index, true);
    case Op::Add: {
      T acc = eval(*node.args.front());
      for (std::size_t k = 1; k < node.args.size(); ++k) acc = acc + eval(*node.args[k]);
      return acc;
    }
    case Op::Sub:
      return eval(*node.args[0]) - eval(*node.args[1]);
    case Op::Mul: {
      T acc = eval(*node.args.front());
      for (std::size_t k = 1; k < node.args.size(); ++k) acc = acc * eval(*node.args[k]);
      return acc;
    }
    case Op::Div: {
      T num = eval(*node.args[0]);
      T den = eval(*node.args[1]);
      guard(value_of(den), "division");
      return num / den;
    }
    case Op::Neg:
      return -eval(*node.args[0]);
    case Op::Exp: {
      using std::exp;
      using hermcurv::exp;
      return exp(eval(*node.args[0]));
    }
    case Op::Log: {
      T a = eval(*node.args[0]);
      guard(value_of(a), "log");
      using std::log;
      using hermcurv::log;
      return log(a);
    }
    case Op::Pow: {
      T a = eval(*node.args[0]);
      if (node.index < 0) guard(value_of(a), "negative power");
      return power(a, node.index);
    }
    case Op::Conj: {
      using std::conj;
      using hermcurv::conj;
      return conj(eval(*node.args[0]));
    }
    }
    return constant(0.0);
  }

  static cplx value_of(const cplx& v) { return v; }
  static cplx value_of(const WJet2& j) { return j.value; }
  static cplx power(const cplx& v, int k) { return std::pow(v, k); }
  static WJet2 power(const WJet2& j, int k) { return hermcurv::pow(j, k); }
};

template <>
cplx Evaluator<cplx>::constant(cplx c) const {
  return c;
}
template <>
cplx Evaluator<cplx>::coord(int i, bool conj) const {
  return conj ? std::conj(z[i]) : z[i];
}
template <>
WJet2 Evaluator<WJet2>::constant(cplx c) const {
  return WJet2::constant(z.dim(), c);
}
template <>
WJet2 Evaluator<WJet2>::coord(int i, bool conj) const {
  return WJet2::coordinate(z.dim(), i, conj, conj ? std::conj(z[i]) : z[i]);
}

std::string point_str(const CPoint& z) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < z.dim(); ++i) os << (i ? ", " : "") << z[i];
  os << ")";
  return os.str();
}

} // namespace

WJet2 eval_jet(const ScalarField& field, const CPoint& z) {
  if (!field.domain().contains(z)) throw DomainError("point " + point_str(z) + " outside " + field.domain().describe());
  WJet2 j = Evaluator<WJet2>{z}.eval(field.root());
  if (!j.all_finite()) throw NonFinite("non-finite jet at " + point_str(z));
  return j;
}

cplx eval_value(const ScalarField& field, const CPoint& z) {
  if (!field.domain().contains(z)) throw DomainError("point " + point_str(z) + " outside " + field.domain().describe());
  const cplx v = Evaluator<cplx>{z}.eval(field.root());
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFinite("non-finite value at " + point_str(z));
  return v;
}

WJet2 fd_jet(const ScalarField& field, const CPoint& z, double h) {
  if (!(h > 0.0)) throw DomainError("fd_jet: step must be positive");
  const int n = z.dim();
  const int m = 2 * n;
  // real coordinate k: k < n -> Re z_k, else Im z_{k-n}
  auto shifted = [&](std::initializer_list<std::pair<int, double>> steps) {
    CPoint p = z;
    for (auto [k, s] : steps) p[k % n] += (k < n) ? cplx{s, 0.0} : cplx{0.0, s};
    return eval_value(field, p);
  };

  const cplx f0 = eval_value(field, z);
  Eigen::VectorXcd g(m);
  Eigen::MatrixXcd H(m, m);
  for (int a = 0; a < m; ++a) {
    const cplx fp = shifted({{a, h}});
    const cplx fm = shifted({{a, -h}});
    const cplx fp2 = shifted({{a, 2 * h}});
    const cplx fm2 = shifted({{a, -2 * h}});
    g(a) = (fp - fm) / (2.0 * h);
    H(a, a) = (-fp2 + 16.0 * fp - 30.0 * f0 + 16.0 * fm - fm2) / (12.0 * h * h);
    for (int b = 0; b < a; ++b) {
      const cplx pp = shifted({{a, h}, {b, h}});
      const cplx pm = shifted({{a, h}, {b, -h}});
      const cplx mp = shifted({{a, -h}, {b, h}});
      const cplx mm = shifted({{a, -h}, {b, -h}});
      H(a, b) = H(b, a) = (pp - pm - mp + mm) / (4.0 * h * h);
    }
  }

  // Wirtinger: d_i = (d_x - i d_y)/2, d_ibar = (d_x + i d_y)/2.
  // Row w of P maps real derivatives to the Wirtinger derivative w.
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < n; ++i) {
    P(i, i) = 0.5;
    P(i, n + i) = -0.5 * kI;
    P(n + i, i) = 0.5;
    P(n + i, n + i) = 0.5 * kI;
  }
  WJet2 j(n);
  j.value = f0;
  j.grad = P * g;
  j.hess = P * H * P.transpose();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) j.hess(b, a) = j.hess(a, b);
  return j;
}

// ---------------------------------------------------------------- serialization

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(std::ostream& os, const ExprNode& n) {
  auto nary = [&](const char* op) {
    os << "(" << op;
    for (const auto& a : n.args) {
      os << " ";
      write(os, *a);
    }
    os << ")";
  };
  switch (n.op) {
  case Op::Const:
    if (n.constant.imag() == 0.0)
      os << fmt_double(n.constant.real());
    else
      os << "[" << fmt_double(n.constant.real()) << ", " << fmt_double(n.constant.imag()) << "]";
    break;
  case Op::Coord:
    os << "z" << n.index + 1;
    break;
  case Op::ConjCoord:
    os << "zb" << n.index + 1;
    break;
  case Op::Add:
    nary("+");
    break;
  case Op::Sub:
  case Op::Neg:
    nary("-");
    break;
  case Op::Mul:
    nary("*");
    break;
  case Op::Div:
    nary("/");
    break;
  case Op::Exp:
    nary("exp");
    break;
  case Op::Log:
    nary("log");
    break;
  case Op::Conj:
    nary("conj");
    break;
  case Op::Pow:
    os << "(pow ";
    write(os, *n.args[0]);
    os << " " << n.index << ")";
    break;
  }
}

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr n = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return n;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view token() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '[' || c == ']' || c == ',')
        break;
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return s_.substr(start, pos_ - start);
  }

  double number() {
    const auto t = token();
    double v = 0.0;
    // from_chars for double is available in libstdc++ 11
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) fail("bad number '" + std::string(t) + "'");
    return v;
  }

  int integer() {
    const auto t = token();
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) fail("bad integer '" + std::string(t) + "'");
    return v;
  }

  NodePtr parse_expr() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      const std::string op(token());
      NodePtr out;
      if (op == "pow") {
        NodePtr base = parse_expr();
        const int k = integer();
        out = make_node(Op::Pow, {base}, {}, k);
      } else {
        std::vector<NodePtr> args;
        while (!peek(')')) args.push_back(parse_expr());
        out = build(op, std::move(args));
      }
      expect(')');
      return out;
    }
    if (c == '[') {
      ++pos_;
      const double re = number();
      expect(',');
      const double im = number();
      expect(']');
      return make_node(Op::Const, {}, cplx{re, im});
    }
    if (c == 'z') {
      const auto t = token();
      const bool bar = t.size() > 2 && t[1] == 'b';
      const auto digits = t.substr(bar ? 2 : 1);
      int idx = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || idx < 1)
        fail("bad coordinate '" + std::string(t) + "'");
      return make_node(bar ? Op::ConjCoord : Op::Coord, {}, {}, idx - 1);
    }
    return make_node(Op::Const, {}, number());
  }

  NodePtr build(const std::string& op, std::vector<NodePtr> args) {
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) fail("wrong number of arguments for '" + op + "'");
    };
    if (op == "+") {
      arity(2, SIZE_MAX);
      return make_node(Op::Add, std::move(args));
    }
    if (op == "*") {
      arity(2, SIZE_MAX);
      return make_node(Op::Mul, std::move(args));
    }
    if (op == "-") {
      arity(1, 2);
      return make_node(args.size() == 1 ? Op::Neg : Op::Sub, std::move(args));
    }
    if (op == "/") {
      arity(2, 2);
      return make_node(Op::Div, std::move(args));
    }
    if (op == "exp" || op == "log" || op == "conj") {
      arity(1, 1);
      return make_node(op == "exp" ? Op::Exp : op == "log" ? Op::Log : Op::Conj, std::move(args));
    }
    fail("unknown operator '" + op + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

std::string to_string(const ScalarField& f) {
  std::ostringstream os;
  write(os, f.root());
  return os.str();
}

ScalarField parse_field(std::string_view text, Domain domain) {
  return ScalarField(Parser(text).parse_all(), std::move(domain));
}

} // namespace hermcurv
