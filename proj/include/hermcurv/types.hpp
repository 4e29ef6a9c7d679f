#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

namespace hermcurv {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

/// A point of a chart domain in C^n.
struct CPoint {
  std::vector<cplx> coords;

  CPoint() = default;
  explicit CPoint(std::vector<cplx> z) : coords(std::move(z)) {}
  CPoint(std::initializer_list<cplx> z) : coords(z) {}

  int dim() const { return static_cast<int>(coords.size()); }
  const cplx& operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  cplx& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }
  double norm2() const {
    double r = 0.0;
    for (const auto& c : coords) r += std::norm(c);
    return r;
  }
};

/// Dense complex array of fixed rank with every extent equal to dim().
/// Index order is exactly the order of the arguments to operator().
template <std::size_t Rank>
class CArray {
public:
  CArray() = default;
  explicit CArray(int dim) : dim_(dim), data_(size_for(dim), cplx{}) {}

  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  template <typename... Idx>
  cplx& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <typename... Idx>
  const cplx& operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  /// Largest absolute entry.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  CArray& operator+=(const CArray& o) {
    assert(o.dim_ == dim_);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CArray& operator-=(const CArray& o) {
    assert(o.dim_ == dim_);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CArray& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend CArray operator+(CArray a, const CArray& b) { return a += b; }
  friend CArray operator-(CArray a, const CArray& b) { return a -= b; }
  friend CArray operator*(cplx s, CArray a) { return a *= s; }

private:
  static std::size_t size_for(int dim) {
    std::size_t s = 1;
    for (std::size_t r = 0; r < Rank; ++r) s *= static_cast<std::size_t>(dim);
    return s;
  }
  std::size_t offset(std::array<int, Rank> idx) const {
    std::size_t off = 0;
    for (std::size_t r = 0; r < Rank; ++r) {
      assert(idx[r] >= 0 && idx[r] < dim_);
      off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx[r]);
    }
    return off;
  }

  int dim_ = 0;
  std::vector<cplx> data_;
};

/// max |a - b| over all entries.
template <std::size_t Rank>
double max_abs_diff(const CArray<Rank>& a, const CArray<Rank>& b) {
  assert(a.dim() == b.dim());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline int kron(int a, int b) { return a == b ? 1 : 0; }

} // namespace hermcurv
