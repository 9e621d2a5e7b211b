#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "freelocus/matrix.hpp"
#include "freelocus/scalar.hpp"

namespace freelocus {

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Commutative multivariate polynomial over Q(i) in expanded form; exponent
/// vectors of fixed arity.  Only used for the small symbolic cross-checks
/// (generic determinants at n <= 2, pencil coefficient combinations).
class CommPoly {
 public:
  CommPoly() : nvars_(0) {}
  explicit CommPoly(std::size_t nvars) : nvars_(nvars) {}

  static CommPoly constant(std::size_t nvars, const Scalar& c) {
    CommPoly p(nvars);
    if (!c.is_zero()) p.t_[std::vector<std::uint32_t>(nvars, 0)] = c;
    return p;
  }
  static CommPoly var(std::size_t nvars, std::size_t j) {
    CommPoly p(nvars);
    std::vector<std::uint32_t> e(nvars, 0);
    e[j] = 1;
    p.t_[std::move(e)] = Scalar(1);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::map<std::vector<std::uint32_t>, Scalar>& terms() const { return t_; }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
      int s = 0;
      for (auto x : e) s += static_cast<int>(x);
      d = std::max(d, s);
    }
    return d;
  }

  CommPoly operator-() const {
    CommPoly p(nvars_);
    for (const auto& [e, c] : t_) p.t_[e] = -c;
    return p;
  }
  // Mixed arities (e.g. default-constructed zeros from generic matrix code)
  // join to the larger variable set; exponent vectors are padded with zeros.
  CommPoly operator+(const CommPoly& o) const {
    std::size_t nv = std::max(nvars_, o.nvars_);
    CommPoly p(nv);
    for (const auto& [e, c] : t_) p.add_term(padded(e, nv), c);
    for (const auto& [e, c] : o.t_) p.add_term(padded(e, nv), c);
    return p;
  }
  CommPoly operator-(const CommPoly& o) const { return *this + (-o); }
  CommPoly operator*(const CommPoly& o) const {
    std::size_t nv = std::max(nvars_, o.nvars_);
    CommPoly p(nv);
    for (const auto& [e1, c1] : t_)
      for (const auto& [e2, c2] : o.t_) {
        std::vector<std::uint32_t> e(nv, 0);
        for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
        for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
        p.add_term(e, c1 * c2);
      }
    return p;
  }
  CommPoly scaled(const Scalar& s) const {
    CommPoly p(nvars_);
    if (s.is_zero()) return p;
    for (const auto& [e, c] : t_) p.t_[e] = c * s;
    return p;
  }
  bool operator==(const CommPoly& o) const { return t_ == o.t_; }
  bool operator!=(const CommPoly& o) const { return !(*this == o); }

  CommPoly derivative(std::size_t j) const {
    CommPoly p(nvars_);
    for (const auto& [e, c] : t_) {
      if (e[j] == 0) continue;
      std::vector<std::uint32_t> d = e;
      d[j] -= 1;
      p.add_term(d, c * Scalar(static_cast<long>(e[j])));
    }
    return p;
  }

  Scalar eval(const std::vector<Scalar>& x) const {
    Scalar acc;
    for (const auto& [e, c] : t_) {
      Scalar term = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) term *= x[i];
      acc += term;
    }
    return acc;
  }

  void add_term(const std::vector<std::uint32_t>& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

 private:
  static std::vector<std::uint32_t> padded(const std::vector<std::uint32_t>& e,
                                           std::size_t nv) {
    std::vector<std::uint32_t> r(nv, 0);
    for (std::size_t i = 0; i < e.size(); ++i) r[i] = e[i];
    return r;
  }

  std::size_t nvars_;
  std::map<std::vector<std::uint32_t>, Scalar> t_;
};

inline bool is_zero(const CommPoly& p) { return p.is_zero(); }

/// Cofactor-expansion determinant; fine for the tiny symbolic matrices this
/// file exists for.  Throws TooLarge past the guard.
inline CommPoly det_commpoly(const Mat<CommPoly>& m, std::size_t size_guard = 7) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionMismatch("det_commpoly: square nonempty matrix expected");
  std::size_t n = m.rows();
  if (n > size_guard) throw TooLarge("det_commpoly: matrix too large");
  std::size_t nv = m(0, 0).nvars();
  if (n == 1) return m(0, 0);
  CommPoly acc(nv);
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, 0).is_zero()) continue;
    Mat<CommPoly> minor(n - 1, n - 1, CommPoly(nv));
    for (std::size_t r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (std::size_t c = 1; c < n; ++c) minor(rr, c - 1) = m(r, c);
      ++rr;
    }
    CommPoly contrib = m(i, 0) * det_commpoly(minor, size_guard);
    acc = (i % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

}  // namespace freelocus
