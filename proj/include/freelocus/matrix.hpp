#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freelocus/rng.hpp"
#include "freelocus/scalar.hpp"

namespace freelocus {

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Float backend used by the numeric cross-checks.
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }

namespace detail {
// ADL trampoline: lets Mat member functions reach is_zero overloads that are
// declared after this header (Fp2, CommPoly, ...).
template <class K>
bool kz(const K& x) { return is_zero(x); }
}  // namespace detail
inline std::complex<double> conj_of(const std::complex<double>& z) { return std::conj(z); }
inline std::complex<double> inv_of(const std::complex<double>& z) { return 1.0 / z; }

/// Dense row-major matrix over an exact field K (Scalar, Rat, Fp2, ...).
template <class K>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols, const K& fill = K())
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }
  static Mat unit(std::size_t n, std::size_t i, std::size_t j) {
    Mat m(n, n);
    m(i, j) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  K& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const K& x : e_)
      if (!detail::kz(x)) return false;
    return true;
  }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] + o.e_[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] - o.e_[i];
    return r;
  }
  Mat operator-() const {
    Mat r = *this;
    for (K& x : r.e_) x = -x;
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("Mat: inner dimensions differ");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& a = (*this)(i, k);
        if (detail::kz(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = r(i, j) + a * o(k, j);
      }
    return r;
  }
  Mat scaled(const K& c) const {
    Mat r = *this;
    for (K& x : r.e_) x = x * c;
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Mat conj_transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = conj_of((*this)(i, j));
    return r;
  }
  Mat conj() const {
    Mat r = *this;
    for (K& x : r.e_) x = conj_of(x);
    return r;
  }

  bool is_hermitian() const {
    if (!is_square()) return false;
    return *this == conj_transpose();
  }

  K trace() const {
    assert(is_square());
    K t = K();
    for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
    return t;
  }

  Mat kron(const Mat& o) const {
    Mat r(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (detail::kz((*this)(i, j))) continue;
        for (std::size_t k = 0; k < o.rows_; ++k)
          for (std::size_t l = 0; l < o.cols_; ++l)
            r(i * o.rows_ + k, j * o.cols_ + l) = (*this)(i, j) * o(k, l);
      }
    return r;
  }

  Mat block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const {
    Mat r(h, w);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < w; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
    return r;
  }

  static Mat direct_sum(const Mat& a, const Mat& b) {
    Mat r(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
    return r;
  }

  static Mat hstack(const Mat& a, const Mat& b) {
    assert(a.rows_ == b.rows_);
    Mat r(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
  }
  static Mat vstack(const Mat& a, const Mat& b) {
    assert(a.cols_ == b.cols_);
    Mat r(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
  }

  std::vector<K> row_vec(std::size_t i) const {
    return std::vector<K>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }
  std::vector<K> col_vec(std::size_t j) const {
    std::vector<K> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<K> flatten() const { return e_; }
  static Mat from_flat(std::size_t rows, std::size_t cols, std::vector<K> flat) {
    Mat m(rows, cols);
    m.e_ = std::move(flat);
    return m;
  }

  Mat apply_to(const std::vector<K>& v) const {  // matrix * column vector
    assert(v.size() == cols_);
    Mat r(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, 0) = r(i, 0) + (*this)(i, j) * v[j];
    return r;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("Mat: shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<K> e_;
};

// --- elimination kernels ---------------------------------------------------

/// Reduced row echelon form in place; returns pivot column indices.
template <class K>
std::vector<std::size_t> rref(Mat<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && is_zero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    K inv = inv_of(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
std::size_t rank(Mat<K> m) {
  return rref(m).size();
}

/// Exact basis of ker M as column vectors; M * v = 0 holds exactly.
template <class K>
std::vector<std::vector<K>> nullspace(Mat<K> m) {
  std::size_t n = m.cols();
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t free_c = 0; free_c < n; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<K> v(n, K());
    v[free_c] = K(1);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      v[pivots[pr]] = -m(pr, free_c);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
K det(Mat<K> m) {
  if (!m.is_square()) throw DimensionMismatch("det: matrix not square");
  std::size_t n = m.rows();
  if (n == 0) return K(1);
  K d = K(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && is_zero(m(sel, c))) ++sel;
    if (sel == n) return K();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = -d;
    }
    d = d * m(c, c);
    K inv = inv_of(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      K f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return d;
}

template <class K>
bool try_inverse(const Mat<K>& m, Mat<K>& out) {
  if (!m.is_square()) throw DimensionMismatch("inverse: matrix not square");
  std::size_t n = m.rows();
  Mat<K> aug = Mat<K>::hstack(m, Mat<K>::identity(n));
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) return false;
  out = aug.block(0, n, n, n);
  return true;
}

template <class K>
Mat<K> inverse(const Mat<K>& m) {
  Mat<K> out;
  if (!try_inverse(m, out)) throw std::domain_error("inverse: singular matrix");
  return out;
}

/// Solve M x = b; returns false when inconsistent.
template <class K>
bool solve(const Mat<K>& m, const std::vector<K>& b, std::vector<K>& x) {
  Mat<K> rhs(m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) rhs(i, 0) = b[i];
  Mat<K> aug = Mat<K>::hstack(m, rhs);
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return false;  // 0 = 1 row
  x.assign(m.cols(), K());
  for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug(pr, m.cols());
  return true;
}

// --- hermitian signature ----------------------------------------------------

struct NotHermitian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inertia (pos, neg, zero) of a hermitian form; invariant under congruence.
struct Signature {
  std::size_t pos = 0, neg = 0, zero = 0;
  bool operator==(const Signature& o) const {
    return pos == o.pos && neg == o.neg && zero == o.zero;
  }
  bool operator!=(const Signature& o) const { return !(*this == o); }
};

inline std::ostream& operator<<(std::ostream& os, const Signature& s) {
  return os << "(" << s.pos << "," << s.neg << "," << s.zero << ")";
}

/// Exact congruence diagonalization H -> S*HS.  A zero diagonal with a nonzero
/// off-diagonal entry h is repaired by adding conj(h) times the partner
/// row/column, which creates the positive pivot 2|h|^2 and realizes the
/// hyperbolic (+1,-1) contribution without square roots.
inline Signature hermitian_signature(Mat<Scalar> h) {
  if (!h.is_hermitian()) throw NotHermitian("hermitian_signature: H != H*");
  std::size_t n = h.rows();
  Signature sig;
  std::vector<bool> done(n, false);
  for (;;) {
    // Congruence row/col ops touch only not-yet-eliminated indices.
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && !h(i, i).is_zero()) piv = i;
    if (piv == n) {
      // All remaining diagonal entries vanish; look for an off-diagonal one.
      std::size_t a = n, b = n;
      for (std::size_t i = 0; i < n && a == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (done[j]) continue;
          if (!h(i, j).is_zero()) { a = i; b = j; break; }
        }
      }
      if (a == n) break;  // remaining block is zero
      Scalar alpha = h(a, b).conj();
      // col_a += alpha * col_b, then row_a += conj(alpha) * row_b.
      for (std::size_t i = 0; i < n; ++i) h(i, a) = h(i, a) + alpha * h(i, b);
      for (std::size_t j = 0; j < n; ++j) h(a, j) = h(a, j) + alpha.conj() * h(b, j);
      continue;
    }
    Scalar d = h(piv, piv);  // real since H hermitian
    if (sgn(d.re) > 0) ++sig.pos; else ++sig.neg;
    Scalar dinv = d.inv();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == piv || done[i] || h(i, piv).is_zero()) continue;
      Scalar f = h(i, piv) * dinv;
      // row_i -= f * row_piv; col_i -= conj(f) * col_piv.
      for (std::size_t j = 0; j < n; ++j) h(i, j) = h(i, j) - f * h(piv, j);
      for (std::size_t j = 0; j < n; ++j) h(j, i) = h(j, i) - f.conj() * h(j, piv);
    }
    done[piv] = true;
  }
  sig.zero = n - sig.pos - sig.neg;
  return sig;
}

// --- random matrices ---------------------------------------------------------

inline Mat<Scalar> random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                                 long bound, bool complex_entries) {
  Mat<Scalar> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rng.next_scalar(bound, complex_entries);
  return m;
}

inline Mat<Scalar> random_invertible(Rng& rng, std::size_t n, long bound,
                                     bool complex_entries) {
  for (;;) {
    Mat<Scalar> m = random_matrix(rng, n, n, bound, complex_entries);
    if (!is_zero(det(m))) return m;
  }
}

inline Mat<Scalar> random_hermitian(Rng& rng, std::size_t n, long bound) {
  Mat<Scalar> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Scalar(rng.next_rat(bound));
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = rng.next_scalar(bound, true);
      m(j, i) = m(i, j).conj();
    }
  }
  return m;
}

template <class K>
std::ostream& operator<<(std::ostream& os, const Mat<K>& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
  }
  return os << "]";
}

}  // namespace freelocus
