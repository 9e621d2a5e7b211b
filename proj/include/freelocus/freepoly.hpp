#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freelocus/matrix.hpp"
#include "freelocus/word.hpp"

namespace freelocus {

struct NotHereditaryQuadratic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Noncommutative matrix polynomial: coefficient map word -> rows x cols
/// matrix over Q(i).  Zero coefficient matrices are never stored.
class MatrixPoly {
 public:
  using CoeffMap = std::map<Word, Mat<Scalar>, WordLess>;

  MatrixPoly() : alph_{0, Ctx::Analytic}, rows_(1), cols_(1) {}
  MatrixPoly(Alphabet alph, std::size_t rows, std::size_t cols)
      : alph_(alph), rows_(rows), cols_(cols) {}

  static MatrixPoly constant(Mat<Scalar> c, Alphabet alph) {
    MatrixPoly p(alph, c.rows(), c.cols());
    p.add_term(Word(), std::move(c));
    return p;
  }
  static MatrixPoly scalar_constant(Scalar c, Alphabet alph) {
    Mat<Scalar> m(1, 1);
    m(0, 0) = std::move(c);
    return constant(std::move(m), alph);
  }
  static MatrixPoly identity(std::size_t n, Alphabet alph) {
    return constant(Mat<Scalar>::identity(n), alph);
  }
  static MatrixPoly variable(Letter l, Alphabet alph) {
    if (!alph.admits(l))
      throw AlphabetMismatch("variable " + l.str() + " not admitted by alphabet");
    MatrixPoly p(alph, 1, 1);
    Mat<Scalar> one(1, 1);
    one(0, 0) = Scalar(1);
    p.add_term(Word::single(l), std::move(one));
    return p;
  }
  static MatrixPoly from_word(const Word& w, Scalar c, Alphabet alph) {
    MatrixPoly p(alph, 1, 1);
    Mat<Scalar> m(1, 1);
    m(0, 0) = std::move(c);
    p.add_term(w, std::move(m));
    return p;
  }

  const Alphabet& alphabet() const { return alph_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t dim() const { return rows_; }
  const CoeffMap& terms() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }
  std::size_t term_count() const { return coef_.size(); }

  int degree() const {
    int d = -1;
    for (const auto& [w, c] : coef_) d = std::max(d, static_cast<int>(w.length()));
    return d;
  }
  bool is_constant() const { return degree() <= 0; }

  Mat<Scalar> coeff(const Word& w) const {
    auto it = coef_.find(w);
    if (it != coef_.end()) return it->second;
    return Mat<Scalar>(rows_, cols_);
  }
  Mat<Scalar> constant_term() const { return coeff(Word()); }

  void add_term(const Word& w, Mat<Scalar> c) {
    if (c.rows() != rows_ || c.cols() != cols_)
      throw DimensionMismatch("MatrixPoly: coefficient shape mismatch");
    if (!alph_.admits(w))
      throw AlphabetMismatch("word " + w.str() + " not admitted by alphabet");
    auto it = coef_.find(w);
    if (it == coef_.end()) {
      if (!c.is_zero()) coef_.emplace(w, std::move(c));
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) coef_.erase(it);
    }
  }

  /// Same data over a (weakly larger) alphabet.
  MatrixPoly with_alphabet(Alphabet alph) const {
    MatrixPoly p(alph, rows_, cols_);
    for (const auto& [w, c] : coef_) p.add_term(w, c);
    return p;
  }

  MatrixPoly operator-() const {
    MatrixPoly p(alph_, rows_, cols_);
    for (const auto& [w, c] : coef_) p.coef_.emplace(w, -c);
    return p;
  }
  MatrixPoly operator+(const MatrixPoly& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("MatrixPoly: shape mismatch in +");
    MatrixPoly p = with_alphabet(Alphabet::join(alph_, o.alph_));
    for (const auto& [w, c] : o.coef_) p.add_term(w, c);
    return p;
  }
  MatrixPoly operator-(const MatrixPoly& o) const { return *this + (-o); }
  MatrixPoly operator*(const MatrixPoly& o) const {
    if (cols_ != o.rows_)
      throw DimensionMismatch("MatrixPoly: inner dimensions differ in *");
    MatrixPoly p(Alphabet::join(alph_, o.alph_), rows_, o.cols_);
    for (const auto& [w1, c1] : coef_)
      for (const auto& [w2, c2] : o.coef_)
        p.add_term(w1.concat(w2), c1 * c2);
    return p;
  }
  MatrixPoly scaled(const Scalar& s) const {
    MatrixPoly p(alph_, rows_, cols_);
    if (s.is_zero()) return p;
    for (const auto& [w, c] : coef_) p.coef_.emplace(w, c.scaled(s));
    return p;
  }
  bool operator==(const MatrixPoly& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && coef_ == o.coef_;
  }
  bool operator!=(const MatrixPoly& o) const { return !(*this == o); }

  /// Involution: (f*)_w = (f_{w*})^dagger.  Promotes an analytic alphabet to
  /// an involutive one when starred letters appear.
  MatrixPoly adjoint() const {
    Alphabet alph = alph_;
    if (alph.ctx == Ctx::Analytic && degree() > 0) alph.ctx = Ctx::Involutive;
    MatrixPoly p(alph, cols_, rows_);
    for (const auto& [w, c] : coef_) p.coef_.emplace(w.adjoint(), c.conj_transpose());
    return p;
  }

  bool is_hermitian() const {
    if (rows_ != cols_) return false;
    return coef_ == adjoint().coef_;
  }

  /// Block-diagonal direct sum; requires identical alphabets.
  static MatrixPoly direct_sum(const MatrixPoly& f, const MatrixPoly& g) {
    if (f.alph_ != g.alph_)
      throw AlphabetMismatch("direct_sum: alphabets differ");
    MatrixPoly p(f.alph_, f.rows_ + g.rows_, f.cols_ + g.cols_);
    for (const auto& [w, c] : f.coef_) {
      Mat<Scalar> big(p.rows_, p.cols_);
      for (std::size_t i = 0; i < f.rows_; ++i)
        for (std::size_t j = 0; j < f.cols_; ++j) big(i, j) = c(i, j);
      p.add_term(w, std::move(big));
    }
    for (const auto& [w, c] : g.coef_) {
      Mat<Scalar> big(p.rows_, p.cols_);
      for (std::size_t i = 0; i < g.rows_; ++i)
        for (std::size_t j = 0; j < g.cols_; ++j) big(f.rows_ + i, f.cols_ + j) = c(i, j);
      p.add_term(w, std::move(big));
    }
    return p;
  }

  /// Entry (i, j) as a 1x1 matrix polynomial.
  MatrixPoly entry(std::size_t i, std::size_t j) const {
    MatrixPoly p(alph_, 1, 1);
    for (const auto& [w, c] : coef_) {
      if (c(i, j).is_zero()) continue;
      Mat<Scalar> m(1, 1);
      m(0, 0) = c(i, j);
      p.add_term(w, std::move(m));
    }
    return p;
  }

  bool is_analytic() const {
    for (const auto& [w, c] : coef_)
      for (const Letter& l : w.letters())
        if (l.star || l.index == 0) return false;
    return true;
  }

  bool uses_slack() const {
    for (const auto& [w, c] : coef_)
      for (const Letter& l : w.letters())
        if (l.index == 0) return true;
    return false;
  }

  /// Forget the involution: letters map bijectively onto x_1..x_k of an
  /// analytic alphabet following the canonical letter order.  This is the
  /// 2g-letter trick used throughout the real-locus decisions.
  MatrixPoly flattened() const {
    if (alph_.ctx == Ctx::Analytic) return *this;
    Alphabet out = analytic_alphabet(static_cast<std::uint32_t>(alph_.letter_count()));
    MatrixPoly p(out, rows_, cols_);
    for (const auto& [w, c] : coef_) {
      std::vector<Letter> nl;
      for (const Letter& l : w.letters())
        nl.push_back({static_cast<std::uint32_t>(alph_.flat_index(l)) + 1, false});
      p.add_term(Word(std::move(nl)), c);
    }
    return p;
  }

 private:
  Alphabet alph_;
  std::size_t rows_, cols_;
  CoeffMap coef_;
};

/// Scalar (1x1) polynomials are matrix polynomials of dimension one.
using FreePoly = MatrixPoly;

// --- point-centered ampliation ------------------------------------------------

/// f^X: substitute the j-th letter by X_j + (fresh y_{j, i, l}) where the
/// fresh letters form an analytic alphabet of k*n^2 variables with the flat
/// order index(j, i, l) = j*n^2 + i*n + l (all zero-based).  Coefficients use
/// the natural Kronecker order f_w (x) E_il, so the evaluation identity
/// f^X(Y~) = f(X (x) I_m + Y) holds on the nose; the shuffled coefficient form
/// is exposed through kron_shuffle below.
inline MatrixPoly ampliate(const MatrixPoly& f, const std::vector<Mat<Scalar>>& point) {
  MatrixPoly flat = f.flattened();
  std::size_t k = flat.alphabet().g;
  if (point.size() != k)
    throw DimensionMismatch("ampliate: point arity differs from letter count");
  std::size_t n = point.empty() ? 1 : point[0].rows();
  for (const auto& m : point)
    if (m.rows() != n || m.cols() != n)
      throw DimensionMismatch("ampliate: point matrices must be square of equal size");

  Alphabet out = analytic_alphabet(static_cast<std::uint32_t>(k * n * n));
  // Letter images X_j + sum E_il y_{jil}.
  std::vector<MatrixPoly> image;
  image.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    MatrixPoly s = MatrixPoly::constant(point[j], out);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        Letter fresh{static_cast<std::uint32_t>(j * n * n + i * n + l + 1), false};
        s.add_term(Word::single(fresh), Mat<Scalar>::unit(n, i, l));
      }
    image.push_back(std::move(s));
  }

  MatrixPoly result(out, flat.rows() * n, flat.cols() * n);
  for (const auto& [w, c] : flat.terms()) {
    MatrixPoly prod = MatrixPoly::identity(n, out);
    for (const Letter& l : w.letters())
      prod = prod * image[l.index - 1];
    for (const auto& [u, m] : prod.terms())
      result.add_term(u, c.kron(m));
  }
  return result;
}

/// Permutation similarity taking M_p (x) M_q coefficients to M_q (x) M_p.
inline Mat<Scalar> kron_shuffle(const Mat<Scalar>& m, std::size_t p, std::size_t q) {
  Mat<Scalar> r(m.rows(), m.cols());
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < q; ++b)
      for (std::size_t c = 0; c < p; ++c)
        for (std::size_t d = 0; d < q; ++d)
          r(b * p + a, d * p + c) = m(a * q + b, c * q + d);
  return r;
}

// --- hereditary quadratic recognition ----------------------------------------

/// alpha + x*v + v*x + x*Hx with hermitian H; reconstructs f exactly.
struct QuadraticForm {
  Rat alpha;
  std::vector<Scalar> v;  // coefficient of x_j* is v_j
  Mat<Scalar> H;          // coefficient of x_i* x_j is H_ij

  MatrixPoly reconstruct(Alphabet alph) const {
    MatrixPoly f = MatrixPoly::scalar_constant(Scalar(alpha), alph);
    for (std::uint32_t j = 0; j < v.size(); ++j) {
      f = f + MatrixPoly::from_word(Word::single({j + 1, true}), v[j], alph);
      f = f + MatrixPoly::from_word(Word::single({j + 1, false}), v[j].conj(), alph);
    }
    for (std::uint32_t i = 0; i < H.rows(); ++i)
      for (std::uint32_t j = 0; j < H.cols(); ++j) {
        if (H(i, j).is_zero()) continue;
        Word w = Word::single({i + 1, true}).concat(Word::single({j + 1, false}));
        f = f + MatrixPoly::from_word(w, H(i, j), alph);
      }
    return f;
  }
};

/// Decompose a hermitian hereditary quadratic scalar polynomial.  Only the
/// words 1, x_j, x_j*, x_i* x_j are admitted.
inline QuadraticForm quadratic_parts(const MatrixPoly& f) {
  if (f.rows() != 1 || f.cols() != 1)
    throw NotHereditaryQuadratic("quadratic_parts: scalar polynomial expected");
  std::uint32_t g = f.alphabet().g;
  QuadraticForm q;
  q.alpha = 0;
  q.v.assign(g, Scalar());
  q.H = Mat<Scalar>(g, g);
  Mat<Scalar> vplain(g, 1);  // coefficients of unstarred x_j, checked at the end
  for (const auto& [w, c] : f.terms()) {
    const Scalar& s = c(0, 0);
    const auto& ls = w.letters();
    if (w.length() == 0) {
      if (!s.is_real()) throw NotHermitian("quadratic_parts: constant term not real");
      q.alpha = s.re;
    } else if (w.length() == 1 && ls[0].index >= 1) {
      if (ls[0].star) q.v[ls[0].index - 1] = s;
      else vplain(ls[0].index - 1, 0) = s;
    } else if (w.length() == 2 && ls[0].index >= 1 && ls[0].star &&
               ls[1].index >= 1 && !ls[1].star) {
      q.H(ls[0].index - 1, ls[1].index - 1) = s;
    } else {
      throw NotHereditaryQuadratic("offending word: " + w.str());
    }
  }
  for (std::uint32_t j = 0; j < g; ++j)
    if (vplain(j, 0) != q.v[j].conj())
      throw NotHermitian("quadratic_parts: linear part not hermitian");
  if (!q.H.is_hermitian()) throw NotHermitian("quadratic_parts: H not hermitian");
  return q;
}

}  // namespace freelocus
