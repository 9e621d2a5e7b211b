#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "freelocus/evaluate.hpp"
#include "freelocus/freepoly.hpp"
#include "freelocus/matrix.hpp"

namespace freelocus {

struct NotMonic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularConstantTerm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linear pencil A0 + A1 z_1 + ... + Ak z_k of size d.  The variables z_j are
/// the canonical letter list of the alphabet (x_1..x_g, x_1*..x_g*, y, y*), so
/// coefficient indices are comparable across pencils over equal alphabets.
struct LinearPencil {
  Alphabet alph;
  std::size_t d = 0;
  Mat<Scalar> a0;
  std::vector<Mat<Scalar>> a;  // one entry per canonical letter

  static LinearPencil zero(Alphabet alph, std::size_t d) {
    LinearPencil p;
    p.alph = alph;
    p.d = d;
    p.a0 = Mat<Scalar>(d, d);
    p.a.assign(alph.letter_count(), Mat<Scalar>(d, d));
    return p;
  }

  std::size_t var_count() const { return a.size(); }

  bool is_monic() const { return a0 == Mat<Scalar>::identity(d); }

  bool operator==(const LinearPencil& o) const {
    return alph == o.alph && d == o.d && a0 == o.a0 && a == o.a;
  }

  /// Exact epicness check: the coefficient block row (A1 ... Ak) and block
  /// column (A1; ...; Ak) both have full rank d.
  bool is_epic() const {
    if (d == 0) return true;
    if (a.empty()) return false;
    Mat<Scalar> row = a[0], col = a[0];
    for (std::size_t j = 1; j < a.size(); ++j) {
      row = Mat<Scalar>::hstack(row, a[j]);
      col = Mat<Scalar>::vstack(col, a[j]);
    }
    return rank(row) == d && rank(col) == d;
  }

  MatrixPoly to_poly() const {
    MatrixPoly f = MatrixPoly::constant(a0, alph);
    std::vector<Letter> ls = alph.letters();
    for (std::size_t j = 0; j < ls.size(); ++j) {
      if (a[j].is_zero()) continue;
      MatrixPoly term(alph, d, d);
      term.add_term(Word::single(ls[j]), a[j]);
      f = f + term;
    }
    return f;
  }

  static LinearPencil from_poly(const MatrixPoly& f) {
    if (f.degree() > 1)
      throw std::invalid_argument("LinearPencil::from_poly: degree exceeds one");
    if (!f.is_square())
      throw DimensionMismatch("LinearPencil::from_poly: square polynomial expected");
    LinearPencil p = zero(f.alphabet(), f.dim());
    for (const auto& [w, c] : f.terms()) {
      if (w.empty())
        p.a0 = c;
      else
        p.a[f.alphabet().flat_index(w.letters()[0])] = c;
    }
    return p;
  }

  LinearPencil adjoint() const { return from_poly(to_poly().adjoint()); }

  /// Plain transpose (no conjugation, no letter permutation); keeps the
  /// alphabet, which matters for coefficient-indexed comparisons.
  LinearPencil transposed() const {
    LinearPencil r = *this;
    r.a0 = a0.transpose();
    for (auto& m : r.a) m = m.transpose();
    return r;
  }

  bool is_hermitian() const { return to_poly().is_hermitian(); }

  /// Evaluation via the polynomial form; tuples follow the alphabet.
  Mat<Scalar> eval(const MatrixTuple& X) const { return evaluate(to_poly(), X); }

  LinearPencil left_mul(const Mat<Scalar>& p) const {
    LinearPencil r = *this;
    r.a0 = p * r.a0;
    for (auto& m : r.a) m = p * m;
    return r;
  }
  LinearPencil right_mul(const Mat<Scalar>& q) const {
    LinearPencil r = *this;
    r.a0 = r.a0 * q;
    for (auto& m : r.a) m = m * q;
    return r;
  }
  LinearPencil transformed(const Mat<Scalar>& p, const Mat<Scalar>& q) const {
    return left_mul(p).right_mul(q);
  }

  LinearPencil principal_block(std::size_t i0, std::size_t size) const {
    LinearPencil r = zero(alph, size);
    r.a0 = a0.block(i0, i0, size, size);
    for (std::size_t j = 0; j < a.size(); ++j) r.a[j] = a[j].block(i0, i0, size, size);
    return r;
  }
};

/// A0^{-1} L; monic and indecomposability-equivalent to L when A0 is regular.
inline LinearPencil monicize(const LinearPencil& l) {
  Mat<Scalar> inv;
  if (!try_inverse(l.a0, inv))
    throw SingularConstantTerm("monicize: constant coefficient is singular");
  LinearPencil r = l.left_mul(inv);
  r.a0 = Mat<Scalar>::identity(l.d);
  return r;
}

}  // namespace freelocus
