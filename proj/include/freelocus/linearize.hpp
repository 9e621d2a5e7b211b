#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freelocus/evaluate.hpp"
#include "freelocus/freepoly.hpp"
#include "freelocus/pencil.hpp"
#include "freelocus/rng.hpp"

namespace freelocus {

struct NotFull : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pencil stably associated to f together with the tracked scale:
/// det f(X) * alpha^n = det L(X) for every X of size n.
struct LinearizationResult {
  LinearPencil pencil;
  Scalar alpha = Scalar(1);
  std::size_t padding_rows = 0;  // size added by Higman borderings
  std::size_t stripped = 0;      // size removed by minimization
};

namespace detail {

// Pick the splitting site: the highest-degree entry (row-major tie-break) and
// its graded-lex-first word of top degree.
struct SplitSite {
  std::size_t row, col;
  Word word;
  Scalar coeff;
};

inline std::optional<SplitSite> find_split(const MatrixPoly& m) {
  std::optional<SplitSite> best;
  int best_deg = 1;
  for (const auto& [w, c] : m.terms()) {
    if (static_cast<int>(w.length()) < 2) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (c(i, j).is_zero()) continue;
        bool better = static_cast<int>(w.length()) > best_deg;
        if (static_cast<int>(w.length()) == best_deg && best &&
            (i < best->row || (i == best->row && j < best->col)))
          better = true;
        if (!best && static_cast<int>(w.length()) >= 2) better = true;
        if (better) {
          best = SplitSite{i, j, w, c(i, j)};
          best_deg = static_cast<int>(w.length());
        }
      }
  }
  return best;
}

}  // namespace detail

/// Higman linearization.  While an entry carries a word of degree >= 2, the
/// term c*w = p*q is split off (p = first letter, q = c * remainder) and the
/// matrix is bordered:
///
///   [ A - c*w*E_rc   p*e_r ]     both transformation factors are unipotent
///   [ -q*e_c^T          1  ],    over the free algebra, so the determinant
///                                identity holds with alpha = 1.
inline LinearizationResult linearize(const MatrixPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("linearize: zero polynomial");
  if (!f.is_square()) throw DimensionMismatch("linearize: square input expected");
  MatrixPoly work = f.flattened();
  Alphabet alph = work.alphabet();
  std::size_t start = work.dim();
  while (auto site = detail::find_split(work)) {
    std::size_t d = work.dim();
    MatrixPoly bigger(alph, d + 1, d + 1);
    // copy A, removing the split term
    for (const auto& [w, c] : work.terms()) {
      Mat<Scalar> big(d + 1, d + 1);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) big(i, j) = c(i, j);
      if (w == site->word) big(site->row, site->col) = Scalar(0);
      bigger.add_term(w, std::move(big));
    }
    // p = first letter, placed at (row, d); q = coeff * rest, negated at (d, col)
    const auto& letters = site->word.letters();
    Word p = Word::single(letters[0]);
    Word q(std::vector<Letter>(letters.begin() + 1, letters.end()));
    {
      Mat<Scalar> cp(d + 1, d + 1);
      cp(site->row, d) = Scalar(1);
      bigger.add_term(p, std::move(cp));
    }
    {
      Mat<Scalar> cq(d + 1, d + 1);
      cq(d, site->col) = -site->coeff;
      bigger.add_term(q, std::move(cq));
    }
    {
      Mat<Scalar> one(d + 1, d + 1);
      one(d, d) = Scalar(1);
      bigger.add_term(Word(), std::move(one));
    }
    work = std::move(bigger);
  }
  LinearizationResult res;
  res.pencil = LinearPencil::from_poly(work);
  res.alpha = Scalar(1);
  res.padding_rows = work.dim() - start;
  return res;
}

namespace detail {

/// Invertible matrix whose last column is v, completed by unit vectors.
inline Mat<Scalar> basis_ending_in(const std::vector<Scalar>& v) {
  std::size_t d = v.size();
  std::vector<std::vector<Scalar>> cols{v};
  for (std::size_t i = 0; i < d && cols.size() < d; ++i) {
    std::vector<Scalar> e(d, Scalar());
    e[i] = Scalar(1);
    Mat<Scalar> trial(d, cols.size() + 1);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < d; ++r) trial(r, c) = cols[c][r];
    for (std::size_t r = 0; r < d; ++r) trial(r, cols.size()) = e[r];
    if (rank(trial) == cols.size() + 1) cols.push_back(std::move(e));
  }
  Mat<Scalar> out(d, d);
  for (std::size_t c = 1; c < cols.size(); ++c)
    for (std::size_t r = 0; r < d; ++r) out(r, c - 1) = cols[c][r];
  for (std::size_t r = 0; r < d; ++r) out(r, d - 1) = v[r];
  return out;
}

/// One constant-column strip; returns false when no column kernel exists.
inline bool strip_column(LinearPencil& l, Scalar& alpha) {
  if (l.d == 0) return false;
  std::vector<std::vector<Scalar>> ker;
  if (l.a.empty()) {
    ker = nullspace(Mat<Scalar>(0, l.d));
  } else {
    Mat<Scalar> stacked = l.a[0];
    for (std::size_t j = 1; j < l.a.size(); ++j)
      stacked = Mat<Scalar>::vstack(stacked, l.a[j]);
    ker = nullspace(stacked);
  }
  if (ker.empty()) return false;
  const auto& v = ker.front();
  Mat<Scalar> a0v = l.a0.apply_to(v);
  if (a0v.is_zero())
    throw NotFull("minimize: zero column after basis change; input not full");
  Mat<Scalar> q1 = basis_ending_in(v);
  Mat<Scalar> p1 = inverse(basis_ending_in(a0v.col_vec(0)));
  LinearPencil t = l.transformed(p1, q1);
  alpha = alpha * det(p1) * det(q1);
  // Last column is now the constant e_d.  Clearing the rest of row d is a
  // product of unimodular column operations (pivot column constant), which
  // only touches row d and keeps the pencil linear.
  for (std::size_t j = 0; j + 1 < t.d; ++j) {
    t.a0(t.d - 1, j) = Scalar(0);
    for (auto& m : t.a) m(t.d - 1, j) = Scalar(0);
  }
  l = t.principal_block(0, t.d - 1);
  return true;
}

}  // namespace detail

/// Strip trivial blocks until the pencil is epic: with v a common kernel
/// vector of A_1..A_k and A_0 v != 0, a constant column is rotated into the
/// last slot, the last row cleared, and the trailing 1x1 identity removed;
/// rows are handled by transposition.  Scale tracking keeps the determinant
/// identity det f(X) * alpha^n = det L(X) exact.
inline LinearizationResult minimize(LinearPencil l, Scalar alpha = Scalar(1)) {
  std::size_t stripped = 0;
  for (;;) {
    if (l.d == 0) break;
    if (detail::strip_column(l, alpha)) {
      ++stripped;
      continue;
    }
    LinearPencil t = l.transposed();
    if (detail::strip_column(t, alpha)) {
      ++stripped;
      l = t.transposed();
      continue;
    }
    break;
  }
  LinearizationResult res;
  res.pencil = std::move(l);
  res.alpha = alpha;
  res.stripped = stripped;
  return res;
}

/// linearize + minimize, with the determinant identity re-verified by
/// sampling when verify_points > 0.
inline LinearizationResult epic_linearization(const MatrixPoly& f,
                                              std::size_t verify_points = 0,
                                              std::uint64_t seed = 1) {
  LinearizationResult lin = linearize(f);
  LinearizationResult min = minimize(lin.pencil, lin.alpha);
  min.padding_rows = lin.padding_rows;
  if (verify_points) {
    MatrixPoly flat = f.flattened();
    Rng rng(seed);
    std::size_t k = flat.alphabet().g;
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::size_t it = 0; it < verify_points; ++it) {
        MatrixTuple X = random_free_tuple(rng, k, n, 5, false);
        Scalar lhs = det(evaluate(flat, X));
        for (std::size_t e = 0; e < n; ++e) lhs *= min.alpha;
        if (lhs != det(min.pencil.eval(X)))
          throw std::logic_error("epic_linearization: determinant identity failed");
      }
  }
  return min;
}

}  // namespace freelocus
