#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "freelocus/freepoly.hpp"
#include "freelocus/matrix.hpp"
#include "freelocus/primefield.hpp"
#include "freelocus/rng.hpp"
#include "freelocus/unipoly.hpp"

namespace freelocus {

struct ArityMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ModeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EvalMode { Star, Free };

/// Evaluation point in M_n(Q(i))^k.  Star mode carries one matrix per
/// unstarred letter (x_1..x_g, then y when present) and sends x* to X*.
/// Free mode carries one matrix per letter in the canonical flat order
/// x_1..x_g, x_1*..x_g*, y, y*, treating starred letters independently.
struct MatrixTuple {
  EvalMode mode = EvalMode::Free;
  std::size_t n = 1;
  std::vector<Mat<Scalar>> mats;

  static MatrixTuple star(std::vector<Mat<Scalar>> ms) {
    MatrixTuple t;
    t.mode = EvalMode::Star;
    t.n = ms.empty() ? 1 : ms[0].rows();
    t.mats = std::move(ms);
    return t;
  }
  static MatrixTuple free_tuple(std::vector<Mat<Scalar>> ms) {
    MatrixTuple t;
    t.mode = EvalMode::Free;
    t.n = ms.empty() ? 1 : ms[0].rows();
    t.mats = std::move(ms);
    return t;
  }

  std::size_t arity() const { return mats.size(); }

  void validate() const {
    for (const auto& m : mats)
      if (m.rows() != n || m.cols() != n)
        throw ArityMismatch("MatrixTuple: matrices must be square of equal size");
  }

  /// Image of a letter under this point.
  Mat<Scalar> letter_value(const Letter& l, const Alphabet& alph) const {
    if (mode == EvalMode::Star) {
      std::size_t slot = l.index == 0 ? alph.g : l.index - 1;
      if (slot >= mats.size())
        throw ArityMismatch("MatrixTuple: star-mode tuple too short for " + l.str());
      return l.star ? mats[slot].conj_transpose() : mats[slot];
    }
    std::size_t slot = alph.flat_index(l);
    if (slot >= mats.size()) {
      if (l.star)
        throw ModeMismatch("MatrixTuple: free evaluation of " + l.str() +
                           " without an independent component");
      throw ArityMismatch("MatrixTuple: tuple too short for " + l.str());
    }
    return mats[slot];
  }

  MatrixTuple conj_transposed() const {
    MatrixTuple t = *this;
    for (auto& m : t.mats) m = m.conj_transpose();
    return t;
  }

  static MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b) {
    if (a.mode != b.mode || a.arity() != b.arity())
      throw ArityMismatch("MatrixTuple: direct_sum shape mismatch");
    MatrixTuple t;
    t.mode = a.mode;
    t.n = a.n + b.n;
    for (std::size_t i = 0; i < a.mats.size(); ++i)
      t.mats.push_back(Mat<Scalar>::direct_sum(a.mats[i], b.mats[i]));
    return t;
  }
};

/// f(X) = sum_w f_w (x) w(X); an exact ring homomorphism at every point.
inline Mat<Scalar> evaluate(const MatrixPoly& f, const MatrixTuple& X) {
  X.validate();
  std::size_t n = X.n;
  Mat<Scalar> acc(f.rows() * n, f.cols() * n);
  for (const auto& [w, c] : f.terms()) {
    Mat<Scalar> word_val = Mat<Scalar>::identity(n);
    for (const Letter& l : w.letters())
      word_val = word_val * X.letter_value(l, f.alphabet());
    acc = acc + c.kron(word_val);
  }
  return acc;
}

/// Mod-p evaluation: coefficients and point entries reduce to F_p[i].
inline Mat<Fp2> evaluate_modp(const MatrixPoly& f, const MatrixTuple& X,
                              std::uint64_t p) {
  X.validate();
  std::size_t n = X.n;
  auto reduce_mat = [p](const Mat<Scalar>& m) {
    Mat<Fp2> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce_mod_p(m(i, j), p);
    return r;
  };
  Mat<Fp2> acc(f.rows() * n, f.cols() * n);
  for (const auto& [w, c] : f.terms()) {
    Mat<Fp2> word_val(n, n);
    for (std::size_t i = 0; i < n; ++i) word_val(i, i) = Fp2::one(p);
    for (const Letter& l : w.letters())
      word_val = word_val * reduce_mat(X.letter_value(l, f.alphabet()));
    acc = acc + reduce_mat(c).kron(word_val);
  }
  return acc;
}

/// Float evaluation for the numeric cross-checks.
inline Mat<std::complex<double>> evaluate_float(const MatrixPoly& f,
                                                const MatrixTuple& X) {
  X.validate();
  std::size_t n = X.n;
  auto to_c = [](const Mat<Scalar>& m) {
    Mat<std::complex<double>> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        r(i, j) = {m(i, j).to_double_re(), m(i, j).to_double_im()};
    return r;
  };
  Mat<std::complex<double>> acc(f.rows() * n, f.cols() * n);
  for (const auto& [w, c] : f.terms()) {
    auto word_val = Mat<std::complex<double>>::identity(n);
    for (const Letter& l : w.letters())
      word_val = word_val * to_c(X.letter_value(l, f.alphabet()));
    acc = acc + to_c(c).kron(word_val);
  }
  return acc;
}

// --- affine lines -------------------------------------------------------------

/// One-parameter line X(t) = X0 + t X1 of evaluation points.
struct AffineLine {
  MatrixTuple base;       // X0
  MatrixTuple direction;  // X1

  MatrixTuple at(const Scalar& t) const {
    MatrixTuple p = base;
    for (std::size_t i = 0; i < p.mats.size(); ++i)
      p.mats[i] = p.mats[i] + direction.mats[i].scaled(t);
    return p;
  }
};

/// Exact p(t) = det f(X0 + t X1) by evaluation at t = 0..D and interpolation;
/// D = delta * n * deg f.  For star-mode lines this is the restriction to real
/// parameters, which is the intended reading everywhere it is used.
inline UniPoly<Scalar> det_along_line(const MatrixPoly& f, const AffineLine& line) {
  int degf = std::max(0, f.degree());
  std::size_t D = f.dim() * line.base.n * static_cast<std::size_t>(degf);
  std::vector<Scalar> nodes, values;
  for (std::size_t t = 0; t <= D; ++t) {
    nodes.emplace_back(static_cast<long>(t));
    values.push_back(det(evaluate(f, line.at(nodes.back()))));
  }
  return interpolate(nodes, values);
}

// --- random points ------------------------------------------------------------

inline MatrixTuple random_free_tuple(Rng& rng, std::size_t arity, std::size_t n,
                                     long bound, bool complex_entries) {
  std::vector<Mat<Scalar>> ms;
  for (std::size_t i = 0; i < arity; ++i)
    ms.push_back(random_matrix(rng, n, n, bound, complex_entries));
  return MatrixTuple::free_tuple(std::move(ms));
}

inline MatrixTuple random_star_tuple(Rng& rng, std::size_t g, std::size_t n,
                                     long bound) {
  std::vector<Mat<Scalar>> ms;
  for (std::size_t i = 0; i < g; ++i)
    ms.push_back(random_matrix(rng, n, n, bound, true));
  return MatrixTuple::star(std::move(ms));
}

inline AffineLine random_line(Rng& rng, std::size_t arity, std::size_t n, long bound,
                              bool complex_entries, EvalMode mode = EvalMode::Free) {
  AffineLine l{random_free_tuple(rng, arity, n, bound, complex_entries),
               random_free_tuple(rng, arity, n, bound, complex_entries)};
  l.base.mode = mode;
  l.direction.mode = mode;
  return l;
}

}  // namespace freelocus
