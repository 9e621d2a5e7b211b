#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freelocus/commpoly.hpp"
#include "freelocus/evaluate.hpp"
#include "freelocus/freepoly.hpp"

namespace freelocus {

/// Sampling budget for the randomized tests.  The underlying theorems hold
/// "for all but finitely many n" without effective bounds, so sizes and trial
/// counts are tunable budgets and negative verdicts carry confidence notes.
struct SearchBudget {
  std::size_t n_max = 4;
  std::size_t trials = 20;
  long bound = 10;
};

inline bool wants_complex_samples(const MatrixPoly& f) {
  return f.alphabet().ctx != Ctx::Analytic;
}

inline double schwartz_zippel_bound(double degree, long bound, bool complex_entries,
                                    std::size_t trials) {
  double space = complex_entries ? double(2 * bound + 1) * double(2 * bound + 1)
                                 : double(2 * bound + 1);
  double per_trial = std::min(1.0, degree / space);
  return std::pow(per_trial, static_cast<double>(trials));
}

// --- fullness ----------------------------------------------------------------

struct FullnessVerdict {
  bool full = false;
  std::optional<MatrixTuple> witness;  // free tuple over the flattened alphabet
  Scalar witness_det;
  double failure_bound = 1.0;  // for the one-sided negative answer
  std::string note;
};

/// Randomized fullness test: full iff det f(X) != 0 somewhere.  A positive
/// answer returns an exactly verified witness; the negative answer is
/// one-sided Monte Carlo with the stated failure bound.
inline FullnessVerdict fullness_test(const MatrixPoly& f, const SearchBudget& b,
                                     std::uint64_t seed,
                                     std::uint64_t prime = kDefaultPrime) {
  FullnessVerdict v;
  if (f.is_zero()) {
    v.full = false;
    v.failure_bound = 0.0;
    v.note = "zero polynomial; det f vanishes identically";
    return v;
  }
  MatrixPoly flat = f.flattened();
  std::size_t k = flat.alphabet().g;
  bool cplx = wants_complex_samples(f);
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t n = 1; n <= b.n_max; ++n) {
    double dn = static_cast<double>(f.dim() * n * std::max(0, f.degree()));
    worst = std::max(worst, schwartz_zippel_bound(dn, b.bound, cplx, b.trials));
    for (std::size_t t = 0; t < b.trials; ++t) {
      MatrixTuple X = random_free_tuple(rng, k, n, b.bound, cplx);
      bool candidate = true;
      try {
        candidate = !det(evaluate_modp(flat, X, prime)).is_zero();
      } catch (const std::domain_error&) {
        candidate = true;  // denominator hit p; fall through to the exact check
      }
      if (!candidate) continue;
      Scalar d = det(evaluate(flat, X));
      if (!d.is_zero()) {
        v.full = true;
        v.witness = X;
        v.witness_det = d;
        v.note = "witness at size " + std::to_string(n);
        return v;
      }
    }
  }
  v.failure_bound = worst;
  v.note = "no nonzero determinant found up to size " + std::to_string(b.n_max) +
           "; failure bound per Schwartz-Zippel";
  return v;
}

// --- unit test ---------------------------------------------------------------

struct UnitVerdict {
  bool probably_unit = false;
  std::optional<AffineLine> line_witness;       // det f nonconstant on this line
  std::optional<UniPoly<Scalar>> line_poly;
  std::optional<MatrixTuple> point_witness;     // det f = 0, exactly
  std::string note;
};

/// One-sided invertibility test for full f.  Invertible elements have constant
/// nonzero determinant everywhere, so a line with nonconstant determinant or a
/// point with zero determinant is an exact certificate of non-invertibility.
inline UnitVerdict unit_test(const MatrixPoly& f, const SearchBudget& b,
                             std::uint64_t seed) {
  UnitVerdict v;
  MatrixPoly flat = f.flattened();
  std::size_t k = flat.alphabet().g;
  bool cplx = wants_complex_samples(f);
  Rng rng(seed);
  for (std::size_t n = 1; n <= b.n_max; ++n) {
    for (std::size_t t = 0; t < b.trials; ++t) {
      AffineLine line = random_line(rng, k, n, b.bound, cplx);
      UniPoly<Scalar> p = det_along_line(flat, line);
      if (p.degree() >= 1) {
        v.line_witness = line;
        v.line_poly = p;
        v.note = "determinant has degree " + std::to_string(p.degree()) +
                 " along a line at size " + std::to_string(n);
        return v;
      }
      if (p.is_zero()) {
        MatrixTuple X = line.at(Scalar(0));
        if (det(evaluate(flat, X)).is_zero()) {
          v.point_witness = X;
          v.note = "determinant vanishes at a point of size " + std::to_string(n);
          return v;
        }
      }
    }
  }
  v.probably_unit = true;
  v.note = "determinant constant and nonzero along all sampled lines";
  return v;
}

// --- locus degree ------------------------------------------------------------

struct LocusDegreeEstimate {
  std::vector<std::pair<std::size_t, long>> degrees;  // (n, d_n)
  std::optional<long> slope;                          // d with d_n = d*n once stable
  std::string note;
};

inline LocusDegreeEstimate estimate_locus_degree(const MatrixPoly& f,
                                                 const std::vector<std::size_t>& sizes,
                                                 std::size_t trials, long bound,
                                                 std::uint64_t seed) {
  LocusDegreeEstimate est;
  MatrixPoly flat = f.flattened();
  std::size_t k = flat.alphabet().g;
  bool cplx = wants_complex_samples(f);
  Rng rng(seed);
  for (std::size_t n : sizes) {
    long dn = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      AffineLine line = random_line(rng, k, n, bound, cplx);
      dn = std::max(dn, static_cast<long>(det_along_line(flat, line).degree()));
    }
    est.degrees.emplace_back(n, dn);
  }
  if (est.degrees.size() >= 2) {
    auto [n1, d1] = est.degrees[est.degrees.size() - 2];
    auto [n2, d2] = est.degrees.back();
    if (d2 > 0 && d2 % static_cast<long>(n2) == 0) {
      long d = d2 / static_cast<long>(n2);
      if (d1 == d * static_cast<long>(n1)) {
        est.slope = d;
        est.note = "d_n = d*n over the last two sampled sizes";
      }
    }
  }
  if (!est.slope) est.note = "no stable slope across the sampled sizes";
  return est;
}

// --- symbolic generic determinant ---------------------------------------------

/// det f(X^n) as an explicit commutative polynomial in the k*n^2 coordinates
/// w_{j,i,l}; variable index j*n^2 + i*n + l, all zero-based, over the
/// flattened alphabet.  Supported only for n <= 2 and small f.
struct GenericDet {
  std::size_t n = 1;
  std::size_t letters = 0;
  CommPoly poly;

  std::size_t var_index(std::size_t j, std::size_t i, std::size_t l) const {
    return j * n * n + i * n + l;
  }
  CommPoly partial(std::size_t j, std::size_t i, std::size_t l) const {
    return poly.derivative(var_index(j, i, l));
  }
  /// Coordinates of a free tuple over the flattened alphabet.
  static std::vector<Scalar> coords(const MatrixTuple& X) {
    std::vector<Scalar> c;
    for (const auto& m : X.mats)
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t l = 0; l < m.cols(); ++l) c.push_back(m(i, l));
    return c;
  }
};

inline GenericDet symbolic_generic_det(const MatrixPoly& f, std::size_t n) {
  if (n < 1 || n > 2) throw TooLarge("symbolic_generic_det: only n <= 2 supported");
  if (f.term_count() > 64 || f.dim() * n > 6)
    throw TooLarge("symbolic_generic_det: input too large");
  MatrixPoly flat = f.flattened();
  std::size_t k = flat.alphabet().g;
  std::size_t nv = k * n * n;
  std::vector<Mat<CommPoly>> generic;
  for (std::size_t j = 0; j < k; ++j) {
    Mat<CommPoly> g(n, n, CommPoly(nv));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        g(i, l) = CommPoly::var(nv, j * n * n + i * n + l);
    generic.push_back(std::move(g));
  }
  std::size_t d = flat.dim();
  Mat<CommPoly> value(d * n, d * n, CommPoly(nv));
  for (const auto& [w, c] : flat.terms()) {
    Mat<CommPoly> word_val(n, n, CommPoly(nv));
    for (std::size_t i = 0; i < n; ++i) word_val(i, i) = CommPoly::constant(nv, Scalar(1));
    for (const Letter& l : w.letters()) word_val = word_val * generic[l.index - 1];
    // value += c (x) word_val
    for (std::size_t bi = 0; bi < d; ++bi)
      for (std::size_t bj = 0; bj < d; ++bj) {
        if (c(bi, bj).is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t l = 0; l < n; ++l)
            value(bi * n + i, bj * n + l) =
                value(bi * n + i, bj * n + l) + word_val(i, l).scaled(c(bi, bj));
      }
  }
  GenericDet out;
  out.n = n;
  out.letters = k;
  out.poly = det_commpoly(value);
  return out;
}

}  // namespace freelocus
