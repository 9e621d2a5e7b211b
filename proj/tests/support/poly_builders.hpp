#pragma once

#include <vector>

#include "freelocus/evaluate.hpp"
#include "freelocus/freepoly.hpp"

namespace fltest {

using namespace freelocus;

inline MatrixPoly xv(std::uint32_t j) {
  return MatrixPoly::variable({j, false}, analytic_alphabet(j));
}
inline MatrixPoly xsv(std::uint32_t j) {
  return MatrixPoly::variable({j, true}, involutive_alphabet(j));
}
inline MatrixPoly yv() { return MatrixPoly::variable({0, false}, slack_alphabet(0)); }
inline MatrixPoly ysv() { return MatrixPoly::variable({0, true}, slack_alphabet(0)); }
inline MatrixPoly cv(long c, std::uint32_t g = 0) {
  return MatrixPoly::scalar_constant(Scalar(c), analytic_alphabet(g));
}

inline MatrixPoly commutator() { return xv(1) * xv(2) - xv(2) * xv(1); }

/// Entries laid out row-major into a square matrix polynomial.
inline MatrixPoly poly_matrix(std::size_t d, std::vector<MatrixPoly> entries) {
  Alphabet alph = entries[0].alphabet();
  for (const auto& e : entries) alph = Alphabet::join(alph, e.alphabet());
  MatrixPoly out(alph, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const MatrixPoly& e = entries[i * d + j];
      for (const auto& [w, c] : e.terms()) {
        Mat<Scalar> big(d, d);
        big(i, j) = c(0, 0);
        out.add_term(w, std::move(big));
      }
    }
  return out;
}

inline Mat<Scalar> m2(long a, long b, long c, long d) {
  Mat<Scalar> m(2, 2);
  m(0, 0) = Scalar(a); m(0, 1) = Scalar(b); m(1, 0) = Scalar(c); m(1, 1) = Scalar(d);
  return m;
}

}  // namespace fltest
