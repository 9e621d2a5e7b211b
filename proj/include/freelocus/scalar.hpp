#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace freelocus {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

// Exact square root of a nonnegative rational, if it is a perfect square.
inline bool rat_sqrt(const Rat& r, Rat& out) {
  if (sgn(r) < 0) return false;
  const Int& num = r.get_num();
  const Int& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return false;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  out = Rat(sn, sd);
  out.canonicalize();
  return true;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

/// Gaussian rational a + bi with exact arbitrary-precision components.
/// This is the base field for all core computation.
struct Scalar {
  Rat re;
  Rat im;

  Scalar() : re(0), im(0) {}
  Scalar(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rat r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar unit_i() { return Scalar(Rat(0), Rat(1)); }

  bool is_zero() const { return rat_is_zero(re) && rat_is_zero(im); }
  bool is_real() const { return rat_is_zero(im); }
  bool is_one() const { return re == 1 && rat_is_zero(im); }

  Scalar conj() const { return Scalar(re, -im); }
  Rat norm() const { return re * re + im * im; }  // a^2 + b^2

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar operator+(const Scalar& o) const { return Scalar(re + o.re, im + o.im); }
  Scalar operator-(const Scalar& o) const { return Scalar(re - o.re, im - o.im); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  Scalar inv() const {
    Rat n = norm();
    if (rat_is_zero(n)) throw std::domain_error("Scalar: division by zero");
    return Scalar(re / n, -im / n);
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

  Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
  Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

  bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Lexicographic; used only for canonical ordering, not as a field order.
  bool operator<(const Scalar& o) const {
    if (re != o.re) return re < o.re;
    return im < o.im;
  }

  double to_double_re() const { return re.get_d(); }
  double to_double_im() const { return im.get_d(); }
};

// Exact square root in Q(i), if it exists.  z = w^2 requires norm(z) to be a
// rational square; the components of w are then recovered from half-angle
// identities and verified by squaring.
inline bool scalar_sqrt(const Scalar& z, Scalar& out) {
  if (z.is_zero()) { out = Scalar(); return true; }
  Rat n;
  if (!rat_sqrt(z.norm(), n)) return false;
  // w = x + yi with x^2 - y^2 = re, 2xy = im, x^2 + y^2 = n.
  Rat x2 = (z.re + n) / 2;
  Rat y2 = (n - z.re) / 2;
  Rat x, y;
  if (!rat_sqrt(x2, x)) return false;
  if (!rat_sqrt(y2, y)) return false;
  for (int sx = 0; sx < 2; ++sx)
    for (int sy = 0; sy < 2; ++sy) {
      Scalar w(sx ? -x : x, sy ? -y : y);
      if (w * w == z) { out = w; return true; }
    }
  return false;
}

inline Scalar conj_of(const Scalar& s) { return s.conj(); }
inline Rat conj_of(const Rat& r) { return r; }
inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(const Rat& r) { return rat_is_zero(r); }
inline Scalar inv_of(const Scalar& s) { return s.inv(); }
inline Rat inv_of(const Rat& r) {
  if (rat_is_zero(r)) throw std::domain_error("Rat: division by zero");
  return 1 / r;
}

inline std::string to_string(const Scalar& s) {
  if (rat_is_zero(s.im)) return rat_str(s.re);
  std::string imabs = rat_str(abs(s.im)) + "i";
  if (rat_is_zero(s.re)) return (sgn(s.im) < 0 ? "-" : "") + imabs;
  return rat_str(s.re) + (sgn(s.im) < 0 ? "-" : "+") + imabs;
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << to_string(s);
}

}  // namespace freelocus
