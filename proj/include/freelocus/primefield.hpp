#pragma once

#include <cassert>
#include <cstdint>
#include <ostream>
#include <stdexcept>

#include "freelocus/scalar.hpp"

namespace freelocus {

constexpr std::uint64_t kDefaultPrime = (1ull << 31) - 1;  // 2^31 - 1, prime, = 3 mod 4

inline bool is_probable_prime(std::uint64_t p) {
  if (p < 2) return false;
  Int z(static_cast<unsigned long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

/// Element of the prime field F_p.  The modulus rides along per element;
/// modulus 0 marks the neutral constants 0 and 1, which adopt the partner's
/// modulus on first contact (this lets generic kernels write K() and K(1)).
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t modulus) : v(value), p(modulus) {
    if (p) v %= p;
  }

  static Fp from_int(long long x, std::uint64_t p) {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return Fp(static_cast<std::uint64_t>(r), p);
  }

  std::uint64_t join(const Fp& o) const {
    assert(p == 0 || o.p == 0 || p == o.p);
    return p ? p : o.p;
  }

  bool is_zero() const { return v == 0; }
  Fp operator-() const {
    if (!p) { assert(v == 0); return *this; }
    return Fp(v == 0 ? 0 : p - v, p);
  }
  Fp operator+(const Fp& o) const {
    std::uint64_t q = join(o);
    std::uint64_t s = v + o.v;
    if (q && s >= q) s -= q;
    return Fp(s, q);
  }
  Fp operator-(const Fp& o) const {
    std::uint64_t q = join(o);
    Fp neg = q ? Fp(o.v == 0 ? 0 : q - o.v, q) : o;
    return Fp(v, q) + neg;
  }
  Fp operator*(const Fp& o) const {
    std::uint64_t q = join(o);
    if (!q) return Fp(v * o.v, 0);
    return Fp(static_cast<std::uint64_t>((__uint128_t)v * o.v % q), q);
  }
  Fp pow(std::uint64_t e) const {
    Fp r(1, p), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  Fp inv() const {
    if (v == 0) throw std::domain_error("Fp: division by zero");
    if (!p) { assert(v == 1); return *this; }
    return pow(p - 2);
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  bool operator==(const Fp& o) const { return v == o.v; }
  bool operator!=(const Fp& o) const { return !(*this == o); }
};

/// F_p[i] = F_{p^2}: a field when p = 3 (mod 4).  Backend for fast randomized
/// identity testing; exact Q(i) data reduces entrywise when denominators are
/// coprime to p.
struct Fp2 {
  Fp re, im;

  Fp2() = default;
  Fp2(long x) {  // NOLINT(google-explicit-constructor) neutral 0/1 for generic code
    assert(x == 0 || x == 1);
    re = Fp(static_cast<std::uint64_t>(x), 0);
  }
  Fp2(Fp r, Fp i) : re(r), im(i) {}
  static Fp2 zero(std::uint64_t p) { return Fp2(Fp(0, p), Fp(0, p)); }
  static Fp2 one(std::uint64_t p) { return Fp2(Fp(1, p), Fp(0, p)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Fp2 conj() const { return Fp2(re, -im); }
  Fp2 operator-() const { return Fp2(-re, -im); }
  Fp2 operator+(const Fp2& o) const { return Fp2(re + o.re, im + o.im); }
  Fp2 operator-(const Fp2& o) const { return Fp2(re - o.re, im - o.im); }
  Fp2 operator*(const Fp2& o) const {
    return Fp2(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  Fp2 inv() const {
    Fp n = re * re + im * im;
    Fp ni = n.inv();
    return Fp2(re * ni, -(im * ni));
  }
  Fp2 operator/(const Fp2& o) const { return *this * o.inv(); }
  bool operator==(const Fp2& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }
};

// Reduction Q(i) -> F_p[i].  Throws if a denominator vanishes mod p.
inline Fp reduce_mod_p(const Rat& r, std::uint64_t p) {
  Int num = r.get_num(), den = r.get_den();
  Int pz(static_cast<unsigned long>(p));
  Int dn = den % pz;
  if (sgn(dn) == 0) throw std::domain_error("reduce_mod_p: denominator divisible by p");
  Int nn = num % pz;
  if (sgn(nn) < 0) nn += pz;
  Fp a(nn.get_ui(), p), b(dn.get_ui(), p);
  return a / b;
}

inline Fp2 reduce_mod_p(const Scalar& s, std::uint64_t p) {
  return Fp2(reduce_mod_p(s.re, p), reduce_mod_p(s.im, p));
}

inline Fp2 conj_of(const Fp2& x) { return x.conj(); }
inline bool is_zero(const Fp2& x) { return x.is_zero(); }
inline Fp2 inv_of(const Fp2& x) { return x.inv(); }

inline std::ostream& operator<<(std::ostream& os, const Fp2& x) {
  return os << x.re.v << "+" << x.im.v << "i";
}

}  // namespace freelocus
