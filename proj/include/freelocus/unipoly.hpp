#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freelocus/matrix.hpp"
#include "freelocus/scalar.hpp"

namespace freelocus {

struct ZeroPolynomial : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Univariate polynomial over an exact field K, ascending coefficients.
/// Leading coefficient is nonzero unless the polynomial is zero.
template <class K>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UniPoly constant(const K& k) { return UniPoly(std::vector<K>{k}); }
  static UniPoly t() { return UniPoly(std::vector<K>{K(), K(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // zero -> -1
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(); }
  K leading() const { return c_.empty() ? K() : c_.back(); }

  K eval(const K& x) const {
    K acc = K();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  UniPoly operator-() const {
    std::vector<K> r(c_);
    for (K& x : r) x = -x;
    return UniPoly(std::move(r));
  }
  UniPoly operator+(const UniPoly& o) const {
    std::vector<K> r(std::max(c_.size(), o.c_.size()), K());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return UniPoly(std::move(r));
  }
  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<K> r(c_.size() + o.c_.size() - 1, K());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (detail::kz(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly scaled(const K& k) const {
    std::vector<K> r(c_);
    for (K& x : r) x = x * k;
    return UniPoly(std::move(r));
  }
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<K> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
    return UniPoly(std::move(r));
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return scaled(inv_of(leading()));
  }

  // Euclidean division; K a field.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw ZeroPolynomial("divmod: division by zero polynomial");
    UniPoly q, r = *this;
    K lead_inv = inv_of(d.leading());
    std::vector<K> qc(degree() >= d.degree() ? degree() - d.degree() + 1 : 0, K());
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      K f = r.leading() * lead_inv;
      qc[shift] = qc[shift] + f;
      std::vector<K> sub(shift + d.c_.size(), K());
      for (std::size_t i = 0; i < d.c_.size(); ++i) sub[shift + i] = d.c_[i] * f;
      r = r - UniPoly(std::move(sub));
    }
    return {UniPoly(std::move(qc)), r};
  }

  bool divides(const UniPoly& other) const {  // *this | other
    if (is_zero()) return other.is_zero();
    return other.divmod(*this).second.is_zero();
  }

  UniPoly pow(unsigned e) const {
    UniPoly r = constant(K(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Substitute t -> a*t + b.
  UniPoly compose_affine(const K& a, const K& b) const {
    UniPoly lin(std::vector<K>{b, a});
    UniPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;)
      acc = acc * lin + constant(c_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::kz(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
UniPoly<K> gcd_poly(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    UniPoly<K> r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// p / gcd(p, p'), monic.  Same roots as p, all simple.
template <class K>
UniPoly<K> squarefree_part(const UniPoly<K>& p) {
  if (p.is_zero()) throw ZeroPolynomial("squarefree_part: zero polynomial");
  UniPoly<K> g = gcd_poly(p, p.derivative());
  if (g.is_constant()) return p.monic();
  return p.divmod(g).first.monic();
}

/// Newton interpolation through (nodes[i], values[i]); nodes distinct.
template <class K>
UniPoly<K> interpolate(const std::vector<K>& nodes, const std::vector<K>& values) {
  std::size_t n = nodes.size();
  std::vector<K> dd(values);  // divided differences, computed in place
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      K denom = nodes[i] - nodes[i - level];
      dd[i] = (dd[i] - dd[i - 1]) * inv_of(denom);
      if (i == level) break;
    }
  UniPoly<K> result;
  for (std::size_t i = n; i-- > 0;) {
    UniPoly<K> lin(std::vector<K>{-nodes[i], K(1)});
    result = result * lin + UniPoly<K>::constant(dd[i]);
  }
  return result;
}

// --- Sturm machinery over the rationals --------------------------------------

inline std::vector<UniPoly<Rat>> sturm_chain(const UniPoly<Rat>& p) {
  std::vector<UniPoly<Rat>> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero()) {
    const UniPoly<Rat>& a = chain[chain.size() - 2];
    const UniPoly<Rat>& b = chain.back();
    chain.push_back(-(a.divmod(b).second));
  }
  chain.pop_back();
  return chain;
}

inline int sign_variations(const std::vector<UniPoly<Rat>>& chain, const Rat& x) {
  int variations = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

inline int sign_variations_at_inf(const std::vector<UniPoly<Rat>>& chain, int dir) {
  int variations = 0, last = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = sgn(q.leading());
    if (dir < 0 && q.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

/// Upper bound on the absolute value of all complex roots.
inline Rat cauchy_bound(const UniPoly<Rat>& p) {
  Rat m(0);
  Rat lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rat v = abs(p.coeff(static_cast<std::size_t>(i))) / lead;
    if (v > m) m = v;
  }
  return m + 1;
}

/// Number of distinct real roots of p in [a, b]; endpoint roots count.
inline long sturm_real_root_count(const UniPoly<Rat>& p, const Rat& a, const Rat& b) {
  if (p.is_zero()) throw ZeroPolynomial("sturm_real_root_count: zero polynomial");
  if (a > b) return 0;
  UniPoly<Rat> sf = squarefree_part(p);
  if (sf.is_constant()) return 0;
  auto chain = sturm_chain(sf);
  // V(a) - V(b) counts roots in (a, b]; a root at the left endpoint is added
  // so that both endpoints count.
  long inside = sign_variations(chain, a) - sign_variations(chain, b);
  return inside + (rat_is_zero(sf.eval(a)) ? 1 : 0);
}

/// Number of distinct real roots of p on the whole line.
inline long sturm_real_root_count(const UniPoly<Rat>& p) {
  if (p.is_zero()) throw ZeroPolynomial("sturm_real_root_count: zero polynomial");
  UniPoly<Rat> sf = squarefree_part(p);
  if (sf.is_constant()) return 0;
  auto chain = sturm_chain(sf);
  return sign_variations_at_inf(chain, -1) - sign_variations_at_inf(chain, +1);
}

/// Isolating open intervals (lo, hi) with non-root endpoints, one per distinct
/// real root of p.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const UniPoly<Rat>& p) {
  if (p.is_zero()) throw ZeroPolynomial("isolate_real_roots: zero polynomial");
  UniPoly<Rat> sf = squarefree_part(p);
  std::vector<std::pair<Rat, Rat>> out;
  if (sf.is_constant()) return out;
  auto chain = sturm_chain(sf);
  Rat bound = cauchy_bound(sf);  // strict: all roots lie inside (-bound, bound)
  auto count_open = [&](const Rat& a, const Rat& b) {
    // non-root endpoints, so (a, b] count equals the open count
    return sign_variations(chain, a) - sign_variations(chain, b);
  };
  // A split point inside (lo, hi) that is not a root of sf.
  auto nonroot_split = [&](const Rat& lo, const Rat& hi) {
    Rat den(2);
    for (;;) {
      for (Rat num(1); num < den; num += 2) {
        Rat cand = lo + (hi - lo) * num / den;
        if (!rat_is_zero(sf.eval(cand))) return cand;
      }
      den *= 2;
    }
  };
  std::vector<std::pair<Rat, Rat>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int c = count_open(lo, hi);
    if (c == 0) continue;
    if (c == 1) {
      out.emplace_back(lo, hi);
      continue;
    }
    Rat mid = nonroot_split(lo, hi);
    stack.push_back({lo, mid});
    stack.push_back({mid, hi});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Shrink an isolating interval of squarefree p below the given width.
inline std::pair<Rat, Rat> refine_root_interval(const UniPoly<Rat>& sf,
                                                std::pair<Rat, Rat> iv,
                                                const Rat& width) {
  auto chain = sturm_chain(sf);
  auto count = [&](const Rat& a, const Rat& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
  };
  while (iv.second - iv.first > width) {
    Rat mid = (iv.first + iv.second) / 2;
    if (rat_is_zero(sf.eval(mid))) return {mid, mid};
    if (count(iv.first, mid) > 0)
      iv.second = mid;
    else
      iv.first = mid;
  }
  return iv;
}

// --- exact rational and Gaussian-rational roots -------------------------------

/// All rational roots of p (exact, complete).  Uses the monic integer
/// transform s = lc * t, whose rational roots are integers, then isolates the
/// real roots of the transform to width < 1 and tests the integer candidates.
inline std::vector<Rat> rational_roots(const UniPoly<Rat>& p) {
  std::vector<Rat> roots;
  if (p.is_zero() || p.is_constant()) return roots;
  UniPoly<Rat> sf = squarefree_part(p);
  // Clear denominators.
  Int common(1);
  for (const Rat& c : sf.coeffs()) {
    Int den = c.get_den();
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<Rat> ic;
  for (const Rat& c : sf.coeffs()) ic.push_back(c * Rat(common));
  UniPoly<Rat> zp(ic);
  Rat lead = zp.leading();
  // h(s) = lead^(n-1) * zp(s / lead) is monic with integer coefficients, so
  // its rational roots are integers; s = lead * t.
  int n = zp.degree();
  std::vector<Rat> hc(static_cast<std::size_t>(n) + 1);
  hc[static_cast<std::size_t>(n)] = Rat(1);
  Rat powv(1);
  for (int i = n - 1; i >= 0; --i) {
    hc[static_cast<std::size_t>(i)] = zp.coeff(static_cast<std::size_t>(i)) * powv;
    powv *= lead;
  }
  UniPoly<Rat> h(hc);
  for (auto iv : isolate_real_roots(h)) {
    iv = refine_root_interval(h, iv, Rat(1, 2));
    Int lo_f, hi_c;
    mpz_fdiv_q(lo_f.get_mpz_t(), iv.first.get_num().get_mpz_t(), iv.first.get_den().get_mpz_t());
    mpz_cdiv_q(hi_c.get_mpz_t(), iv.second.get_num().get_mpz_t(), iv.second.get_den().get_mpz_t());
    for (Int s = lo_f; s <= hi_c; ++s) {
      Rat cand = Rat(s) / lead;
      if (rat_is_zero(sf.eval(cand))) {
        if (std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline UniPoly<Rat> real_part_poly(const UniPoly<Scalar>& p) {
  std::vector<Rat> c;
  for (const Scalar& s : p.coeffs()) c.push_back(s.re);
  return UniPoly<Rat>(c);
}
inline UniPoly<Rat> imag_part_poly(const UniPoly<Scalar>& p) {
  std::vector<Rat> c;
  for (const Scalar& s : p.coeffs()) c.push_back(s.im);
  return UniPoly<Rat>(c);
}
inline UniPoly<Scalar> conj_poly(const UniPoly<Scalar>& p) {
  std::vector<Scalar> c;
  for (const Scalar& s : p.coeffs()) c.push_back(s.conj());
  return UniPoly<Scalar>(c);
}
inline UniPoly<Scalar> to_scalar_poly(const UniPoly<Rat>& p) {
  std::vector<Scalar> c;
  for (const Rat& r : p.coeffs()) c.push_back(Scalar(r));
  return UniPoly<Scalar>(c);
}

// Bivariate polynomials in (a, b) encoded as polynomials in b whose
// coefficients are polynomials in a; used only for the resultant route below.
using BiPoly = std::vector<UniPoly<Rat>>;  // index = power of b

inline void bi_trim(BiPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Fraction-free Bareiss determinant over an integral domain with exact
/// division (polynomials over Q here).
inline UniPoly<Rat> det_bareiss_poly(std::vector<std::vector<UniPoly<Rat>>> m) {
  std::size_t n = m.size();
  if (n == 0) return UniPoly<Rat>::constant(Rat(1));
  UniPoly<Rat> prev = UniPoly<Rat>::constant(Rat(1));
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t sel = k + 1;
      while (sel < n && m[sel][k].is_zero()) ++sel;
      if (sel == n) return UniPoly<Rat>();
      std::swap(m[sel], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        UniPoly<Rat> num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto [q, r] = num.divmod(prev);
        m[i][j] = q;  // Bareiss guarantees exactness; r == 0
      }
    prev = m[k][k];
  }
  UniPoly<Rat> d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

/// Resultant of P and Q with respect to b (entries in Q[a]).
inline UniPoly<Rat> resultant_b(const BiPoly& P, const BiPoly& Q) {
  std::size_t dp = P.size() - 1, dq = Q.size() - 1;
  std::size_t n = dp + dq;
  std::vector<std::vector<UniPoly<Rat>>> syl(n, std::vector<UniPoly<Rat>>(n));
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t c = 0; c <= dp; ++c) syl[r][r + c] = P[dp - c];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t c = 0; c <= dq; ++c) syl[dq + r][r + c] = Q[dq - c];
  return det_bareiss_poly(std::move(syl));
}

/// All roots of p lying in Q(i), found exactly: real rational roots through
/// Sturm isolation, everything else through the resultant of the real and
/// imaginary parts of p(a + bi).  Complete whenever the resultant degree stays
/// within budget (always at desk scale).
inline std::vector<Scalar> gaussian_rational_roots(const UniPoly<Scalar>& p,
                                                   int degree_budget = 24) {
  std::vector<Scalar> roots;
  if (p.is_zero() || p.is_constant()) return roots;
  UniPoly<Scalar> sf = squarefree_part(p);
  auto push = [&roots](const Scalar& s) {
    if (std::find(roots.begin(), roots.end(), s) == roots.end()) roots.push_back(s);
  };

  // Real rational roots: common roots of the real and imaginary parts.
  UniPoly<Rat> u = real_part_poly(sf), v = imag_part_poly(sf);
  UniPoly<Rat> g = v.is_zero() ? u : (u.is_zero() ? v : gcd_poly(u, v));
  if (!g.is_constant())
    for (const Rat& r : rational_roots(g)) push(Scalar(r));

  if (sf.degree() <= 1) return roots;

  // Quadratic formula handles degree two exactly.
  if (sf.degree() == 2) {
    Scalar a = sf.coeff(2), b = sf.coeff(1), c = sf.coeff(0);
    Scalar disc = b * b - Scalar(4) * a * c;
    Scalar sq;
    if (scalar_sqrt(disc, sq)) {
      Scalar two_a_inv = (Scalar(2) * a).inv();
      push((-b + sq) * two_a_inv);
      push((-b - sq) * two_a_inv);
    }
    return roots;
  }

  if (sf.degree() > degree_budget) return roots;

  // General case: lambda = a + bi is a root iff (a, b) solves the real system
  // Re p(a+bi) = Im p(a+bi) = 0.  Eliminate b by a resultant, then recover b.
  int n = sf.degree();
  BiPoly re_part, im_part;
  {
    // (a + bi)^k expanded in powers of b with coefficients in Q(i)[a]:
    // accumulate p(a + bi) = sum_k c_k (a + bi)^k.
    std::vector<std::pair<UniPoly<Rat>, UniPoly<Rat>>> cur;  // (re, im) per b-power
    cur.push_back({UniPoly<Rat>::constant(Rat(1)), UniPoly<Rat>()});
    std::vector<std::vector<std::pair<UniPoly<Rat>, UniPoly<Rat>>>> powers{cur};
    UniPoly<Rat> a_poly = UniPoly<Rat>::t();
    for (int k = 1; k <= n; ++k) {
      const auto& prev = powers.back();
      std::vector<std::pair<UniPoly<Rat>, UniPoly<Rat>>> next(prev.size() + 1,
          {UniPoly<Rat>(), UniPoly<Rat>()});
      for (std::size_t j = 0; j < prev.size(); ++j) {
        // multiply (re + i*im) * (a + i*b): a-part keeps b-power, i*b raises it
        next[j].first = next[j].first + prev[j].first * a_poly;
        next[j].second = next[j].second + prev[j].second * a_poly;
        next[j + 1].first = next[j + 1].first - prev[j].second;
        next[j + 1].second = next[j + 1].second + prev[j].first;
      }
      powers.push_back(std::move(next));
    }
    std::size_t maxb = static_cast<std::size_t>(n) + 1;
    re_part.assign(maxb, UniPoly<Rat>());
    im_part.assign(maxb, UniPoly<Rat>());
    for (int k = 0; k <= n; ++k) {
      Scalar ck = sf.coeff(static_cast<std::size_t>(k));
      if (ck.is_zero()) continue;
      const auto& pw = powers[static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j < pw.size(); ++j) {
        // (cr + i ci)(re + i im) -> real: cr*re - ci*im; imag: cr*im + ci*re
        re_part[j] = re_part[j] + pw[j].first.scaled(ck.re) - pw[j].second.scaled(ck.im);
        im_part[j] = im_part[j] + pw[j].second.scaled(ck.re) + pw[j].first.scaled(ck.im);
      }
    }
    bi_trim(re_part);
    bi_trim(im_part);
  }
  if (re_part.empty() || im_part.empty()) return roots;
  UniPoly<Rat> res = (re_part.size() == 1)
                         ? re_part[0]
                         : (im_part.size() == 1 ? im_part[0] : resultant_b(re_part, im_part));
  if (res.is_zero()) return roots;  // degenerate; covered by quadratic/real paths in practice
  for (const Rat& a_star : rational_roots(res)) {
    // p(a* + i b) as a polynomial in b; find its real rational roots b*.
    UniPoly<Scalar> nu = sf.compose_affine(Scalar::unit_i(), Scalar(a_star));
    UniPoly<Rat> nu_re = real_part_poly(nu), nu_im = imag_part_poly(nu);
    UniPoly<Rat> gg = nu_im.is_zero() ? nu_re
                                      : (nu_re.is_zero() ? nu_im : gcd_poly(nu_re, nu_im));
    if (gg.is_constant()) continue;
    for (const Rat& b_star : rational_roots(gg)) {
      Scalar cand(a_star, b_star);
      if (sf.eval(cand).is_zero()) push(cand);
    }
  }
  return roots;
}

template <class K>
std::ostream& operator<<(std::ostream& os, const UniPoly<K>& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    K c = p.coeff(static_cast<std::size_t>(i));
    if (detail::kz(c)) continue;
    if (!first) os << " + ";
    os << "(" << c << ")";
    if (i > 0) os << "*t";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os;
}

}  // namespace freelocus
