#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "freelocus/matrix.hpp"
#include "freelocus/primefield.hpp"
#include "freelocus/unipoly.hpp"

namespace freelocus {

/// Reduced row-echelon span with incremental insertion; rows stay normalized
/// so entry growth is controlled across long closure runs.
template <class K>
class EchelonSpan {
 public:
  explicit EchelonSpan(std::size_t width) : width_(width) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<std::vector<K>>& rows() const { return rows_; }

  /// Reduce v against the span.  Returns the (normalized) new row when the
  /// dimension grew, nothing when v was already in the span.
  std::optional<std::vector<K>> insert(std::vector<K> v) {
    reduce(v);
    std::size_t p = pivot_of(v);
    if (p == width_) return std::nullopt;
    K inv = inv_of(v[p]);
    for (auto& x : v) x = x * inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      K f = rows_[r][p];
      if (detail::kz(f)) continue;
      for (std::size_t j = 0; j < width_; ++j)
        rows_[r][j] = rows_[r][j] - f * v[j];
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, v);
    pivots_.insert(pivots_.begin() + pos, p);
    return v;
  }

  bool contains(std::vector<K> v) const {
    reduce(v);
    return pivot_of(v) == width_;
  }

 private:
  void reduce(std::vector<K>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      K f = v[pivots_[r]];
      if (detail::kz(f)) continue;
      for (std::size_t j = 0; j < width_; ++j) v[j] = v[j] - f * rows_[r][j];
    }
  }
  std::size_t pivot_of(const std::vector<K>& v) const {
    for (std::size_t j = 0; j < width_; ++j)
      if (!detail::kz(v[j])) return j;
    return width_;
  }

  std::size_t width_;
  std::vector<std::vector<K>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Basis of the unital algebra generated by square matrices; closed under
/// left multiplication by the generators, which reaches every word.
struct AlgebraClosure {
  std::size_t d = 0;
  std::vector<Mat<Scalar>> basis;  // reduced representatives, starts with I
  std::size_t dim() const { return basis.size(); }
};

inline AlgebraClosure algebra_closure(const std::vector<Mat<Scalar>>& gens,
                                      std::size_t d) {
  AlgebraClosure out;
  out.d = d;
  EchelonSpan<Scalar> span(d * d);
  std::deque<Mat<Scalar>> queue;
  auto push = [&](const Mat<Scalar>& m) {
    if (auto row = span.insert(m.flatten())) {
      Mat<Scalar> red = Mat<Scalar>::from_flat(d, d, std::move(*row));
      out.basis.push_back(red);
      queue.push_back(red);
    }
  };
  push(Mat<Scalar>::identity(d));
  while (!queue.empty()) {
    Mat<Scalar> b = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) push(g * b);
    if (out.basis.size() == d * d) break;  // already everything
  }
  return out;
}

/// Dimension of the mod-p closure; always <= the exact dimension, so a full
/// mod-p count certifies the exact Burnside condition.
inline std::size_t algebra_closure_dim_modp(const std::vector<Mat<Scalar>>& gens,
                                            std::size_t d,
                                            std::uint64_t p = kDefaultPrime) {
  std::vector<Mat<Fp2>> rg;
  for (const auto& g : gens) {
    Mat<Fp2> m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = reduce_mod_p(g(i, j), p);
    rg.push_back(std::move(m));
  }
  EchelonSpan<Fp2> span(d * d);
  std::deque<Mat<Fp2>> queue;
  Mat<Fp2> id(d, d);
  for (std::size_t i = 0; i < d; ++i) id(i, i) = Fp2::one(p);
  auto push = [&](const Mat<Fp2>& m) {
    if (auto row = span.insert(m.flatten()))
      queue.push_back(Mat<Fp2>::from_flat(d, d, std::move(*row)));
  };
  push(id);
  while (!queue.empty() && span.dim() < d * d) {
    Mat<Fp2> b = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : rg) push(g * b);
  }
  return span.dim();
}

/// Jacobson radical of the matrix algebra spanned by `closure.basis`; in
/// characteristic zero this is the kernel of the trace form x -> tr(x b_j).
inline std::vector<Mat<Scalar>> radical_basis(const AlgebraClosure& closure) {
  std::size_t m = closure.basis.size(), d = closure.d;
  if (m == 0) return {};
  Mat<Scalar> gram(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      gram(i, j) = (closure.basis[i] * closure.basis[j]).trace();
  std::vector<Mat<Scalar>> rad;
  for (const auto& combo : nullspace(gram)) {
    Mat<Scalar> x(d, d);
    for (std::size_t i = 0; i < m; ++i)
      if (!combo[i].is_zero()) x = x + closure.basis[i].scaled(combo[i]);
    if (!x.is_zero()) rad.push_back(std::move(x));
  }
  return rad;
}

/// Basis of the commutant {C : C G_j = G_j C for all j}; always contains I.
inline std::vector<Mat<Scalar>> commutant_basis(const std::vector<Mat<Scalar>>& gens,
                                                std::size_t d) {
  std::size_t rows = gens.size() * d * d;
  Mat<Scalar> sys(rows ? rows : 1, d * d);
  std::size_t eq = 0;
  for (const auto& g : gens) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        // sum_s C(r,s) g(s,c) - g(r,s) C(s,c) = 0
        for (std::size_t s = 0; s < d; ++s) {
          sys(eq, r * d + s) = sys(eq, r * d + s) + g(s, c);
          sys(eq, s * d + c) = sys(eq, s * d + c) - g(r, s);
        }
        ++eq;
      }
  }
  std::vector<Mat<Scalar>> out;
  for (const auto& v : nullspace(sys))
    out.push_back(Mat<Scalar>::from_flat(d, d, v));
  return out;
}

/// Minimal polynomial of T over Q(i); monic.
inline UniPoly<Scalar> min_poly(const Mat<Scalar>& T) {
  std::size_t d = T.rows();
  std::vector<std::vector<Scalar>> powers;
  Mat<Scalar> cur = Mat<Scalar>::identity(d);
  powers.push_back(cur.flatten());
  for (std::size_t k = 1; k <= d; ++k) {
    cur = cur * T;
    std::vector<Scalar> target = cur.flatten();
    Mat<Scalar> sys(d * d, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d * d; ++i) sys(i, j) = powers[j][i];
    std::vector<Scalar> coeffs;
    if (solve(sys, target, coeffs)) {
      std::vector<Scalar> mp(k + 1);
      for (std::size_t j = 0; j < k; ++j) mp[j] = -coeffs[j];
      mp[k] = Scalar(1);
      return UniPoly<Scalar>(mp);
    }
    powers.push_back(std::move(target));
  }
  throw std::logic_error("min_poly: no dependency up to the dimension");
}

/// Evaluate q(T) exactly.
inline Mat<Scalar> poly_at_matrix(const UniPoly<Scalar>& q, const Mat<Scalar>& T) {
  std::size_t d = T.rows();
  Mat<Scalar> acc(d, d);
  for (int i = q.degree(); i >= 0; --i) {
    acc = acc * T;
    Scalar c = q.coeff(static_cast<std::size_t>(i));
    if (!c.is_zero()) acc = acc + Mat<Scalar>::identity(d).scaled(c);
  }
  return acc;
}

/// Smallest invariant subspace containing v; basis as echelon rows.
inline std::vector<std::vector<Scalar>> spin(const std::vector<Scalar>& v,
                                             const std::vector<Mat<Scalar>>& gens) {
  std::size_t d = v.size();
  EchelonSpan<Scalar> span(d);
  std::deque<std::vector<Scalar>> queue;
  if (auto row = span.insert(v)) queue.push_back(*row);
  while (!queue.empty() && span.dim() < d) {
    std::vector<Scalar> w = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Mat<Scalar> gv = g.apply_to(w);
      if (auto row = span.insert(gv.col_vec(0))) queue.push_back(*row);
    }
  }
  return span.rows();
}

/// Exact invariance check: G V subset of V for every generator.
inline bool is_invariant_subspace(const std::vector<std::vector<Scalar>>& basis,
                                  const std::vector<Mat<Scalar>>& gens) {
  if (basis.empty()) return false;
  std::size_t d = basis[0].size();
  EchelonSpan<Scalar> span(d);
  for (const auto& b : basis) span.insert(b);
  for (const auto& g : gens)
    for (const auto& b : basis) {
      if (!span.contains(g.apply_to(b).col_vec(0))) return false;
    }
  return true;
}

/// Kernel of M restricted helper: basis vectors of ker q(T).
inline std::vector<std::vector<Scalar>> kernel_of_poly(const UniPoly<Scalar>& q,
                                                       const Mat<Scalar>& T) {
  return nullspace(poly_at_matrix(q, T));
}

}  // namespace freelocus
