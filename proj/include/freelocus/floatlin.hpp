#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "freelocus/matrix.hpp"

namespace freelocus {

using CMat = Mat<std::complex<double>>;

inline CMat to_cmat(const Mat<Scalar>& m) {
  CMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = {m(i, j).to_double_re(), m(i, j).to_double_im()};
  return r;
}

/// Cyclic Jacobi for hermitian complex matrices.  Returns eigenvalues
/// (ascending); eigenvectors accumulate as columns of V when requested.
inline std::vector<double> hermitian_eigenvalues(CMat a, CMat* vecs = nullptr) {
  std::size_t n = a.rows();
  CMat v = CMat::identity(n);
  const double tol = 1e-14;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off < tol * tol) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double r = std::abs(a(p, q));
        if (r < 1e-300) continue;
        std::complex<double> phase = a(p, q) / r;
        double delta = a(p, p).real() - a(q, q).real();
        double disc = std::sqrt(delta * delta + 4 * r * r);
        double t1 = (-delta + disc) / (2 * r), t2 = (-delta - disc) / (2 * r);
        double t = std::abs(t1) < std::abs(t2) ? t1 : t2;
        double c = 1.0 / std::sqrt(1 + t * t);
        double s = t * c;
        // U differs from I in the (p,q) plane:
        //   U[p][p]=c  U[p][q]=-s*phase  U[q][p]=s*conj(phase)  U[q][q]=c
        for (std::size_t k = 0; k < n; ++k) {  // A <- A U (column update)
          std::complex<double> akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * s * std::conj(phase);
          a(k, q) = -akp * s * phase + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U* A (row update)
          std::complex<double> apk = a(p, k), aqk = a(q, k);
          a(p, k) = apk * c + aqk * s * phase;
          a(q, k) = -apk * s * std::conj(phase) + aqk * c;
        }
        for (std::size_t k = 0; k < n; ++k) {  // V <- V U
          std::complex<double> vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * s * std::conj(phase);
          v(k, q) = -vkp * s * phase + vkq * c;
        }
      }
  }
  std::vector<double> ev(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) { ev[i] = a(i, i).real(); order[i] = i; }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return ev[x] < ev[y];
  });
  std::vector<double> sorted(n);
  CMat vs(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = ev[order[i]];
    for (std::size_t k = 0; k < n; ++k) vs(k, i) = v(k, order[i]);
  }
  if (vecs) *vecs = vs;
  return sorted;
}

/// Floating-point signature oracle with zero threshold.
inline Signature float_signature(const Mat<Scalar>& h, double threshold = 1e-9) {
  auto ev = hermitian_eigenvalues(to_cmat(h));
  Signature s;
  for (double x : ev) {
    if (x > threshold) ++s.pos;
    else if (x < -threshold) ++s.neg;
    else ++s.zero;
  }
  return s;
}

inline double min_eigenvalue(const CMat& h) {
  auto ev = hermitian_eigenvalues(h);
  return ev.empty() ? 0.0 : ev.front();
}

/// Hermitian square root of a PSD matrix (small negative eigenvalues clipped).
inline CMat sqrtm_psd(const CMat& h) {
  CMat v;
  auto ev = hermitian_eigenvalues(h, &v);
  std::size_t n = h.rows();
  CMat d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    d(i, i) = std::sqrt(std::max(0.0, ev[i]));
  return v * d * v.conj_transpose();
}

}  // namespace freelocus
