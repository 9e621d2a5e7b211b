#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freelocus/evaluate.hpp"
#include "freelocus/floatlin.hpp"
#include "freelocus/oracle.hpp"
#include "freelocus/freepoly.hpp"
#include "freelocus/rng.hpp"

namespace freelocus {

struct ConstantF : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SlackInF : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoPositivityWitness : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedCertificate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Positions where the subword y'y (= y* y) occurs.
inline std::vector<std::size_t> slack_sites(const Word& w) {
  std::vector<std::size_t> out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i + 1 < ls.size(); ++i)
    if (ls[i].index == 0 && ls[i].star && ls[i + 1].index == 0 && !ls[i + 1].star)
      out.push_back(i);
  return out;
}

}  // namespace detail

inline bool is_normal_form(const MatrixPoly& h) {
  for (const auto& [w, c] : h.terms())
    if (!detail::slack_sites(w).empty()) return false;
  return true;
}

inline void check_slack_inputs(const MatrixPoly& h, const MatrixPoly& f) {
  if (h.rows() != 1 || h.cols() != 1 || f.rows() != 1 || f.cols() != 1)
    throw DimensionMismatch("slack reduction: scalar polynomials expected");
  if (f.is_constant()) throw ConstantF("slack reduction: f must be nonconstant");
  if (f.uses_slack()) throw SlackInF("slack reduction: f must not contain y or y*");
}

/// Normal form of h modulo the two-sided ideal (f - y*y): the subword y*y is
/// replaced by f until no word contains it.  The reduction order is
/// irrelevant by confluence (a tested invariant); site_rng, when supplied,
/// randomizes the choice of rewrite site for exactly that test.
inline MatrixPoly slack_reduce(const MatrixPoly& h, const MatrixPoly& f,
                               Rng* site_rng = nullptr) {
  check_slack_inputs(h, f);
  Alphabet slack = slack_alphabet(std::max(h.alphabet().g, f.alphabet().g));
  MatrixPoly cur = h.with_alphabet(slack);
  MatrixPoly fs = f.with_alphabet(slack);
  for (;;) {
    // collect reducible (word, site) pairs
    std::vector<std::pair<Word, std::size_t>> sites;
    for (const auto& [w, c] : cur.terms()) {
      auto ss = detail::slack_sites(w);
      if (ss.empty()) continue;
      if (site_rng) {
        for (std::size_t s : ss) sites.emplace_back(w, s);
      } else {
        sites.emplace_back(w, ss.front());  // leftmost site of the first word
        break;
      }
    }
    if (sites.empty()) return cur;
    const auto& [word, pos] =
        site_rng ? sites[static_cast<std::size_t>(
                       site_rng->next_int(0, static_cast<long>(sites.size()) - 1))]
                 : sites.front();
    Scalar coeff = cur.coeff(word)(0, 0);
    Mat<Scalar> neg(1, 1);
    neg(0, 0) = -coeff;
    cur.add_term(word, neg);
    const auto& ls = word.letters();
    Word prefix(std::vector<Letter>(ls.begin(), ls.begin() + pos));
    Word suffix(std::vector<Letter>(ls.begin() + pos + 2, ls.end()));
    for (const auto& [u, gamma] : fs.terms()) {
      Word nw = prefix.concat(u).concat(suffix);
      Mat<Scalar> add(1, 1);
      add(0, 0) = coeff * gamma(0, 0);
      cur.add_term(nw, add);
    }
  }
}

struct MembershipVerdict {
  bool member = false;
  MatrixPoly normal_form;  // zero iff member
};

/// h in (f - y*y) iff the normal form vanishes.
inline MembershipVerdict is_member(const MatrixPoly& h, const MatrixPoly& f) {
  MembershipVerdict v;
  v.normal_form = slack_reduce(h, f);
  v.member = v.normal_form.is_zero();
  return v;
}

// --- positivity witness -------------------------------------------------------------

/// Star-evaluation search for a point with f(X, X*) positive definite.  The
/// zero tuple is probed first, then integer and small-fraction samples (the
/// positivity region is often inside the unit ball).
inline std::optional<MatrixTuple> positivity_witness(const MatrixPoly& f,
                                                     const SearchBudget& b,
                                                     std::uint64_t seed) {
  Rng rng(seed);
  std::uint32_t g = f.alphabet().g;
  auto good = [&f](const MatrixTuple& X) {
    Signature s = hermitian_signature(evaluate(f, X));
    return s.neg == 0 && s.zero == 0;
  };
  for (std::size_t n = 1; n <= b.n_max; ++n) {
    MatrixTuple zero = MatrixTuple::star(
        std::vector<Mat<Scalar>>(g, Mat<Scalar>(n, n)));
    if (good(zero)) return zero;
    for (std::size_t t = 0; t < b.trials; ++t) {
      MatrixTuple X = random_star_tuple(rng, g, n, b.bound);
      if (t % 2 == 1) {
        Scalar shrink(make_rat(1, 2 * b.bound + 1));
        for (auto& m : X.mats) m = m.scaled(shrink);
      }
      if (good(X)) return X;
    }
  }
  return std::nullopt;
}

// --- Positivstellensatz certificates ---------------------------------------------------

/// h = f0 + sum_j fj* fj with f0 in (f - y*y); verification reduces f0 and
/// spot-checks positivity of h on sampled points of {f >= 0} in floats.
struct PsatzCertificate {
  std::vector<MatrixPoly> fj;
};

struct PsatzResult {
  bool accepted = false;
  MatrixPoly residual_normal_form;  // nonzero on rejection
  bool spot_check_ok = true;
  double spot_min_eig = 0.0;
  std::size_t spot_samples = 0;
  std::string note;
};

inline PsatzResult verify_psatz(const MatrixPoly& h, const MatrixPoly& f,
                                const PsatzCertificate& cert, const SearchBudget& b,
                                std::uint64_t seed, std::size_t spot_samples = 50) {
  quadratic_parts(f);  // NotHereditaryQuadratic / NotHermitian on violation
  if (!positivity_witness(f, b, seed))
    throw NoPositivityWitness("verify_psatz: no point with f(X,X*) > 0 found");
  for (const auto& fj : cert.fj)
    if (fj.rows() != 1 || fj.cols() != 1)
      throw MalformedCertificate("verify_psatz: certificate entries must be scalar");

  Alphabet slack = slack_alphabet(std::max(h.alphabet().g, f.alphabet().g));
  MatrixPoly f0 = h.with_alphabet(slack);
  for (const auto& fj : cert.fj) {
    MatrixPoly t = fj.with_alphabet(slack);
    f0 = f0 - t.adjoint() * t;
  }
  PsatzResult res;
  MembershipVerdict mv = is_member(f0, f);
  res.residual_normal_form = mv.normal_form;
  res.accepted = mv.member;
  if (!res.accepted) {
    res.note = "residual f0 = h - sum fj* fj is not in the slack ideal";
    return res;
  }

  // Float spot-check: on sampled points with f(X,X*) psd, h must be psd up to
  // 1e-8 (lifting y to the hermitian square root of f(X,X*)).
  Rng rng(seed ^ 0x51ac5eedu);
  std::uint32_t g = slack.g;
  double worst = 1e9;
  std::size_t accepted_samples = 0;
  for (std::size_t tries = 0; tries < spot_samples * 40 && accepted_samples < spot_samples;
       ++tries) {
    std::size_t n = 1 + tries % 2;
    MatrixTuple X = random_star_tuple(rng, g, n, 2);
    Mat<Scalar> fx = evaluate(f.with_alphabet(slack), X);
    CMat fxc = to_cmat(fx);
    if (min_eigenvalue(fxc) < -1e-12) continue;
    ++accepted_samples;
    CMat y = sqrtm_psd(fxc);
    // assemble the full slack assignment x, x*, y, y*
    std::vector<Mat<std::complex<double>>> images;
    auto to_c = [](const Mat<Scalar>& m) {
      CMat r(m.rows(), m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          r(i, j) = {m(i, j).to_double_re(), m(i, j).to_double_im()};
      return r;
    };
    std::vector<CMat> flat;
    for (std::uint32_t j = 0; j < g; ++j) flat.push_back(to_c(X.mats[j]));
    for (std::uint32_t j = 0; j < g; ++j) flat.push_back(to_c(X.mats[j]).conj_transpose());
    flat.push_back(y);
    flat.push_back(y.conj_transpose());
    // evaluate h over complex doubles
    MatrixPoly hs = h.with_alphabet(slack);
    CMat acc(hs.rows() * n, hs.cols() * n);
    for (const auto& [w, c] : hs.terms()) {
      CMat word_val = CMat::identity(n);
      for (const Letter& l : w.letters()) word_val = word_val * flat[slack.flat_index(l)];
      acc = acc + to_c(c).kron(word_val);
    }
    CMat herm = acc + acc.conj_transpose();
    for (std::size_t i = 0; i < herm.rows(); ++i)
      for (std::size_t j = 0; j < herm.cols(); ++j) herm(i, j) = herm(i, j) * 0.5;
    worst = std::min(worst, min_eigenvalue(herm));
  }
  res.spot_samples = accepted_samples;
  res.spot_min_eig = worst;
  res.spot_check_ok = worst >= -1e-8;
  res.note = res.spot_check_ok ? "accepted; float positivity spot-check passed"
                               : "membership accepted but the float spot-check failed";
  return res;
}

// --- hard-zero consistency --------------------------------------------------------------

struct ConsistencyReport {
  std::size_t samples = 0;
  Rat max_deviation = Rat(0);
  bool all_zero = true;
};

/// Evaluate h at (X, Y, f(X) Y^{-1}) for random X and invertible Y; members of
/// (f - y*y) must vanish identically on these points.
inline ConsistencyReport sample_hard_zero_consistency(const MatrixPoly& f,
                                                      const MatrixPoly& h, std::size_t n,
                                                      std::size_t samples,
                                                      std::uint64_t seed, long bound = 4) {
  if (!f.is_analytic() || f.is_constant())
    throw std::invalid_argument("sample_hard_zero_consistency: f must be analytic nonconstant");
  Alphabet slack = slack_alphabet(std::max(h.alphabet().g, f.alphabet().g));
  MatrixPoly hs = h.with_alphabet(slack);
  MatrixPoly fs = f.with_alphabet(slack);
  std::uint32_t g = slack.g;
  Rng rng(seed);
  ConsistencyReport rep;
  while (rep.samples < samples) {
    std::vector<Mat<Scalar>> xs;
    for (std::uint32_t j = 0; j < g; ++j) xs.push_back(random_matrix(rng, n, n, bound, true));
    Mat<Scalar> y = random_matrix(rng, n, n, bound, true);
    if (is_zero(det(y))) continue;
    ++rep.samples;
    Mat<Scalar> fx = evaluate(fs, MatrixTuple::free_tuple(xs));
    Mat<Scalar> ystar = fx * inverse(y);
    std::vector<Mat<Scalar>> flat;
    for (std::uint32_t j = 0; j < g; ++j) flat.push_back(xs[j]);
    for (std::uint32_t j = 0; j < g; ++j) flat.push_back(xs[j].conj_transpose());
    flat.push_back(y);
    flat.push_back(ystar);
    Mat<Scalar> value = evaluate(hs, MatrixTuple::free_tuple(flat));
    for (std::size_t i = 0; i < value.rows(); ++i)
      for (std::size_t j = 0; j < value.cols(); ++j) {
        Rat dev = abs(value(i, j).re) + abs(value(i, j).im);
        if (dev > rep.max_deviation) rep.max_deviation = dev;
        if (!value(i, j).is_zero()) rep.all_zero = false;
      }
  }
  return rep;
}

}  // namespace freelocus
