#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freelocus/containment.hpp"
#include "freelocus/structure.hpp"

namespace freelocus {

struct NotAnalytic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAtom : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotIndecomposable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidWitness : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- unsignatured search ---------------------------------------------------------

/// Two star-evaluation points of the same size where a hermitian polynomial
/// takes invertible values of different signatures.
struct UnsignaturedWitness {
  std::size_t n = 0;
  MatrixTuple x, y;  // star-mode tuples
  Signature sig_x, sig_y;
};

enum class UnsignaturedStatus { WitnessFound, KnownByMonicPencil, Unknown };

struct UnsignaturedResult {
  UnsignaturedStatus status = UnsignaturedStatus::Unknown;
  std::optional<UnsignaturedWitness> witness;
  std::vector<std::pair<std::size_t, Signature>> observed;  // distinct per size
  std::size_t samples = 0;
  std::string note;
};

inline bool is_hermitian_monic_pencil(const MatrixPoly& f) {
  return f.degree() <= 1 && f.is_hermitian() &&
         f.constant_term() == Mat<Scalar>::identity(f.dim());
}

inline bool verify_unsignatured_witness(const MatrixPoly& f,
                                        const UnsignaturedWitness& w) {
  Mat<Scalar> hx = evaluate(f, w.x), hy = evaluate(f, w.y);
  if (!hx.is_hermitian() || !hy.is_hermitian()) return false;
  if (is_zero(det(hx)) || is_zero(det(hy))) return false;
  Signature sx = hermitian_signature(hx), sy = hermitian_signature(hy);
  return sx == w.sig_x && sy == w.sig_y && !(sx == sy);
}

/// Random star-evaluation search for a signature flip.  Semi-decision: an
/// Unknown answer never asserts that f is signatured.
inline UnsignaturedResult unsignatured_search(const MatrixPoly& f, const SearchBudget& b,
                                              std::uint64_t seed) {
  if (!f.is_hermitian()) throw NotHermitian("unsignatured_search: f != f*");
  UnsignaturedResult res;
  bool monic_shortcut = is_hermitian_monic_pencil(f);
  Rng rng(seed);
  std::uint32_t g = f.alphabet().g;
  for (std::size_t n = 1; n <= b.n_max; ++n) {
    std::optional<std::pair<MatrixTuple, Signature>> first;
    for (std::size_t t = 0; t < b.trials; ++t) {
      ++res.samples;
      MatrixTuple X = random_star_tuple(rng, g, n, b.bound);
      Mat<Scalar> h = evaluate(f, X);
      if (is_zero(det(h))) continue;
      Signature s = hermitian_signature(h);
      bool seen = false;
      for (const auto& [sz, sig] : res.observed)
        if (sz == n && sig == s) seen = true;
      if (!seen) res.observed.emplace_back(n, s);
      if (!first) {
        first = {X, s};
      } else if (!(first->second == s)) {
        UnsignaturedWitness w;
        w.n = n;
        w.x = first->first;
        w.y = X;
        w.sig_x = first->second;
        w.sig_y = s;
        if (!verify_unsignatured_witness(f, w))
          throw std::logic_error("unsignatured_search: witness failed re-verification");
        res.witness = std::move(w);
        res.status = UnsignaturedStatus::WitnessFound;
        res.note = "signature flip at size " + std::to_string(n);
        return res;
      }
    }
  }
  if (monic_shortcut) {
    res.status = UnsignaturedStatus::KnownByMonicPencil;
    res.note = "hermitian monic pencils are unsignatured; no constructive witness found";
  } else {
    res.status = UnsignaturedStatus::Unknown;
    res.note = "no signature flip within budget (semi-decision)";
  }
  return res;
}

// --- real line probes --------------------------------------------------------------

/// Exact refutation of a real-locus containment found on a star-evaluation
/// line: a squarefree real polynomial with a real root t* where
/// det f(X(t*), X(t*)^*) = 0 but det h != 0, plus an isolating interval.
struct RealProbeResult {
  bool refuted = false;
  std::optional<AffineLine> line;         // star-mode line
  std::optional<UniPoly<Rat>> obstruction;
  std::optional<std::pair<Rat, Rat>> interval;
  std::string note;
};

namespace detail {

inline UniPoly<Rat> real_roots_carrier(const UniPoly<Scalar>& p) {
  // real zeros of p = real zeros of p * conj(p), which has real coefficients
  UniPoly<Scalar> pp = p * conj_poly(p);
  UniPoly<Rat> re = real_part_poly(pp);
  return re;
}

inline RealProbeResult real_probe_core(const MatrixPoly& f, const MatrixPoly& h,
                                       std::size_t n, std::size_t trials, long bound,
                                       std::uint64_t seed) {
  RealProbeResult out;
  std::uint32_t g = Alphabet::join(f.alphabet(), h.alphabet()).g;
  MatrixPoly fu = f.with_alphabet(Alphabet::join(f.alphabet(), h.alphabet()));
  MatrixPoly hu = h.with_alphabet(fu.alphabet());
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    AffineLine line{random_star_tuple(rng, g, n, bound),
                    random_star_tuple(rng, g, n, bound)};
    UniPoly<Scalar> p = det_along_line(fu, line);
    UniPoly<Scalar> q = det_along_line(hu, line);
    if (p.is_zero()) {
      if (q.is_zero()) continue;
      for (long t0 = 0;; ++t0) {
        if (!q.eval(Scalar(t0)).is_zero()) {
          out.refuted = true;
          out.line = line;
          out.interval = {Rat(t0), Rat(t0)};
          out.note = "det f vanishes along the whole real line; det h does not";
          return out;
        }
      }
    }
    UniPoly<Rat> preal = real_roots_carrier(p);
    if (preal.is_zero() || preal.is_constant()) continue;
    UniPoly<Rat> qreal = q.is_zero() ? UniPoly<Rat>() : real_roots_carrier(q);
    UniPoly<Rat> sf = squarefree_part(preal);
    UniPoly<Rat> r =
        qreal.is_zero() ? sf : sf.divmod(gcd_poly(sf, qreal)).first.monic();
    if (r.is_constant()) continue;
    if (sturm_real_root_count(r) > 0) {
      auto ivs = isolate_real_roots(r);
      if (ivs.empty()) continue;
      out.refuted = true;
      out.line = line;
      out.obstruction = r;
      out.interval = refine_root_interval(r, ivs.front(), make_rat(1, 1024));
      out.note = "real root of det f along the line avoids det h";
      return out;
    }
  }
  out.note = "no real refutation on the sampled lines";
  return out;
}

}  // namespace detail

/// Spec'd probe for hermitian f: det f(X(t), X(t)*) has real coefficients on
/// real-structured lines, and its real roots off det h give exact witnesses.
inline RealProbeResult real_line_probe(const MatrixPoly& f, const MatrixPoly& h,
                                       std::size_t n, std::size_t trials, long bound,
                                       std::uint64_t seed) {
  if (!f.is_hermitian()) throw NotHermitian("real_line_probe: f != f*");
  return detail::real_probe_core(f, h, n, trials, bound, seed);
}

// --- real containment ----------------------------------------------------------------

enum class RealRoute { ViaF, ViaFStar, Hermitian, None };

struct RealContainmentVerdict {
  Containment status = Containment::ConsistentUpTo;
  RealRoute route = RealRoute::None;
  ContainmentVerdict complex_forward;   // Z(f) vs Z(h)
  ContainmentVerdict complex_adjoint;   // Z(f*) vs Z(h), analytic case only
  std::optional<RealProbeResult> real_witness;
  std::string note;
};

/// Z_re(f) in Z_re(h) for analytic atoms f: holds iff Z(f) or Z(f*) is
/// contained in Z(h) in the 2g-letter involution-free sense.
inline RealContainmentVerdict real_containment_analytic(const MatrixPoly& f,
                                                        const MatrixPoly& h,
                                                        const ContainConfig& cfg) {
  if (!f.is_analytic()) throw NotAnalytic("real_containment_analytic: f must be analytic");
  AtomVerdict av = is_atom(f, cfg.budget, cfg.seed ^ 0xf00du);
  if (av.status != Tri::Yes)
    throw NotAtom("real_containment_analytic: f is not certified as an atom: " + av.reason);

  RealContainmentVerdict out;
  ContainConfig c1 = cfg;
  out.complex_forward = locus_contains(f, h, c1);
  if (out.complex_forward.status == Containment::Proved) {
    out.status = Containment::Proved;
    out.route = RealRoute::ViaF;
    out.note = "f is stably associated to a factor of h";
    return out;
  }
  ContainConfig c2 = cfg;
  c2.seed = cfg.seed ^ 0xbeefu;
  out.complex_adjoint = locus_contains(f.adjoint(), h, c2);
  if (out.complex_adjoint.status == Containment::Proved) {
    out.status = Containment::Proved;
    out.route = RealRoute::ViaFStar;
    out.note = "f* is stably associated to a factor of h";
    return out;
  }
  if (out.complex_forward.status == Containment::Refuted &&
      out.complex_adjoint.status == Containment::Refuted) {
    out.status = Containment::Refuted;
    for (std::size_t n = 1; n <= cfg.budget.n_max && !out.real_witness; ++n) {
      RealProbeResult probe = detail::real_probe_core(f, h, n, cfg.budget.trials,
                                                      cfg.budget.bound, cfg.seed + n);
      if (probe.refuted) out.real_witness = std::move(probe);
    }
    out.note = out.real_witness
                   ? "refuted with a real line witness"
                   : "refuted on both complex routes; no real witness within budget";
    return out;
  }
  out.status = Containment::ConsistentUpTo;
  out.note = "neither complex route decided within budget";
  return out;
}

/// Z_re(f) in Z_re(h) for unsignatured hermitian atoms f: equivalent to
/// Z(f) in Z(h) in the 2g-letter sense.
inline RealContainmentVerdict real_containment_hermitian(const MatrixPoly& f,
                                                         const MatrixPoly& h,
                                                         const UnsignaturedWitness& w,
                                                         const ContainConfig& cfg) {
  if (!f.is_hermitian()) throw NotHermitian("real_containment_hermitian: f != f*");
  if (!verify_unsignatured_witness(f, w))
    throw InvalidWitness("real_containment_hermitian: witness failed re-verification");
  AtomVerdict av = is_atom(f, cfg.budget, cfg.seed ^ 0xfeedu);
  if (av.status != Tri::Yes)
    throw NotAtom("real_containment_hermitian: f is not certified as an atom: " + av.reason);

  RealContainmentVerdict out;
  out.route = RealRoute::Hermitian;
  out.complex_forward = locus_contains(f, h, cfg);
  switch (out.complex_forward.status) {
    case Containment::Proved:
      out.status = Containment::Proved;
      out.note = "f is stably associated to a factor of h";
      break;
    case Containment::Refuted: {
      out.status = Containment::Refuted;
      for (std::size_t n = 1; n <= cfg.budget.n_max && !out.real_witness; ++n) {
        RealProbeResult probe =
            real_line_probe(f, h, n, cfg.budget.trials, cfg.budget.bound, cfg.seed + n);
        if (probe.refuted) out.real_witness = std::move(probe);
      }
      out.note = out.real_witness ? "refuted with a real line witness"
                                  : "refuted on the complex route; no real witness "
                                    "within budget";
      break;
    }
    default:
      out.status = Containment::ConsistentUpTo;
      out.note = "undecided within budget";
  }
  return out;
}

// --- linear Gleichstellensaetze ---------------------------------------------------------

namespace detail {

inline LinearPencil pencil_with_alphabet(const LinearPencil& l, Alphabet alph) {
  return LinearPencil::from_poly(l.to_poly().with_alphabet(alph));
}

/// Indecomposability for possibly non-monic pencils: monicize when the
/// constant term is regular, otherwise go through the atom pipeline for epic
/// pencils (an epic pencil is an atom iff it is indecomposable).
inline bool certify_indecomposable(const LinearPencil& l, std::uint64_t seed) {
  if (l.d <= 1) return l.d == 1;
  if (!is_zero(det(l.a0)))
    return is_indecomposable(monicize(l), seed).status == Tri::Yes;
  if (l.is_epic()) {
    SearchBudget b;
    return is_atom(l.to_poly(), b, seed).status == Tri::Yes;
  }
  return false;
}

}  // namespace detail

struct GleichWitness {
  bool via_adjoint = false;  // matched L* rather than L
  EquivalenceWitness w;
};

/// M = P L Q or M = P L* Q for indecomposable pencils with analytic L.
inline std::optional<GleichWitness> gleichstellensatz_analytic(const LinearPencil& l,
                                                               const LinearPencil& m,
                                                               std::uint64_t seed = 21) {
  for (std::size_t j = l.alph.g; j < l.a.size(); ++j)
    if (!l.a[j].is_zero()) throw NotAnalytic("gleichstellensatz_analytic: L has starred letters");
  if (!detail::certify_indecomposable(l, seed) ||
      !detail::certify_indecomposable(m, seed ^ 1))
    throw NotIndecomposable("gleichstellensatz_analytic: inputs must be indecomposable");
  Alphabet joint = Alphabet::join(l.alph, m.alph);
  if (joint.ctx == Ctx::Analytic) joint.ctx = Ctx::Involutive;
  LinearPencil lu = detail::pencil_with_alphabet(l, joint);
  LinearPencil mu = detail::pencil_with_alphabet(m, joint);
  if (auto w = pencil_equiv(lu, mu, seed ^ 2)) return GleichWitness{false, *w};
  if (auto w = pencil_equiv(lu.adjoint(), mu, seed ^ 3)) return GleichWitness{true, *w};
  return std::nullopt;
}

/// Rational point on the circle u * conj(u) = tau, when one exists and is
/// within reach: perfect squares directly, otherwise a bounded integer search
/// on x^2 + y^2 = num*den.
inline std::optional<Scalar> solve_norm_equation(const Rat& tau) {
  if (sgn(tau) <= 0) return std::nullopt;
  Rat root;
  if (rat_sqrt(tau, root)) return Scalar(root);
  Int m = tau.get_num() * tau.get_den();
  if (mpz_sizeinbase(m.get_mpz_t(), 2) > 40) return std::nullopt;
  Int x(0);
  for (; x * x * 2 <= m; ++x) {
    Int y2 = m - x * x;
    if (mpz_perfect_square_p(y2.get_mpz_t())) {
      Int y;
      mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
      return Scalar(Rat(x) / tau.get_den(), Rat(y) / tau.get_den());
    }
  }
  return std::nullopt;
}

struct HermitianGleichWitness {
  int sign = 1;
  Mat<Scalar> p;  // M = sign * P L P*, exactly
};

/// M = +- P L P* for hermitian indecomposable pencils with L unsignatured.
/// The equivalence solver yields (P, Q); hermitian symmetry forces Q* to be a
/// real multiple of P (trivial stabilizer), and a norm-equation solution
/// rescales to sign +-1.
inline std::optional<HermitianGleichWitness> gleichstellensatz_hermitian(
    const LinearPencil& l, const LinearPencil& m, const UnsignaturedWitness& w,
    std::uint64_t seed = 23) {
  if (!l.is_hermitian() || !m.is_hermitian())
    throw NotHermitian("gleichstellensatz_hermitian: pencils must be hermitian");
  if (!verify_unsignatured_witness(l.to_poly(), w))
    throw InvalidWitness("gleichstellensatz_hermitian: witness failed re-verification");
  Alphabet joint = Alphabet::join(l.alph, m.alph);
  LinearPencil lu = detail::pencil_with_alphabet(l, joint);
  LinearPencil mu = detail::pencil_with_alphabet(m, joint);
  auto eq = pencil_equiv(lu, mu, seed);
  if (!eq) return std::nullopt;
  std::size_t d = lu.d;
  // Normalize P by its first nonzero entry; this keeps the norm equation at
  // the scale of the structured solution rather than the solver's.
  Scalar p0;
  for (std::size_t i = 0; i < d && p0.is_zero(); ++i)
    for (std::size_t j = 0; j < d && p0.is_zero(); ++j) p0 = eq->p(i, j);
  Mat<Scalar> phat = eq->p.scaled(p0.inv());
  Mat<Scalar> qhat = eq->q.scaled(p0);
  // Q* = lambda * P with real lambda (stabilizer of an indecomposable pencil).
  Mat<Scalar> qstar = qhat.conj_transpose();
  Scalar lambda;
  for (std::size_t i = 0; i < d && lambda.is_zero(); ++i)
    for (std::size_t j = 0; j < d && lambda.is_zero(); ++j)
      if (!phat(i, j).is_zero()) lambda = qstar(i, j) / phat(i, j);
  if (lambda.is_zero() || !lambda.is_real()) return std::nullopt;
  if (qstar != phat.scaled(lambda)) return std::nullopt;
  int sign = sgn(lambda.re) > 0 ? 1 : -1;
  auto u = solve_norm_equation(abs(lambda.re));
  if (!u) return std::nullopt;
  Mat<Scalar> p = phat.scaled(*u);
  // exact verification
  Scalar s(sign);
  Mat<Scalar> pt = p.conj_transpose();
  if (mu.a0 != (p * lu.a0 * pt).scaled(s)) return std::nullopt;
  for (std::size_t j = 0; j < lu.a.size(); ++j)
    if (mu.a[j] != (p * lu.a[j] * pt).scaled(s)) return std::nullopt;
  return HermitianGleichWitness{sign, p};
}

}  // namespace freelocus
