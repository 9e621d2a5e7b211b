#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freelocus/algebra.hpp"
#include "freelocus/linearize.hpp"
#include "freelocus/oracle.hpp"
#include "freelocus/pencil.hpp"

namespace freelocus {

enum class Tri { Yes, No, Unknown };

// --- indecomposability ---------------------------------------------------------

/// Verdict of the monic-pencil indecomposability test.  Yes is certified by
/// the Burnside dimension count (exact over C, decided over Q(i)); No carries
/// an exact common invariant subspace; Unknown records the minimal polynomial
/// of a commutant element that names the field extension a witness would need.
struct IndecompResult {
  Tri status = Tri::Unknown;
  std::size_t closure_dim = 0;
  bool modp_certified = false;
  std::vector<std::vector<Scalar>> witness;  // invariant subspace basis
  std::optional<UniPoly<Scalar>> extension_minpoly;
  std::string note;
};

namespace detail {

inline std::vector<Mat<Scalar>> nonzero_gens(const LinearPencil& l) {
  std::vector<Mat<Scalar>> gens;
  for (const auto& m : l.a)
    if (!m.is_zero()) gens.push_back(m);
  return gens;
}

/// Candidate invariant subspaces from one commutant element.
inline void commutant_candidates(const Mat<Scalar>& c, std::size_t d,
                                 std::vector<std::vector<std::vector<Scalar>>>& found,
                                 std::optional<UniPoly<Scalar>>& ext) {
  // scalar elements carry no information
  bool scalarish = true;
  for (std::size_t i = 0; i < d && scalarish; ++i)
    for (std::size_t j = 0; j < d && scalarish; ++j)
      if (i != j ? !c(i, j).is_zero() : c(i, i) != c(0, 0)) scalarish = false;
  if (scalarish) return;
  UniPoly<Scalar> mu = min_poly(c);
  for (const Scalar& lam : gaussian_rational_roots(mu)) {
    Mat<Scalar> shifted = c - Mat<Scalar>::identity(d).scaled(lam);
    auto ker = nullspace(shifted);
    if (!ker.empty() && ker.size() < d) found.push_back(ker);
  }
  UniPoly<Scalar> sf = squarefree_part(mu);
  if (sf.degree() < mu.degree()) {
    auto ker = kernel_of_poly(sf, c);
    if (!ker.empty() && ker.size() < d) found.push_back(ker);
  }
  if (found.empty() && !ext) ext = mu;
}

}  // namespace detail

/// Burnside test with exact fallbacks.  A monic pencil is indecomposable iff
/// its coefficients generate the full matrix algebra; otherwise an invariant
/// subspace is hunted through the radical, spin probes, and eigenspaces of
/// commutant elements.
inline IndecompResult is_indecomposable(const LinearPencil& l, std::uint64_t seed = 1) {
  if (!l.is_monic()) throw NotMonic("is_indecomposable: monic pencil expected");
  IndecompResult res;
  std::size_t d = l.d;
  if (d == 0) {
    res.status = Tri::Yes;
    res.note = "empty pencil";
    return res;
  }
  std::vector<Mat<Scalar>> gens = detail::nonzero_gens(l);

  // Fast certificate: the mod-p closure dimension is a lower bound for the
  // exact one, so reaching d^2 mod p settles the Burnside condition.
  bool modp_ok = false;
  try {
    if (algebra_closure_dim_modp(gens, d) == d * d) modp_ok = true;
  } catch (const std::domain_error&) {
    modp_ok = false;  // a denominator hit the prime; use the exact path
  }
  if (modp_ok) {
    res.status = Tri::Yes;
    res.closure_dim = d * d;
    res.modp_certified = true;
    res.note = "full matrix algebra (Burnside), certified mod p";
    return res;
  }

  AlgebraClosure closure = algebra_closure(gens, d);
  res.closure_dim = closure.dim();
  if (closure.dim() == d * d) {
    res.status = Tri::Yes;
    res.note = "full matrix algebra (Burnside)";
    return res;
  }

  std::vector<std::vector<std::vector<Scalar>>> candidates;

  // Nonzero radical: its column space is a proper nonzero submodule.
  auto rad = radical_basis(closure);
  if (!rad.empty()) {
    EchelonSpan<Scalar> w(d);
    for (const auto& x : rad)
      for (std::size_t j = 0; j < d; ++j) w.insert(x.col_vec(j));
    if (w.dim() > 0 && w.dim() < d) candidates.push_back(w.rows());
  }

  // Spin probes: cheap, and complete for isotypic multiples.
  if (candidates.empty()) {
    Rng rng(seed);
    std::vector<std::vector<Scalar>> probes;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Scalar> e(d, Scalar());
      e[i] = Scalar(1);
      probes.push_back(std::move(e));
    }
    for (int t = 0; t < 5; ++t) {
      std::vector<Scalar> v(d);
      for (auto& x : v) x = rng.next_scalar(3, true);
      probes.push_back(std::move(v));
    }
    for (const auto& v : probes) {
      auto s = spin(v, gens);
      if (!s.empty() && s.size() < d) candidates.push_back(s);
    }
  }

  // Commutant analysis: eigenspaces and squarefree kernels of its elements.
  std::optional<UniPoly<Scalar>> ext;
  if (candidates.empty()) {
    auto comm = commutant_basis(gens, d);
    std::vector<Mat<Scalar>> elems = comm;
    for (std::size_t i = 0; i < comm.size(); ++i)
      for (std::size_t j = i; j < comm.size() && elems.size() < 24; ++j)
        elems.push_back(comm[i] * comm[j]);
    Rng rng(seed ^ 0x5bd1e995u);
    for (int t = 0; t < 10; ++t) {
      Mat<Scalar> combo(d, d);
      for (const auto& cb : comm)
        combo = combo + cb.scaled(rng.next_scalar(3, true));
      elems.push_back(combo);
    }
    for (const auto& c : elems)
      detail::commutant_candidates(c, d, candidates, ext);
  }

  if (!candidates.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
      if (candidates[i].size() < candidates[best].size()) best = i;
    res.witness = candidates[best];
    if (!is_invariant_subspace(res.witness, gens))
      throw std::logic_error("is_indecomposable: witness fails invariance");
    res.status = Tri::No;
    res.note = "invariant subspace of dimension " + std::to_string(res.witness.size());
    return res;
  }

  res.status = Tri::Unknown;
  res.extension_minpoly = ext;
  res.note = "commutant is nontrivial but no Q(i)-rational subspace was found";
  return res;
}

// --- atom pipeline --------------------------------------------------------------

struct AtomCertificate {
  MatrixTuple base_point;  // free tuple over the flattened alphabet
  std::size_t base_size = 0;
  LinearPencil pencil;     // monic epic pencil of the ampliation at the base point
  std::size_t closure_dim = 0;
};

struct AtomVerdict {
  Tri status = Tri::Unknown;
  std::string reason;
  std::optional<AtomCertificate> cert;
  std::optional<IndecompResult> indecomp;
};

namespace detail {

/// Ampliate at the base point and produce the monic epic pencil together with
/// its scale: det f^X(Y) * alpha^m = det pencil(Y) for all Y of size m.
inline std::pair<LinearPencil, Scalar> monic_pencil_at(const MatrixPoly& flat,
                                                       const MatrixTuple& X) {
  std::vector<Mat<Scalar>> pt = X.mats;
  MatrixPoly amp = ampliate(flat, pt);
  LinearizationResult lin = linearize(amp);
  LinearizationResult min = minimize(lin.pencil, lin.alpha);
  Scalar a0det = det(min.pencil.a0);
  return {monicize(min.pencil), min.alpha / a0det};
}

}  // namespace detail

/// Atomicity via ampliation: full + non-unit + indecomposable ampliated
/// pencil at a nonsingular base point.
inline AtomVerdict is_atom(const MatrixPoly& f, const SearchBudget& b,
                           std::uint64_t seed) {
  AtomVerdict v;
  FullnessVerdict fv = fullness_test(f, b, seed);
  if (!fv.full) {
    v.status = Tri::No;
    v.reason = "not full: " + fv.note;
    return v;
  }
  UnitVerdict uv = unit_test(f, b, seed ^ 0x9e3779b9u);
  if (uv.probably_unit) {
    v.status = Tri::No;
    v.reason = "invertible in the free algebra: " + uv.note;
    return v;
  }
  MatrixPoly flat = f.flattened();
  auto [monic, alpha] = detail::monic_pencil_at(flat, *fv.witness);
  IndecompResult ind = is_indecomposable(monic, seed ^ 0xc2b2ae35u);
  v.indecomp = ind;
  switch (ind.status) {
    case Tri::Yes: {
      v.status = Tri::Yes;
      v.reason = "ampliated pencil is indecomposable; " + ind.note;
      AtomCertificate cert;
      cert.base_point = *fv.witness;
      cert.base_size = fv.witness->n;
      cert.pencil = monic;
      cert.closure_dim = ind.closure_dim;
      v.cert = std::move(cert);
      return v;
    }
    case Tri::No:
      v.status = Tri::No;
      v.reason = "ampliated pencil decomposes; " + ind.note;
      return v;
    case Tri::Unknown:
    default:
      v.status = Tri::Unknown;
      v.reason = "indecomposability undecided over Q(i); " + ind.note;
      return v;
  }
}

// --- composition series and atomic blocks ---------------------------------------

struct AtomicDecomposition {
  LinearPencil pencil;               // monic pencil of the ampliation at the base point
  std::vector<LinearPencil> leaves;  // monic diagonal blocks, extraction order
  std::vector<std::size_t> class_of;  // leaf -> class index
  std::vector<std::pair<LinearPencil, std::size_t>> classes;  // rep, multiplicity
  std::vector<std::size_t> undecomposed;  // leaf indexes flagged NeedsFieldExtension
  MatrixTuple base_point;
  std::size_t base_size = 0;
  Scalar alpha = Scalar(1);  // det f^X(Y) * alpha^m = det pencil(Y)
  bool complete = true;
  std::string note;
};

struct EquivalenceWitness {
  Mat<Scalar> p, q;
  std::size_t solution_dim = 0;
  std::size_t pad_left = 0, pad_right = 0;
  Scalar alpha = Scalar(1);
};

/// Solution space of { P' M_j = L_j Q : all j >= 0 } as a nullspace basis over
/// the 2 d^2 unknowns (P' stacked first, then Q).
inline std::vector<std::vector<Scalar>> equiv_solution_space(const LinearPencil& l,
                                                             const LinearPencil& m) {
  if (l.var_count() != m.var_count())
    throw AlphabetMismatch("pencil_equiv: variable counts differ");
  std::size_t d = l.d;
  std::size_t n_coeffs = l.var_count() + 1;
  Mat<Scalar> sys(n_coeffs * d * d, 2 * d * d);
  std::size_t eq = 0;
  auto add_block = [&](const Mat<Scalar>& lc, const Mat<Scalar>& mc) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t s = 0; s < d; ++s) {
          sys(eq, r * d + s) = sys(eq, r * d + s) + mc(s, c);          // P'(r,s) M(s,c)
          sys(eq, d * d + s * d + c) = sys(eq, d * d + s * d + c) - lc(r, s);  // -L(r,s) Q(s,c)
        }
        ++eq;
      }
  };
  add_block(l.a0, m.a0);
  for (std::size_t j = 0; j < l.a.size(); ++j) add_block(l.a[j], m.a[j]);
  return nullspace(sys);
}

/// M = P L Q solver.  None when the sizes differ, the solution space is
/// trivial, or no invertible sample is found (for indecomposable inputs the
/// space is a line, so sampling cannot miss).
inline std::optional<EquivalenceWitness> pencil_equiv(const LinearPencil& l,
                                                      const LinearPencil& m,
                                                      std::uint64_t seed = 7) {
  if (l.d != m.d) return std::nullopt;
  std::size_t d = l.d;
  if (d == 0) {
    EquivalenceWitness w;
    w.p = Mat<Scalar>(0, 0);
    w.q = Mat<Scalar>(0, 0);
    w.solution_dim = 0;
    return w;
  }
  auto space = equiv_solution_space(l, m);
  if (space.empty()) return std::nullopt;
  Rng rng(seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Scalar> combo(2 * d * d, Scalar());
    if (attempt < static_cast<int>(space.size())) {
      combo = space[attempt];
    } else {
      for (const auto& basis_vec : space) {
        Scalar c = rng.next_scalar(5, true);
        for (std::size_t i = 0; i < combo.size(); ++i)
          combo[i] += c * basis_vec[i];
      }
    }
    Mat<Scalar> pprime = Mat<Scalar>::from_flat(d, d,
        std::vector<Scalar>(combo.begin(), combo.begin() + d * d));
    Mat<Scalar> q = Mat<Scalar>::from_flat(d, d,
        std::vector<Scalar>(combo.begin() + d * d, combo.end()));
    Mat<Scalar> p;
    if (!try_inverse(pprime, p)) continue;
    if (is_zero(det(q))) continue;
    bool ok = (m.a0 == p * l.a0 * q);
    for (std::size_t j = 0; ok && j < l.a.size(); ++j)
      ok = (m.a[j] == p * l.a[j] * q);
    if (!ok) continue;
    EquivalenceWitness w;
    w.p = p;
    w.q = q;
    w.solution_dim = space.size();
    return w;
  }
  return std::nullopt;
}

namespace detail {

/// Invertible matrix whose first columns are the given (independent) vectors.
inline Mat<Scalar> basis_starting_with(const std::vector<std::vector<Scalar>>& vs,
                                       std::size_t d) {
  std::vector<std::vector<Scalar>> cols = vs;
  for (std::size_t i = 0; i < d && cols.size() < d; ++i) {
    std::vector<Scalar> e(d, Scalar());
    e[i] = Scalar(1);
    Mat<Scalar> trial(d, cols.size() + 1);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < d; ++r) trial(r, c) = cols[c][r];
    for (std::size_t r = 0; r < d; ++r) trial(r, cols.size()) = e[r];
    if (rank(trial) == cols.size() + 1) cols.push_back(std::move(e));
  }
  Mat<Scalar> s(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) s(r, c) = cols[c][r];
  return s;
}

inline void series_recurse(const LinearPencil& l, std::uint64_t seed,
                           AtomicDecomposition& out) {
  if (l.d == 0) return;
  IndecompResult ind = is_indecomposable(l, seed);
  if (ind.status == Tri::Yes) {
    out.leaves.push_back(l);
    return;
  }
  if (ind.status == Tri::Unknown) {
    out.leaves.push_back(l);
    out.undecomposed.push_back(out.leaves.size() - 1);
    out.complete = false;
    return;
  }
  std::size_t w = ind.witness.size();
  Mat<Scalar> s = basis_starting_with(ind.witness, l.d);
  Mat<Scalar> sinv = inverse(s);
  LinearPencil t = l.transformed(sinv, s);  // similarity keeps monicity
  LinearPencil top = t.principal_block(0, w);
  LinearPencil bottom = t.principal_block(w, l.d - w);
  series_recurse(top, seed + 1, out);
  series_recurse(bottom, seed + 1, out);
}

}  // namespace detail

/// Composition series of the monic pencil of the ampliation of f at an
/// explicitly supplied base point (det f(X) != 0 required).
inline AtomicDecomposition atomic_blocks_at(const MatrixPoly& f, const MatrixTuple& X,
                                            std::uint64_t seed) {
  MatrixPoly flat = f.flattened();
  AtomicDecomposition out;
  auto [monic, alpha] = detail::monic_pencil_at(flat, X);
  out.pencil = monic;
  out.base_point = X;
  out.base_size = X.n;
  out.alpha = alpha;
  detail::series_recurse(monic, seed, out);
  // classify leaves up to pencil equivalence
  out.class_of.assign(out.leaves.size(), 0);
  for (std::size_t i = 0; i < out.leaves.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < out.classes.size() && !placed; ++c) {
      if (pencil_equiv(out.classes[c].first, out.leaves[i], seed ^ (c + 1))) {
        out.classes[c].second += 1;
        out.class_of[i] = c;
        placed = true;
      }
    }
    if (!placed) {
      out.classes.emplace_back(out.leaves[i], 1);
      out.class_of[i] = out.classes.size() - 1;
    }
  }
  return out;
}

struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full pipeline: find a base point, then decompose.
inline AtomicDecomposition atomic_blocks(const MatrixPoly& f, const SearchBudget& b,
                                         std::uint64_t seed) {
  FullnessVerdict fv = fullness_test(f, b, seed);
  if (!fv.full)
    throw NotFull("atomic_blocks: no nonsingular base point found; " + fv.note);
  return atomic_blocks_at(f, *fv.witness, seed ^ 0x85ebca6bu);
}

// --- stable associativity --------------------------------------------------------

struct StableAssocResult {
  Tri status = Tri::Unknown;
  std::optional<EquivalenceWitness> witness;
  std::optional<MatrixTuple> base_point;
  std::string note;
};

/// Common ampliation point, monic pencils, equivalence.  For atoms this
/// decides stable associativity: equivalent pencils give equal loci, and for
/// atoms equal loci mean stable associativity.
inline StableAssocResult stable_assoc(const MatrixPoly& f, const MatrixPoly& g,
                                      const SearchBudget& b, std::uint64_t seed) {
  StableAssocResult res;
  Alphabet joint = Alphabet::join(f.alphabet(), g.alphabet());
  MatrixPoly fu = f.with_alphabet(joint).flattened();
  MatrixPoly gu = g.with_alphabet(joint).flattened();
  std::size_t k = fu.alphabet().g;
  bool cplx = joint.ctx != Ctx::Analytic;
  Rng rng(seed);
  std::optional<MatrixTuple> common;
  for (std::size_t n = 1; n <= b.n_max && !common; ++n)
    for (std::size_t t = 0; t < b.trials && !common; ++t) {
      MatrixTuple X = random_free_tuple(rng, k, n, b.bound, cplx);
      if (!det(evaluate(fu, X)).is_zero() && !det(evaluate(gu, X)).is_zero())
        common = X;
    }
  if (!common) {
    res.status = Tri::Unknown;
    res.note = "no common nonsingular base point within budget";
    return res;
  }
  res.base_point = common;
  auto [lf, af] = detail::monic_pencil_at(fu, *common);
  auto [lg, ag] = detail::monic_pencil_at(gu, *common);
  IndecompResult inf = is_indecomposable(lf, seed ^ 1);
  IndecompResult ing = is_indecomposable(lg, seed ^ 2);
  if (inf.status != Tri::Yes || ing.status != Tri::Yes) {
    res.status = Tri::Unknown;
    res.note = "an ampliated pencil failed the indecomposability certificate";
    return res;
  }
  if (auto w = pencil_equiv(lf, lg, seed ^ 3)) {
    res.status = Tri::Yes;
    res.witness = w;
    res.note = "ampliated pencils are equivalent";
  } else {
    res.status = Tri::No;
    res.note = lf.d != lg.d ? "ampliated pencil sizes differ"
                            : "no invertible solution of the transfer equations";
  }
  return res;
}

}  // namespace freelocus
