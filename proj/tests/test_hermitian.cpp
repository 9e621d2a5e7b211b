#include <catch2/catch_amalgamated.hpp>

#include "freelocus/hermitian.hpp"
#include "support/poly_builders.hpp"

using namespace freelocus;
using namespace fltest;

namespace {

// f = x1 x1' - x1' x1: hermitian, traceless values, unsignatured from size 3.
MatrixPoly star_commutator() { return xv(1) * xsv(1) - xsv(1) * xv(1); }

// The never-singular constant-signature 2x2 example.
MatrixPoly constant_signature_example() {
  MatrixPoly one = cv(1, 1).with_alphabet(involutive_alphabet(1));
  return poly_matrix(2, {one + xv(1) * xsv(1), xv(1),
                         xsv(1), -one - xsv(1) * xv(1)});
}

LinearPencil random_hermitian_indec_pencil(Rng& rng, std::size_t d, std::uint32_t g) {
  for (;;) {
    MatrixPoly p = MatrixPoly::constant(random_hermitian(rng, d, 2), involutive_alphabet(g));
    for (std::uint32_t j = 1; j <= g; ++j) {
      Mat<Scalar> aj = random_matrix(rng, d, d, 2, true);
      MatrixPoly term(involutive_alphabet(g), d, d);
      term.add_term(Word::single({j, false}), aj);
      term.add_term(Word::single({j, true}), aj.conj_transpose());
      p = p + term;
    }
    // make it monic so indecomposability is directly testable
    MatrixPoly monic = p - MatrixPoly::constant(p.constant_term(), p.alphabet()) +
                       MatrixPoly::identity(d, p.alphabet());
    LinearPencil l = LinearPencil::from_poly(monic);
    if (!l.is_hermitian()) continue;
    if (is_indecomposable(l, 3).status == Tri::Yes) return l;
  }
}

}  // namespace

TEST_CASE("hermitian star evaluations are hermitian") {
  Rng rng(71);
  MatrixPoly f = star_commutator();
  REQUIRE(f.is_hermitian());
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.next_int(0, 2));
    MatrixTuple X = random_star_tuple(rng, 1, n, 4);
    REQUIRE(evaluate(f, X).is_hermitian());
  }
}

TEST_CASE("unsignatured search") {
  SECTION("x1 x1' - x1' x1 flips signature at size 3") {
    SearchBudget b{3, 200, 4};
    UnsignaturedResult r = unsignatured_search(star_commutator(), b, 424242);
    REQUIRE(r.status == UnsignaturedStatus::WitnessFound);
    REQUIRE(r.witness->n == 3);
    REQUIRE(r.witness->sig_x.zero == 0);
    REQUIRE(r.witness->sig_y.zero == 0);
    REQUIRE_FALSE(r.witness->sig_x == r.witness->sig_y);
    REQUIRE(verify_unsignatured_witness(star_commutator(), *r.witness));
  }
  SECTION("the constant-signature example stays Unknown") {
    SearchBudget b{2, 60, 3};
    UnsignaturedResult r = unsignatured_search(constant_signature_example(), b, 7);
    REQUIRE(r.status == UnsignaturedStatus::Unknown);
    for (const auto& [n, sig] : r.observed) {
      REQUIRE(sig.pos == n);
      REQUIRE(sig.neg == n);
      REQUIRE(sig.zero == 0);
    }
  }
  SECTION("1 + x1'x1 is positive definite everywhere sampled") {
    SearchBudget b{2, 40, 3};
    MatrixPoly f = cv(1, 1).with_alphabet(involutive_alphabet(1)) + xsv(1) * xv(1);
    UnsignaturedResult r = unsignatured_search(f, b, 9);
    REQUIRE(r.status == UnsignaturedStatus::Unknown);
    for (const auto& [n, sig] : r.observed) {
      REQUIRE(sig.neg == 0);
      REQUIRE(sig.zero == 0);
    }
  }
  SECTION("hermitian monic pencils are flagged as known") {
    // I + E12 x1 + E21 x1': hermitian monic; decomposable values stay singular
    // rarely, so a witness may or may not be found -- the flag matters when not.
    MatrixPoly f = MatrixPoly::identity(2, involutive_alphabet(1));
    MatrixPoly t(involutive_alphabet(1), 2, 2);
    t.add_term(Word::single({1, false}), Mat<Scalar>::unit(2, 0, 1));
    t.add_term(Word::single({1, true}), Mat<Scalar>::unit(2, 1, 0));
    f = f + t;
    REQUIRE(is_hermitian_monic_pencil(f));
    SearchBudget tiny{1, 1, 1};
    UnsignaturedResult r = unsignatured_search(f, tiny, 10);
    REQUIRE((r.status == UnsignaturedStatus::KnownByMonicPencil ||
             r.status == UnsignaturedStatus::WitnessFound));
  }
  SECTION("non-hermitian input is rejected") {
    REQUIRE_THROWS_AS(unsignatured_search(xv(1), SearchBudget{}, 1), NotHermitian);
  }
}

TEST_CASE("real line probe") {
  SECTION("x1 + x1' against 1 is refuted") {
    MatrixPoly f = xv(1) + xsv(1);
    RealProbeResult r = real_line_probe(f, cv(1, 1).with_alphabet(involutive_alphabet(1)),
                                        1, 10, 4, 33);
    REQUIRE(r.refuted);
    REQUIRE(r.interval.has_value());
  }
  SECTION("1 + x1'x1 has no real zeros") {
    MatrixPoly f = cv(1, 1).with_alphabet(involutive_alphabet(1)) + xsv(1) * xv(1);
    RealProbeResult r = real_line_probe(f, xv(1).with_alphabet(involutive_alphabet(1)),
                                        2, 10, 4, 34);
    REQUIRE_FALSE(r.refuted);
  }
  SECTION("identical polynomials are consistent") {
    MatrixPoly f = star_commutator();
    RealProbeResult r = real_line_probe(f, f, 2, 8, 4, 35);
    REQUIRE_FALSE(r.refuted);
  }
  SECTION("real-structured determinants have real coefficients") {
    Rng rng(36);
    MatrixPoly f = star_commutator();
    for (int it = 0; it < 10; ++it) {
      AffineLine line{random_star_tuple(rng, 1, 2, 3), random_star_tuple(rng, 1, 2, 3)};
      UniPoly<Scalar> p = det_along_line(f, line);
      REQUIRE(imag_part_poly(p).is_zero());
    }
  }
}

TEST_CASE("analytic real containment") {
  ContainConfig cfg{{3, 10, 5}, true, 555};
  SECTION("factor containment via f") {
    RealContainmentVerdict v = real_containment_analytic(xv(1), xv(1) * xv(2), cfg);
    REQUIRE(v.status == Containment::Proved);
    REQUIRE(v.route == RealRoute::ViaF);
  }
  SECTION("x1 vs x1' goes through the adjoint") {
    RealContainmentVerdict v = real_containment_analytic(xv(1), xsv(1), cfg);
    REQUIRE(v.status == Containment::Proved);
    REQUIRE(v.route == RealRoute::ViaFStar);
  }
  SECTION("x1 vs x2 is refuted with a real witness") {
    RealContainmentVerdict v = real_containment_analytic(xv(1), xv(2), cfg);
    REQUIRE(v.status == Containment::Refuted);
    REQUIRE(v.real_witness.has_value());
  }
  SECTION("non-analytic input is rejected") {
    REQUIRE_THROWS_AS(real_containment_analytic(xsv(1) * xv(1), xv(1), cfg), NotAnalytic);
  }
}

TEST_CASE("hermitian real containment") {
  ContainConfig cfg{{3, 30, 5}, true, 556};
  SECTION("x1 + x1' divides (x1 + x1') x2") {
    MatrixPoly f = xv(1) + xsv(1);
    SearchBudget wb{1, 50, 4};
    UnsignaturedResult uw = unsignatured_search(f, wb, 42);
    REQUIRE(uw.status == UnsignaturedStatus::WitnessFound);
    REQUIRE(uw.witness->n == 1);
    MatrixPoly h = f * xv(2).with_alphabet(involutive_alphabet(2));
    RealContainmentVerdict v = real_containment_hermitian(f, h, *uw.witness, cfg);
    REQUIRE(v.status == Containment::Proved);
  }
  SECTION("bad witnesses are rejected") {
    MatrixPoly f = xv(1) + xsv(1);
    UnsignaturedWitness w;
    w.n = 1;
    w.x = MatrixTuple::star({Mat<Scalar>::identity(1)});
    w.y = MatrixTuple::star({Mat<Scalar>::identity(1)});
    w.sig_x = Signature{1, 0, 0};
    w.sig_y = Signature{0, 1, 0};
    REQUIRE_THROWS_AS(real_containment_hermitian(f, f, w, cfg), InvalidWitness);
  }
}

TEST_CASE("the sum-of-squares counterexample shape") {
  // f = x1 x1' + x2 x2', h = x1: the real-locus containment holds (checked by
  // probing) yet f is not stably associated to h.
  MatrixPoly f = xv(1) * xsv(1) + xv(2) * xsv(2);
  MatrixPoly h = xv(1).with_alphabet(involutive_alphabet(2));
  SECTION("no unsignatured witness shows up") {
    SearchBudget b{2, 80, 3};
    UnsignaturedResult r = unsignatured_search(f, b, 808);
    REQUIRE(r.status == UnsignaturedStatus::Unknown);
  }
  SECTION("Monte Carlo real containment holds") {
    for (std::size_t n = 1; n <= 2; ++n) {
      RealProbeResult r = real_line_probe(f, h, n, 25, 4, 809 + n);
      REQUIRE_FALSE(r.refuted);
    }
  }
  SECTION("stable associativity fails") {
    SearchBudget b{3, 12, 5};
    StableAssocResult r = stable_assoc(f, h, b, 810);
    REQUIRE(r.status == Tri::No);
  }
}

TEST_CASE("analytic Gleichstellensatz") {
  Rng rng(616);
  SECTION("constructed M = P L Q is tagged plain") {
    // analytic indecomposable pencil: I + E12 x1 + E21 x2
    LinearPencil l = LinearPencil::from_poly(
        MatrixPoly::identity(2, analytic_alphabet(2)) +
        poly_matrix(2, {cv(0, 2), xv(1), xv(2), cv(0, 2)}));
    Mat<Scalar> p = random_invertible(rng, 2, 3, false);
    Mat<Scalar> q = random_invertible(rng, 2, 3, false);
    LinearPencil m = l.transformed(p, q);
    auto w = gleichstellensatz_analytic(l, m, 1);
    REQUIRE(w.has_value());
    REQUIRE_FALSE(w->via_adjoint);
  }
  SECTION("constructed M = P L* Q is tagged adjoint") {
    LinearPencil l = LinearPencil::from_poly(
        MatrixPoly::identity(2, analytic_alphabet(2)) +
        poly_matrix(2, {cv(0, 2), xv(1), xv(2), cv(0, 2)}));
    Mat<Scalar> p = random_invertible(rng, 2, 3, false);
    Mat<Scalar> q = random_invertible(rng, 2, 3, false);
    LinearPencil m = LinearPencil::from_poly(l.to_poly().adjoint()).transformed(p, q);
    auto w = gleichstellensatz_analytic(l, m, 2);
    REQUIRE(w.has_value());
    REQUIRE(w->via_adjoint);
  }
  SECTION("size mismatch gives None") {
    LinearPencil l = LinearPencil::from_poly(
        MatrixPoly::identity(2, analytic_alphabet(2)) +
        poly_matrix(2, {cv(0, 2), xv(1), xv(2), cv(0, 2)}));
    LinearPencil m = LinearPencil::from_poly(
        cv(1, 2) + xv(1));
    auto w = gleichstellensatz_analytic(l, m, 3);
    REQUIRE_FALSE(w.has_value());
  }
}

TEST_CASE("hermitian Gleichstellensatz") {
  Rng rng(617);
  SECTION("round trips with both signs") {
    for (int sign = -1; sign <= 1; sign += 2) {
      LinearPencil l = random_hermitian_indec_pencil(rng, 2, 2);
      SearchBudget wb{2, 60, 3};
      UnsignaturedResult uw = unsignatured_search(l.to_poly(), wb, 1000 + sign);
      REQUIRE(uw.witness.has_value());
      Mat<Scalar> p(2, 2);
      p(0, 0) = Scalar(Rat(1), Rat(1));
      p(0, 1) = Scalar(2);
      p(1, 0) = Scalar(Rat(0), Rat(-1));
      p(1, 1) = Scalar(1);
      LinearPencil m = l.transformed(p, p.conj_transpose());
      if (sign < 0) {
        m.a0 = -m.a0;
        for (auto& a : m.a) a = -a;
      }
      auto w = gleichstellensatz_hermitian(l, m, *uw.witness, 5 + sign);
      REQUIRE(w.has_value());
      REQUIRE(w->sign == sign);
      Mat<Scalar> pt = w->p.conj_transpose();
      Scalar s(static_cast<long>(w->sign));
      REQUIRE(m.a0 == (w->p * l.a0 * pt).scaled(s));
      for (std::size_t j = 0; j < l.a.size(); ++j)
        REQUIRE(m.a[j] == (w->p * l.a[j] * pt).scaled(s));
    }
  }
  SECTION("L against itself gives +1 and a unitary-free identity witness") {
    LinearPencil l = random_hermitian_indec_pencil(rng, 2, 1);
    SearchBudget wb{2, 60, 3};
    UnsignaturedResult uw = unsignatured_search(l.to_poly(), wb, 11);
    REQUIRE(uw.witness.has_value());
    auto w = gleichstellensatz_hermitian(l, l, *uw.witness, 12);
    REQUIRE(w.has_value());
    REQUIRE(w->sign == 1);
  }
}
