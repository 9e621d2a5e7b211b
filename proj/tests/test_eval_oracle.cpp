#include <catch2/catch_amalgamated.hpp>

#include "freelocus/evaluate.hpp"
#include "freelocus/oracle.hpp"
#include "support/poly_builders.hpp"

using namespace freelocus;
using namespace fltest;

TEST_CASE("evaluation examples") {
  SECTION("commutator at (E12, E21)") {
    MatrixPoly f = commutator();
    std::vector<Mat<Scalar>> ms{Mat<Scalar>::unit(2, 0, 1), Mat<Scalar>::unit(2, 1, 0)};
    Mat<Scalar> v = evaluate(f, MatrixTuple::free_tuple(ms));
    Mat<Scalar> expect(2, 2);
    expect(0, 0) = Scalar(1);
    expect(1, 1) = Scalar(-1);
    REQUIRE(v == expect);
  }
  SECTION("constant c evaluates to c (x) I_n") {
    Mat<Scalar> c = m2(1, 2, 3, 4);
    MatrixPoly f = MatrixPoly::constant(c, analytic_alphabet(1));
    Rng rng(2);
    MatrixTuple X = random_free_tuple(rng, 1, 3, 4, false);
    REQUIRE(evaluate(f, X) == c.kron(Mat<Scalar>::identity(3)));
  }
  SECTION("size-one tuples give the commutative collapse") {
    MatrixPoly f = commutator();
    std::vector<Mat<Scalar>> ms{Mat<Scalar>(1, 1), Mat<Scalar>(1, 1)};
    ms[0](0, 0) = Scalar(5);
    ms[1](0, 0) = Scalar(7);
    REQUIRE(evaluate(f, MatrixTuple::free_tuple(ms)).is_zero());
  }
  SECTION("mode errors") {
    MatrixPoly f = xv(1) + xsv(1);
    Rng rng(3);
    MatrixTuple star = random_star_tuple(rng, 1, 2, 3);
    REQUIRE_NOTHROW(evaluate(f, star));  // star mode supplies x* = X*
    MatrixTuple free_short = random_free_tuple(rng, 1, 2, 3, true);
    REQUIRE_THROWS_AS(evaluate(f, free_short), ModeMismatch);
    MatrixTuple too_short = random_star_tuple(rng, 1, 2, 3);
    REQUIRE_THROWS_AS(evaluate(commutator(), too_short), ArityMismatch);
  }
}

TEST_CASE("determinant along lines") {
  SECTION("f = x1 on the line t at size 1") {
    AffineLine l{MatrixTuple::free_tuple({Mat<Scalar>(1, 1)}),
                 MatrixTuple::free_tuple({Mat<Scalar>::identity(1)})};
    UniPoly<Scalar> p = det_along_line(xv(1), l);
    REQUIRE(p == UniPoly<Scalar>::t());
  }
  SECTION("commutator vanishes on scalar lines") {
    Rng rng(5);
    AffineLine l = random_line(rng, 2, 1, 5, false);
    REQUIRE(det_along_line(commutator(), l).is_zero());
  }
  SECTION("commutator at size 2: degree bound and point consistency") {
    Rng rng(6);
    AffineLine l = random_line(rng, 2, 2, 5, false);
    UniPoly<Scalar> p = det_along_line(commutator(), l);
    REQUIRE(p.degree() <= 4);
    for (int k = 0; k < 5; ++k) {
      Scalar t0(rng.next_int(-20, 20));
      REQUIRE(p.eval(t0) == det(evaluate(commutator(), l.at(t0))));
    }
  }
}

TEST_CASE("fullness test") {
  SearchBudget b;
  SECTION("the commutator is full with a size-2 witness") {
    auto v = fullness_test(commutator(), b, 101);
    REQUIRE(v.full);
    REQUIRE(v.witness->n == 2);
    REQUIRE(det(evaluate(commutator(), *v.witness)) == v.witness_det);
    REQUIRE(!v.witness_det.is_zero());
  }
  SECTION("zero polynomial is not full") {
    MatrixPoly z(analytic_alphabet(2), 1, 1);
    auto v = fullness_test(z, b, 102);
    REQUIRE_FALSE(v.full);
    REQUIRE(v.failure_bound == 0.0);
  }
  SECTION("rank-one outer product is not full") {
    // f = column(x1, x2) * row(x1, x2), a 2x2 polynomial of rank one
    MatrixPoly f = poly_matrix(2, {xv(1) * xv(1), xv(1) * xv(2),
                                   xv(2) * xv(1), xv(2) * xv(2)});
    SearchBudget small{3, 8, 5};
    auto v = fullness_test(f, small, 103);
    REQUIRE_FALSE(v.full);
    REQUIRE(v.failure_bound <= 1.0);
  }
}

TEST_CASE("unit test") {
  SearchBudget b{3, 6, 5};
  SECTION("invertible constants are units") {
    auto v = unit_test(cv(3, 1), b, 7);
    REQUIRE(v.probably_unit);
  }
  SECTION("x1 is not a unit") {
    auto v = unit_test(xv(1), b, 8);
    REQUIRE_FALSE(v.probably_unit);
    REQUIRE(v.line_poly->degree() >= 1);
  }
  SECTION("the unipotent [[1, x1],[0, 1]] is a unit") {
    MatrixPoly f = poly_matrix(2, {cv(1, 1), xv(1), cv(0, 1), cv(1, 1)});
    auto v = unit_test(f, b, 9);
    REQUIRE(v.probably_unit);
  }
}

TEST_CASE("locus degree estimation") {
  SECTION("x1 has slope 1") {
    auto est = estimate_locus_degree(xv(1), {1, 2, 3}, 4, 5, 11);
    REQUIRE(est.degrees == std::vector<std::pair<std::size_t, long>>{{1, 1}, {2, 2}, {3, 3}});
    REQUIRE(est.slope == 1);
  }
  SECTION("x1 x2 has slope 2") {
    auto est = estimate_locus_degree(xv(1) * xv(2), {1, 2, 3}, 4, 5, 12);
    REQUIRE(est.slope == 2);
  }
  SECTION("commutator: flat at size 1, then linear") {
    auto est = estimate_locus_degree(commutator(), {1, 2, 3}, 4, 5, 13);
    REQUIRE(est.degrees[0].second == 0);
    REQUIRE(est.degrees[1].second == 4);
    REQUIRE(est.degrees[2].second == 6);
    REQUIRE(est.slope == 2);
  }
  SECTION("superadditivity on sampled data") {
    auto est = estimate_locus_degree(commutator(), {1, 2, 3}, 4, 5, 14);
    REQUIRE(est.degrees[0].second + est.degrees[1].second <= est.degrees[2].second);
  }
}

TEST_CASE("symbolic generic determinants") {
  SECTION("x1 at n = 1") {
    GenericDet g = symbolic_generic_det(xv(1), 1);
    REQUIRE(g.poly == CommPoly::var(1, 0));
  }
  SECTION("commutator collapses at n = 1") {
    REQUIRE(symbolic_generic_det(commutator(), 1).poly.is_zero());
  }
  SECTION("x1 at n = 2 is the 2x2 determinant") {
    GenericDet g = symbolic_generic_det(xv(1), 2);
    CommPoly expect = CommPoly::var(4, 0) * CommPoly::var(4, 3) -
                      CommPoly::var(4, 1) * CommPoly::var(4, 2);
    REQUIRE(g.poly == expect);
  }
  SECTION("agrees with evaluation at random points") {
    Rng rng(15);
    MatrixPoly f = commutator() + xv(1).scaled(Scalar(2));
    for (std::size_t n = 1; n <= 2; ++n) {
      GenericDet g = symbolic_generic_det(f, n);
      for (int it = 0; it < 20; ++it) {
        MatrixTuple X = random_free_tuple(rng, 2, n, 4, false);
        REQUIRE(g.poly.eval(GenericDet::coords(X)) == det(evaluate(f, X)));
      }
    }
  }
  SECTION("size guard") {
    REQUIRE_THROWS_AS(symbolic_generic_det(xv(1), 3), TooLarge);
  }
}

TEST_CASE("determinant multiplicativity at points") {
  Rng rng(16);
  MatrixPoly f = commutator(), g = xv(1) * xv(1) - xv(2);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.next_int(0, 2));
    MatrixTuple X = random_free_tuple(rng, 2, n, 4, false);
    REQUIRE(det(evaluate(f * g, X)) == det(evaluate(f, X)) * det(evaluate(g, X)));
  }
}

TEST_CASE("direct-sum point multiplicativity") {
  Rng rng(18);
  MatrixPoly f = commutator() + xv(2);
  for (int it = 0; it < 20; ++it) {
    MatrixTuple X = random_free_tuple(rng, 2, 2, 4, false);
    MatrixTuple Y = random_free_tuple(rng, 2, 1, 4, false);
    MatrixTuple XY = MatrixTuple::direct_sum(X, Y);
    REQUIRE(det(evaluate(f, XY)) == det(evaluate(f, X)) * det(evaluate(f, Y)));
  }
}

TEST_CASE("mod-p evaluation is consistent with exact evaluation") {
  Rng rng(19);
  MatrixPoly f = commutator() * xv(1) + xv(2).scaled(Scalar(make_rat(1, 3)));
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.next_int(0, 1));
    MatrixTuple X = random_free_tuple(rng, 2, n, 6, false);
    Mat<Scalar> exact = evaluate(f, X);
    Mat<Fp2> reduced = evaluate_modp(f, X, kDefaultPrime);
    for (std::size_t i = 0; i < exact.rows(); ++i)
      for (std::size_t j = 0; j < exact.cols(); ++j)
        REQUIRE(reduce_mod_p(exact(i, j), kDefaultPrime) == reduced(i, j));
  }
}
