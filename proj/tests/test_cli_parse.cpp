#include <catch2/catch_amalgamated.hpp>

#include "freelocus/parse.hpp"
#include "support/poly_builders.hpp"

using namespace freelocus;
using namespace fltest;

namespace {

MatrixPoly random_printable_poly(Rng& rng) {
  std::uint32_t g = 1 + static_cast<std::uint32_t>(rng.next_int(0, 2));
  Ctx ctx = static_cast<Ctx>(rng.next_int(0, 2));
  Alphabet alph{g, ctx};
  MatrixPoly f(alph, 1, 1);
  int terms = 1 + static_cast<int>(rng.next_int(0, 3));
  for (int t = 0; t < terms; ++t) {
    int len = static_cast<int>(rng.next_int(0, 3));
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) {
      std::uint32_t idx =
          ctx == Ctx::Slack ? static_cast<std::uint32_t>(rng.next_int(0, g))
                            : static_cast<std::uint32_t>(rng.next_int(1, g));
      bool star = ctx == Ctx::Analytic ? false : rng.next_int(0, 1) == 1;
      ls.push_back({idx, star});
    }
    f = f + MatrixPoly::from_word(Word(std::move(ls)),
                                  rng.next_scalar(4, ctx != Ctx::Analytic), alph);
  }
  return f;
}

}  // namespace

TEST_CASE("parse examples") {
  SECTION("commutator") {
    MatrixPoly f = parse_poly("x1*x2 - x2*x1");
    REQUIRE(f == commutator());
  }
  SECTION("hermitian 2x2 matrix literal") {
    MatrixPoly f = parse_poly("[1 + x1 x1', x1; x1', -1 - x1' x1]");
    REQUIRE(f.dim() == 2);
    REQUIRE(f.is_hermitian());
    REQUIRE(f.coeff(Word())(0, 0) == Scalar(1));
    REQUIRE(f.coeff(Word())(1, 1) == Scalar(-1));
    Word xxs({{1, false}, {1, true}});
    REQUIRE(f.coeff(xxs)(0, 0) == Scalar(1));
  }
  SECTION("gaussian coefficients and powers") {
    MatrixPoly f = parse_poly("(1/2+1/2i) x1^2");
    Word xx({{1, false}, {1, false}});
    REQUIRE(f.coeff(xx)(0, 0) == Scalar(make_rat(1, 2), make_rat(1, 2)));
  }
  SECTION("juxtaposition without spaces") {
    REQUIRE(parse_poly("x1x2") == xv(1) * xv(2));
    REQUIRE(parse_poly("2i") == MatrixPoly::scalar_constant(Scalar(Rat(0), Rat(2)),
                                                            analytic_alphabet(1)));
  }
  SECTION("slack letters") {
    MatrixPoly f = parse_poly("y' y - (1 - x1' x1)");
    REQUIRE(f.alphabet().ctx == Ctx::Slack);
    REQUIRE(f.uses_slack());
  }
  SECTION("errors carry positions") {
    REQUIRE_THROWS_AS(parse_poly("x1 + "), SyntaxError);
    REQUIRE_THROWS_AS(parse_poly("x1 + z3"), UnknownVariable);
    REQUIRE_THROWS_AS(parse_poly("x0"), UnknownVariable);
    REQUIRE_THROWS_AS(parse_poly("(x1"), SyntaxError);
    REQUIRE_THROWS_AS(parse_poly("x1 / x2"), SyntaxError);
  }
}

TEST_CASE("print examples") {
  REQUIRE(print_poly(commutator()) == "x1*x2 - x2*x1");
  REQUIRE(print_poly(xv(1) * xv(1)) == "x1^2");
  REQUIRE(print_poly(MatrixPoly(analytic_alphabet(1), 1, 1)) == "0");
  REQUIRE(print_poly(xsv(1)) == "x1'");
  MatrixPoly half_i = MatrixPoly::scalar_constant(Scalar(make_rat(1, 2), make_rat(1, 2)),
                                                  analytic_alphabet(1));
  REQUIRE(print_poly(half_i * xv(1)) == "(1/2+1/2i) x1");
}

TEST_CASE("parse-print round trip on 500 random expressions") {
  Rng rng(20260810);
  int done = 0;
  while (done < 500) {
    MatrixPoly f = random_printable_poly(rng);
    std::string text = print_poly(f);
    MatrixPoly g = parse_poly(text);
    Alphabet joint = Alphabet::join(f.alphabet(), g.alphabet());
    REQUIRE(g.with_alphabet(joint) == f.with_alphabet(joint));
    REQUIRE(print_poly(g) == text);  // canonical fixpoint
    ++done;
  }
}

TEST_CASE("matrix round trips") {
  Rng rng(77);
  for (int it = 0; it < 30; ++it) {
    MatrixPoly f = poly_matrix(2, {random_printable_poly(rng), random_printable_poly(rng),
                                   random_printable_poly(rng), random_printable_poly(rng)});
    std::string text = print_poly(f);
    MatrixPoly g = parse_poly(text);
    Alphabet joint = Alphabet::join(f.alphabet(), g.alphabet());
    REQUIRE(g.with_alphabet(joint) == f.with_alphabet(joint));
  }
}
