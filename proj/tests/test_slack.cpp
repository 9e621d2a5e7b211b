#include <catch2/catch_amalgamated.hpp>

#include "freelocus/slack.hpp"
#include "support/poly_builders.hpp"

using namespace freelocus;
using namespace fltest;

namespace {

MatrixPoly fdef() {  // 1 - x1' x1
  return cv(1, 1).with_alphabet(slack_alphabet(1)) -
         (xsv(1) * xv(1)).with_alphabet(slack_alphabet(1));
}

MatrixPoly generator(const MatrixPoly& f) {  // f - y*y
  return f.with_alphabet(slack_alphabet(f.alphabet().g)) -
         (ysv() * yv()).with_alphabet(slack_alphabet(f.alphabet().g));
}

MatrixPoly random_slack_word_poly(Rng& rng, std::uint32_t g, int terms, int maxlen,
                                  bool avoid_reducible) {
  Alphabet alph = slack_alphabet(g);
  MatrixPoly p(alph, 1, 1);
  for (int t = 0; t < terms; ++t) {
    for (;;) {
      int len = static_cast<int>(rng.next_int(0, maxlen));
      std::vector<Letter> ls;
      for (int i = 0; i < len; ++i) {
        std::uint32_t idx = static_cast<std::uint32_t>(rng.next_int(0, g));
        ls.push_back({idx, rng.next_int(0, 1) == 1});
      }
      Word w(std::move(ls));
      if (avoid_reducible && !freelocus::detail::slack_sites(w).empty()) continue;
      p = p + MatrixPoly::from_word(w, rng.next_scalar(3, true), alph);
      break;
    }
  }
  return p;
}

}  // namespace

TEST_CASE("slack reduction examples") {
  MatrixPoly f = fdef();
  SECTION("y*y rewrites to f") {
    MatrixPoly h = (ysv() * yv()).with_alphabet(slack_alphabet(1));
    REQUIRE(slack_reduce(h, f) == f);
  }
  SECTION("x1 y*y - y*y x1 rewrites to the commutator with f") {
    MatrixPoly x1 = xv(1).with_alphabet(slack_alphabet(1));
    MatrixPoly yy = (ysv() * yv()).with_alphabet(slack_alphabet(1));
    REQUIRE(slack_reduce(x1 * yy - yy * x1, f) == x1 * f - f * x1);
  }
  SECTION("the generator reduces to zero") {
    REQUIRE(slack_reduce(generator(f), f).is_zero());
  }
  SECTION("two-step reduction, independent orders agree") {
    MatrixPoly yy = (ysv() * yv()).with_alphabet(slack_alphabet(1));
    MatrixPoly h = yy * yy - f * f;
    MatrixPoly nf = slack_reduce(h, f);
    REQUIRE(nf.is_zero());
    Rng site_rng(99);
    REQUIRE(slack_reduce(h, f, &site_rng).is_zero());
  }
  SECTION("input guards") {
    REQUIRE_THROWS_AS(slack_reduce(yv(), cv(2, 1)), ConstantF);
    REQUIRE_THROWS_AS(slack_reduce(yv(), generator(fdef())), SlackInF);
  }
}

TEST_CASE("membership") {
  MatrixPoly f = fdef();
  MatrixPoly gen = generator(f);
  SECTION("two-sided multiples are members") {
    Rng rng(13);
    for (int it = 0; it < 40; ++it) {
      MatrixPoly a = random_slack_word_poly(rng, 1, 2, 2, false);
      MatrixPoly b = random_slack_word_poly(rng, 1, 2, 2, false);
      REQUIRE(is_member(a * gen * b, f).member);
    }
  }
  SECTION("1 is not a member") {
    MembershipVerdict v = is_member(cv(1, 1).with_alphabet(slack_alphabet(1)), f);
    REQUIRE_FALSE(v.member);
    REQUIRE(v.normal_form == cv(1, 1).with_alphabet(slack_alphabet(1)));
  }
  SECTION("normal forms with nonzero constant term are non-members") {
    Rng rng(14);
    for (int it = 0; it < 25; ++it) {
      MatrixPoly h = random_slack_word_poly(rng, 1, 3, 3, true) +
                     cv(1 + static_cast<long>(rng.next_int(0, 3)), 1)
                         .with_alphabet(slack_alphabet(1));
      if (!is_normal_form(h)) continue;
      if (h.constant_term()(0, 0).is_zero()) continue;
      REQUIRE_FALSE(is_member(h, f).member);
    }
  }
}

TEST_CASE("confluence under randomized site selection") {
  MatrixPoly f = fdef();
  Rng rng(15);
  for (int it = 0; it < 30; ++it) {
    MatrixPoly h = random_slack_word_poly(rng, 1, 3, 4, false);
    MatrixPoly nf = slack_reduce(h, f);
    REQUIRE(is_normal_form(nf));
    for (int order = 0; order < 10; ++order) {
      Rng site_rng(1000 * it + order);
      REQUIRE(slack_reduce(h, f, &site_rng) == nf);
    }
  }
}

TEST_CASE("hard-zero consistency") {
  MatrixPoly f = fdef().with_alphabet(slack_alphabet(1));
  // treat f as analytic in x1 for the resolvent evaluation
  MatrixPoly fan = cv(1, 1) - xv(1) * xv(1);  // 1 - x1^2, analytic nonconstant
  MatrixPoly gen = fan.with_alphabet(slack_alphabet(1)) -
                   (ysv() * yv()).with_alphabet(slack_alphabet(1));
  SECTION("the generator vanishes on resolvent points") {
    ConsistencyReport r = sample_hard_zero_consistency(fan, gen, 2, 10, 500);
    REQUIRE(r.all_zero);
    REQUIRE(r.max_deviation == Rat(0));
  }
  SECTION("the cleared resolvent relation y'y - f vanishes") {
    MatrixPoly rel = (ysv() * yv()).with_alphabet(slack_alphabet(1)) -
                     fan.with_alphabet(slack_alphabet(1));
    ConsistencyReport r = sample_hard_zero_consistency(fan, rel, 2, 10, 501);
    REQUIRE(r.all_zero);
  }
  SECTION("y' alone is generically nonzero") {
    ConsistencyReport r = sample_hard_zero_consistency(fan, ysv(), 2, 10, 502);
    REQUIRE_FALSE(r.all_zero);
  }
  SECTION("members vanish on all samples") {
    Rng rng(16);
    for (int it = 0; it < 10; ++it) {
      MatrixPoly a = random_slack_word_poly(rng, 1, 2, 2, false);
      MatrixPoly b = random_slack_word_poly(rng, 1, 2, 2, false);
      MatrixPoly h = a * gen * b;
      REQUIRE(is_member(h, fan).member);
      ConsistencyReport r = sample_hard_zero_consistency(fan, h, 2, 5, 600 + it);
      REQUIRE(r.all_zero);
    }
  }
}

TEST_CASE("Positivstellensatz verification") {
  MatrixPoly f = fdef();
  SearchBudget b{2, 40, 2};
  SECTION("constructed certificate is accepted") {
    // h = (f - y*y) + x1' x1, certificate {f1 = x1}
    MatrixPoly h = generator(f) + (xsv(1) * xv(1)).with_alphabet(slack_alphabet(1));
    PsatzCertificate cert;
    cert.fj.push_back(xv(1).with_alphabet(slack_alphabet(1)));
    PsatzResult r = verify_psatz(h, f, cert, b, 700);
    REQUIRE(r.accepted);
    REQUIRE(r.spot_check_ok);
  }
  SECTION("trivial certificate h = 1, f1 = 1") {
    PsatzCertificate cert;
    cert.fj.push_back(cv(1, 1).with_alphabet(slack_alphabet(1)));
    PsatzResult r = verify_psatz(cv(1, 1).with_alphabet(slack_alphabet(1)), f, cert, b, 701);
    REQUIRE(r.accepted);
  }
  SECTION("h = -1 with the empty certificate is rejected") {
    PsatzResult r = verify_psatz(cv(-1, 1).with_alphabet(slack_alphabet(1)), f,
                                 PsatzCertificate{}, b, 702);
    REQUIRE_FALSE(r.accepted);
    REQUIRE(r.residual_normal_form == cv(-1, 1).with_alphabet(slack_alphabet(1)));
  }
  SECTION("hereditary-quadratic precondition is enforced") {
    MatrixPoly bad = (xv(1) * xsv(1)).with_alphabet(slack_alphabet(1));
    REQUIRE_THROWS_AS(verify_psatz(cv(1, 1), bad, PsatzCertificate{}, b, 703),
                      NotHereditaryQuadratic);
  }
  SECTION("no positivity witness for globally negative f") {
    MatrixPoly neg = cv(-1, 1).with_alphabet(slack_alphabet(1)) -
                     (xsv(1) * xv(1)).with_alphabet(slack_alphabet(1));
    REQUIRE_THROWS_AS(verify_psatz(cv(1, 1), neg, PsatzCertificate{}, b, 704),
                      NoPositivityWitness);
  }
}
