#include <catch2/catch_amalgamated.hpp>

#include "freelocus/floatlin.hpp"
#include "freelocus/matrix.hpp"
#include "freelocus/primefield.hpp"
#include "freelocus/rng.hpp"
#include "freelocus/unipoly.hpp"

using namespace freelocus;

namespace {

Mat<Scalar> mat2(Scalar a, Scalar b, Scalar c, Scalar d) {
  Mat<Scalar> m(2, 2);
  m(0, 0) = a; m(0, 1) = b; m(1, 0) = c; m(1, 1) = d;
  return m;
}

UniPoly<Rat> rp(std::vector<long> coeffs) {
  std::vector<Rat> c;
  for (long x : coeffs) c.emplace_back(x);
  return UniPoly<Rat>(c);
}

}  // namespace

TEST_CASE("scalar field axioms and conjugation") {
  Scalar i = Scalar::unit_i();
  Scalar z(make_rat(3, 2), make_rat(-1, 3));
  REQUIRE(z.conj().conj() == z);
  REQUIRE((z * i) * i == -z);
  REQUIRE(z * z.inv() == Scalar(1));
  REQUIRE((z + z.conj()).is_real());
  REQUIRE(to_string(Scalar(make_rat(1, 2), make_rat(1, 2))) == "1/2+1/2i");
  REQUIRE(to_string(Scalar(make_rat(-3), make_rat(0))) == "-3");
}

TEST_CASE("exact square roots") {
  Scalar s;
  REQUIRE(scalar_sqrt(Scalar(-1), s));
  REQUIRE(s * s == Scalar(-1));
  REQUIRE(scalar_sqrt(Scalar(Rat(0), Rat(2)), s));  // sqrt(2i) = 1+i
  REQUIRE(s * s == Scalar(Rat(0), Rat(2)));
  REQUIRE_FALSE(scalar_sqrt(Scalar(3), s));
  Rat r;
  REQUIRE(rat_sqrt(make_rat(49, 16), r));
  REQUIRE(r == make_rat(7, 4));
  REQUIRE_FALSE(rat_sqrt(make_rat(2), r));
}

TEST_CASE("hermitian signature examples") {
  SECTION("diag(1,-1)") {
    auto h = mat2(Scalar(1), Scalar(0), Scalar(0), Scalar(-1));
    auto s = hermitian_signature(h);
    REQUIRE(s == Signature{1, 1, 0});
  }
  SECTION("antidiagonal ones") {
    auto h = mat2(Scalar(0), Scalar(1), Scalar(1), Scalar(0));
    REQUIRE(hermitian_signature(h) == Signature{1, 1, 0});
  }
  SECTION("[[2, i], [-i, 1]] is positive definite") {
    auto h = mat2(Scalar(2), Scalar::unit_i(), -Scalar::unit_i(), Scalar(1));
    REQUIRE(hermitian_signature(h) == Signature{2, 0, 0});
    REQUIRE(float_signature(h) == Signature{2, 0, 0});
  }
  SECTION("non-hermitian input is rejected") {
    auto h = mat2(Scalar(1), Scalar(2), Scalar(3), Scalar(4));
    REQUIRE_THROWS_AS(hermitian_signature(h), NotHermitian);
  }
}

TEST_CASE("signature congruence invariance") {
  Rng rng(20240518);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t d = 1 + static_cast<std::size_t>(rng.next_int(0, 7));
    Mat<Scalar> h = random_hermitian(rng, d, 4);
    Mat<Scalar> s = random_invertible(rng, d, 3, true);
    Mat<Scalar> congruent = s.conj_transpose() * h * s;
    REQUIRE(hermitian_signature(congruent) == hermitian_signature(h));
  }
}

TEST_CASE("signature agrees with float eigenvalue oracle") {
  Rng rng(77);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t d = 1 + static_cast<std::size_t>(rng.next_int(0, 5));
    Mat<Scalar> h = random_hermitian(rng, d, 6);
    REQUIRE(hermitian_signature(h) == float_signature(h));
  }
}

TEST_CASE("nullspace examples") {
  SECTION("identity has trivial kernel") {
    REQUIRE(nullspace(Mat<Scalar>::identity(3)).empty());
  }
  SECTION("zero 2x3 has full kernel") {
    REQUIRE(nullspace(Mat<Scalar>(2, 3)).size() == 3);
  }
  SECTION("rank-one 2x2") {
    auto m = mat2(Scalar(1), Scalar(1), Scalar(1), Scalar(1));
    auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    // proportional to (1, -1)
    REQUIRE(basis[0][0] == -basis[0][1]);
    REQUIRE(m.apply_to(basis[0]).is_zero());
  }
}

TEST_CASE("rank-nullity and exact kernels on random matrices") {
  Rng rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    std::size_t r = 1 + static_cast<std::size_t>(rng.next_int(0, 4));
    std::size_t c = 1 + static_cast<std::size_t>(rng.next_int(0, 4));
    Mat<Scalar> m = random_matrix(rng, r, c, 3, true);
    auto basis = nullspace(m);
    REQUIRE(rank(m) + basis.size() == c);
    for (const auto& v : basis) REQUIRE(m.apply_to(v).is_zero());
  }
}

TEST_CASE("determinant and inverse") {
  Rng rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    std::size_t d = 1 + static_cast<std::size_t>(rng.next_int(0, 4));
    Mat<Scalar> m = random_invertible(rng, d, 4, true);
    Mat<Scalar> mi = inverse(m);
    REQUIRE(m * mi == Mat<Scalar>::identity(d));
    REQUIRE(det(m) * det(mi) == Scalar(1));
  }
  REQUIRE(det(Mat<Scalar>(0, 0)) == Scalar(1));  // empty matrix convention
}

TEST_CASE("sturm root counts") {
  REQUIRE(sturm_real_root_count(rp({1, 0, 1})) == 0);       // t^2 + 1
  REQUIRE(sturm_real_root_count(rp({-2, 0, 1})) == 2);      // t^2 - 2
  REQUIRE(sturm_real_root_count(rp({0, -1, 0, 1}), Rat(0), Rat(2)) == 2);  // t^3 - t on [0,2]
  REQUIRE(sturm_real_root_count(rp({0, -1, 0, 1})) == 3);
  REQUIRE_THROWS_AS(sturm_real_root_count(UniPoly<Rat>()), ZeroPolynomial);
}

TEST_CASE("squarefree part") {
  auto p = rp({1, -1}) * rp({1, -1}) * rp({2, 1});  // (t-1)^2 (t+2) up to sign convention
  auto sf = squarefree_part(p);
  auto expect = (rp({-1, 1}) * rp({2, 1})).monic();
  REQUIRE(sf == expect);
  REQUIRE(squarefree_part(rp({0, 1})) == rp({0, 1}));
  REQUIRE(squarefree_part(rp({5})) == rp({1}));
  REQUIRE_THROWS_AS(squarefree_part(UniPoly<Rat>()), ZeroPolynomial);
}

TEST_CASE("squarefree divides and has simple roots") {
  Rng rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<Rat> c;
    int deg = static_cast<int>(rng.next_int(1, 5));
    for (int i = 0; i <= deg; ++i) c.push_back(rng.next_rat(4));
    UniPoly<Rat> p(c);
    if (p.is_zero()) continue;
    auto sf = squarefree_part(p);
    REQUIRE(sf.divides(p));
    REQUIRE(gcd_poly(sf, sf.derivative()).is_constant());
  }
}

TEST_CASE("root isolation and refinement") {
  auto p = rp({0, -1, 0, 1});  // roots -1, 0, 1
  auto ivs = isolate_real_roots(p);
  REQUIRE(ivs.size() == 3);
  for (auto iv : ivs) {
    auto fine = refine_root_interval(squarefree_part(p), iv, make_rat(1, 100));
    REQUIRE(fine.second - fine.first <= make_rat(1, 100));
    REQUIRE(sturm_real_root_count(p, fine.first, fine.second) == 1);
  }
}

TEST_CASE("rational and gaussian-rational roots") {
  SECTION("rational roots of a cubic") {
    auto p = rp({-1, 1}) * rp({3, 2}) * rp({1, 0, 1});  // roots 1, -3/2, +-i
    auto roots = rational_roots(p);
    REQUIRE(roots == std::vector<Rat>{make_rat(-3, 2), make_rat(1)});
  }
  SECTION("gaussian roots of t^2+1") {
    auto roots = gaussian_rational_roots(to_scalar_poly(rp({1, 0, 1})));
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) REQUIRE((r * r) == Scalar(-1));
  }
  SECTION("gaussian roots of a split cubic") {
    // (t - i)(t - 2)(t + 1 - i)
    UniPoly<Scalar> p(std::vector<Scalar>{Scalar(1)});
    std::vector<Scalar> roots_in = {Scalar::unit_i(), Scalar(2),
                                    Scalar(Rat(-1), Rat(1))};
    for (const auto& r : roots_in)
      p = p * UniPoly<Scalar>(std::vector<Scalar>{-r, Scalar(1)});
    auto roots = gaussian_rational_roots(p);
    REQUIRE(roots.size() == 3);
    for (const auto& r : roots_in)
      REQUIRE(std::find(roots.begin(), roots.end(), r) != roots.end());
  }
  SECTION("irreducible quadratic over Q(i) has no roots") {
    auto roots = gaussian_rational_roots(to_scalar_poly(rp({-2, 0, 1})));  // t^2-2
    REQUIRE(roots.empty());
  }
}

TEST_CASE("interpolation round trip") {
  Rng rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    int deg = static_cast<int>(rng.next_int(0, 6));
    std::vector<Scalar> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rng.next_scalar(5, true));
    UniPoly<Scalar> p(c);
    std::vector<Scalar> nodes, values;
    for (int t = 0; t <= deg; ++t) {
      nodes.emplace_back(static_cast<long>(t));
      values.push_back(p.eval(nodes.back()));
    }
    REQUIRE(interpolate(nodes, values) == p);
  }
}

TEST_CASE("prime field arithmetic and reduction") {
  REQUIRE(is_probable_prime(kDefaultPrime));
  Fp a(5, 7), b(4, 7);
  REQUIRE((a * b).v == 6);
  REQUIRE((a / b * b) == a);
  Fp2 z(Fp(3, kDefaultPrime), Fp(2, kDefaultPrime));
  REQUIRE((z * z.inv()) == Fp2::one(kDefaultPrime));

  Scalar s(make_rat(2, 3), make_rat(-1, 5));
  Fp2 r = reduce_mod_p(s, kDefaultPrime);
  // re-check: r * (3*5) == (2*5, -3) mod p
  Fp2 lhs = r * Fp2(Fp(15, kDefaultPrime), Fp(0, kDefaultPrime));
  Fp2 rhs(Fp::from_int(10, kDefaultPrime), Fp::from_int(-3, kDefaultPrime));
  REQUIRE(lhs == rhs);
  REQUIRE_THROWS(reduce_mod_p(make_rat(1, static_cast<long>(7)), 7));
}

TEST_CASE("mod-p determinant matches exact determinant") {
  Rng rng(42);
  for (int iter = 0; iter < 25; ++iter) {
    std::size_t d = 1 + static_cast<std::size_t>(rng.next_int(0, 4));
    Mat<Scalar> m = random_matrix(rng, d, d, 10, true);
    Mat<Fp2> mp(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) mp(i, j) = reduce_mod_p(m(i, j), kDefaultPrime);
    REQUIRE(det(mp) == reduce_mod_p(det(m), kDefaultPrime));
  }
}
