#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orchard/field.hpp"

using namespace orchard;

namespace {

// independent Horner evaluation, used as the oracle against roots_of
GF::Elem eval_poly(const GF& F, const std::vector<GF::Elem>& c, GF::Elem x) {
  GF::Elem acc = F.zero();
  for (size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), c[i]);
  return acc;
}

void check_axioms(const GF& F, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto rnd = [&]() { return GF::Elem(rng() % F.q()); };
  for (int i = 0; i < samples; ++i) {
    GF::Elem a = rnd(), b = rnd(), c = rnd();
    CHECK(F.add(a, b) == F.add(b, a));
    CHECK(F.mul(a, b) == F.mul(b, a));
    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    CHECK(F.add(a, F.neg(a)) == F.zero());
    CHECK(F.mul(a, F.one()) == a);
    CHECK(F.add(a, F.zero()) == a);
    if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
  }
}

}  // namespace

TEST_CASE("prime field basics") {
  GF F(7, 1);
  CHECK(F.q() == 7);
  CHECK(F.add(3, 5) == 1);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.neg(0) == 0);
  CHECK(F.neg(2) == 5);
  CHECK(F.inv(3) == 5);
  CHECK(F.pow(3, 6) == 1);
  CHECK(F.pow(3, -1) == 5);
  CHECK(F.from_signed(-1) == 6);
  CHECK_THROWS_AS(F.inv(0), Error);
  CHECK_THROWS_AS(F.div(1, 0), Error);
}

TEST_CASE("x^2 - x + 1 over F_7: scan oracle agrees with roots_of") {
  GF F(7, 1);
  // x^2 - x + 1 has coefficients (1, -1, 1) from the constant term up
  std::vector<GF::Elem> poly{1, F.from_signed(-1), 1};
  // oracle: direct evaluation at every element
  std::vector<GF::Elem> scan;
  for (GF::Elem x = 0; x < 7; ++x)
    if (F.is_zero(eval_poly(F, poly, x))) scan.push_back(x);
  CHECK(scan == std::vector<GF::Elem>{3, 5});
  CHECK(roots_of(F, poly) == scan);
  // 5*5 - 5 + 1 = 21 = 0 mod 7
  CHECK(F.is_zero(F.add(F.sub(F.mul(5, 5), 5), F.one())));
}

TEST_CASE("x^2 - x + 1 root pattern over small fields") {
  // F_3 sees the double root x = 2 once; F_4 adjoins both primitive cube roots of -1
  for (auto [p, k, nroots] : {std::tuple{2u, 1u, 0}, {3u, 1u, 1}, {2u, 2u, 2},
                              {5u, 1u, 0}, {7u, 1u, 2}, {13u, 1u, 2}}) {
    GF F(p, k);
    std::vector<GF::Elem> poly{F.one(), F.neg(F.one()), F.one()};
    CHECK(int(roots_of(F, poly).size()) == nroots);
  }
}

TEST_CASE("field construction errors") {
  CHECK_THROWS_AS(GF(12, 1), Error);                      // not prime
  CHECK_THROWS_AS(GF(2, 0), Error);                       // bad degree
  CHECK_THROWS_AS(GF(2, 4, {1, 0, 0, 0, 1}), Error);      // x^4+1 = (x+1)^4 in char 2
  CHECK_THROWS_AS(GF(2, 25), Error);                      // over the size cap
  CHECK_NOTHROW(GF(3, 2, {2, 1, 1}));                     // x^2+x+2, irreducible over F_3
}

TEST_CASE("canonical modulus is the lex-least irreducible, constant term first") {
  // independent oracle: exhaustive enumeration in lex order over (m0..m_{k-1})
  for (auto [p, k] : {std::pair{2u, 2u}, {2u, 3u}, {2u, 4u}, {3u, 2u}, {5u, 2u}, {2u, 8u}}) {
    auto canon = GF::canonical_modulus(p, k);
    REQUIRE(poly_irreducible(p, canon));
    std::vector<std::uint32_t> m(k + 1, 0);
    m[k] = 1;
    bool hit = false;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total && !hit; ++idx) {
      std::uint64_t v = idx, w = total / p;
      for (std::uint32_t i = 0; i < k; ++i) {
        m[i] = std::uint32_t(v / w);
        v %= w;
        w /= p;
      }
      if (poly_irreducible(p, m)) {
        CHECK(m == canon);
        hit = true;
      }
    }
    CHECK(hit);
  }
  // spot values
  CHECK(GF::canonical_modulus(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(GF::canonical_modulus(3, 2) == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("element order is lex on coefficient vectors, constant term first") {
  GF F(2, 4);
  CHECK(F.coeffs(0) == std::vector<std::uint32_t>{0, 0, 0, 0});
  CHECK(F.coeffs(1) == std::vector<std::uint32_t>{0, 0, 0, 1});
  CHECK(F.coeffs(2) == std::vector<std::uint32_t>{0, 0, 1, 0});
  CHECK(F.one() == 8);  // (1,0,0,0)
  // integer order on indices == lex order on unpacked vectors
  for (GF::Elem a = 0; a + 1 < F.q(); ++a) CHECK(F.coeffs(a) < F.coeffs(a + 1));
  CHECK(F.from_coeffs({1, 0, 1, 1}) == GF::Elem(8 + 2 + 1));
}

TEST_CASE("field axioms hold over assorted fields") {
  check_axioms(GF(2, 1), 50, 11);
  check_axioms(GF(3, 1), 50, 12);
  check_axioms(GF(2, 2), 50, 13);
  check_axioms(GF(7, 1), 80, 14);
  check_axioms(GF(2, 4), 200, 15);
  check_axioms(GF(3, 2), 200, 16);
  check_axioms(GF(2, 8), 400, 17);
  check_axioms(GF(11, 1), 80, 18);
  check_axioms(GF(13, 1), 80, 19);
  check_axioms(GF(2, 18), 60, 20);  // beyond the table cap: direct path
}

TEST_CASE("tables agree with the schoolbook path") {
  for (auto [p, k] : {std::pair{2u, 4u}, {2u, 8u}, {3u, 2u}, {3u, 4u}, {13u, 1u}}) {
    GF F(p, k);
    REQUIRE(F.has_tables());
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
      GF::Elem a = GF::Elem(rng() % F.q()), b = GF::Elem(rng() % F.q());
      CHECK(F.mul(a, b) == F.mul_direct(a, b));
    }
  }
}

TEST_CASE("inverses exhaustively on small fields") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u},
                      {2u, 3u}, {3u, 2u}, {2u, 4u}, {11u, 1u}, {13u, 1u}, {2u, 8u}}) {
    GF F(p, k);
    for (GF::Elem a = 1; a < F.q(); ++a) {
      CHECK(F.mul(a, F.inv(a)) == F.one());
      CHECK(F.div(F.one(), a) == F.inv(a));
    }
  }
}

TEST_CASE("Frobenius is additive in characteristic 2") {
  GF F(2, 4);
  for (GF::Elem a = 0; a < F.q(); ++a)
    for (GF::Elem b = 0; b < F.q(); ++b)
      CHECK(F.mul(F.add(a, b), F.add(a, b)) == F.add(F.mul(a, a), F.mul(b, b)));
}

TEST_CASE("subfield embeddings") {
  GF f2(2, 1), f4(2, 2), f16(2, 4), f256(2, 8);
  GF::Embedding e1(f2, f16);  // constant-term inclusion
  CHECK(e1(0) == f16.zero());
  CHECK(e1(1) == f16.one());
  GF::Embedding e2(f4, f16);  // canonical root embedding (self-verified)
  CHECK(e2(f4.one()) == f16.one());
  GF::Embedding e3(f4, f256);
  CHECK(e3(f4.zero()) == f256.zero());
  CHECK_THROWS_AS(GF::Embedding(GF(2, 3), f16), Error);  // F_8 is no subfield of F_16
  CHECK_THROWS_AS(GF::Embedding(GF(3, 1), f16), Error);  // wrong characteristic
}

TEST_CASE("rationals are exact and canonical") {
  QField Q;
  auto a = Q.make(mpq_class(1, 3), 0), b = Q.make(mpq_class(1, 6), 0);
  CHECK(Q.add(a, b) == Q.make(mpq_class(1, 2), 0));
  CHECK(Q.inv(Q.make(mpq_class(-2, 3), 0)) == Q.make(mpq_class(-3, 2), 0));
  CHECK(Q.mul(a, Q.zero()) == Q.zero());
  CHECK_THROWS_AS(Q.inv(Q.zero()), Error);
  CHECK_THROWS_AS(Q.eps(), Error);
  CHECK_THROWS_AS(Q.make(1, 1), Error);
}

TEST_CASE("rational roots via the discriminant") {
  QField Q;
  using E = QField::Elem;
  auto mk = [&](long n, long d = 1) { return Q.make(mpq_class(n, d), 0); };
  // x^2 - 2: no rational root
  CHECK(roots_of(Q, std::vector<E>{mk(-2), mk(0), mk(1)}).empty());
  // x^2 - 9/4 -> {-3/2, 3/2}
  auto r = roots_of(Q, std::vector<E>{mk(-9, 4), mk(0), mk(1)});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == mk(-3, 2));
  CHECK(r[1] == mk(3, 2));
  // 2x - 3 -> {3/2}
  auto l = roots_of(Q, std::vector<E>{mk(-3), mk(2)});
  REQUIRE(l.size() == 1);
  CHECK(l[0] == mk(3, 2));
  // (x - 1/2)^2: double root reported once
  auto d = roots_of(Q, std::vector<E>{mk(1, 4), mk(-1), mk(1)});
  REQUIRE(d.size() == 1);
  CHECK(d[0] == mk(1, 2));
  CHECK_THROWS_AS(roots_of(Q, std::vector<E>{mk(1), mk(1), mk(1), mk(1)}), Error);
}

TEST_CASE("quadratic extension Q(eps) with 4eps^2 - 6eps + 1 = 0") {
  QField F(4, -6, 1);
  REQUIRE(F.quadratic());
  auto e = F.eps();
  // defining relation
  auto lhs = F.add(F.sub(F.mul(F.from_int(4), F.mul(e, e)), F.mul(F.from_int(6), e)), F.one());
  CHECK(F.is_zero(lhs));
  // reduction through the relation: -2 eps^2 + 3 eps = 1/2
  CHECK(F.from_eps_poly(-2, 3, 0) == F.make(mpq_class(1, 2), 0));
  // -2 eps^2 + 2 eps + 1 = 3/2 - eps
  CHECK(F.from_eps_poly(-2, 2, 1) == F.make(mpq_class(3, 2), -1));
  // inverse: eps * eps^{-1} = 1
  CHECK(F.mul(e, F.inv(e)) == F.one());
  auto x = F.make(mpq_class(3, 7), mpq_class(-2, 5));
  CHECK(F.mul(x, F.inv(x)) == F.one());
  CHECK(F.pow(x, 3) == F.mul(x, F.mul(x, x)));
  CHECK(F.pow(x, -2) == F.inv(F.mul(x, x)));
}

TEST_CASE("roots of the defining quadratic inside Q(eps)") {
  QField F(4, -6, 1);
  using E = QField::Elem;
  std::vector<E> poly{F.one(), F.from_int(-6), F.from_int(4)};
  auto r = roots_of(F, poly);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == F.eps());                       // (0, 1)
  CHECK(r[1] == F.make(mpq_class(3, 2), -1));   // conjugate 3/2 - eps
  // a quadratic with no root even in Q(eps): x^2 - 2 (sqrt(2) not in Q(sqrt(5)))
  auto none = roots_of(F, std::vector<E>{F.from_int(-2), F.zero(), F.one()});
  CHECK(none.empty());
}

TEST_CASE("irreducibility check for the quadratic kind") {
  CHECK_THROWS_AS(QField(1, -3, 2), Error);  // (x-1)(x-2)
  CHECK_THROWS_AS(QField(0, 1, 1), Error);   // not quadratic
  CHECK_NOTHROW(QField(1, 0, -5));           // x^2 - 5
  CHECK_NOTHROW(QField(1, 1, 1));            // x^2 + x + 1
}

TEST_CASE("Q(eps) axioms on random elements") {
  QField F(4, -6, 1);
  std::mt19937_64 rng(7);
  auto rnd = [&]() {
    return F.make(mpq_class(long(rng() % 19) - 9, long(rng() % 7) + 1),
                  mpq_class(long(rng() % 19) - 9, long(rng() % 5) + 1));
  };
  for (int i = 0; i < 120; ++i) {
    auto a = rnd(), b = rnd(), c = rnd();
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    CHECK(F.mul(a, b) == F.mul(b, a));
    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
    if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
  }
}

TEST_CASE("field spec headers round-trip") {
  auto s1 = FieldSpec::finite(11, 1);
  CHECK(s1.header() == "field 11 1 0 1");
  CHECK(FieldSpec::parse_header(s1.header()) == s1);
  auto s2 = FieldSpec::finite(2, 4);
  CHECK(FieldSpec::parse_header(s2.header()) == s2);
  CHECK(FieldSpec::parse_header("field 2 4") == s2);
  auto s3 = FieldSpec::rational();
  CHECK(s3.header() == "field Q");
  CHECK(FieldSpec::parse_header("field Q") == s3);
  auto s4 = FieldSpec::rational_quadratic(4, -6, 1);
  CHECK(s4.header() == "field Qquad 4 -6 1");
  CHECK(FieldSpec::parse_header(s4.header()) == s4);
  // canonicalization: scaled coefficients collapse to the same spec
  CHECK(FieldSpec::rational_quadratic(mpq_class(2), mpq_class(-3), mpq_class(1, 2)) == s4);
  CHECK(FieldSpec::rational_quadratic(-4, 6, -1) == s4);
  CHECK_THROWS_AS(FieldSpec::parse_header("field"), Error);
  CHECK_THROWS_AS(FieldSpec::parse_header("field 2"), Error);
  CHECK_THROWS_AS(FieldSpec::parse_header("field Qquad 1 2"), Error);
  CHECK_THROWS_AS(FieldSpec::parse_header("field 2 4 1 1"), Error);
}

TEST_CASE("element literals round-trip") {
  auto f7 = make_field(FieldSpec::finite(7, 1));
  auto e = element_from_string(f7, "-2");
  CHECK(e.g == 5);
  CHECK(element_to_string(*f7, e) == "5");

  auto f16 = make_field(FieldSpec::finite(2, 4));
  auto x = element_from_string(f16, "[1,0,1,1]");
  CHECK(element_to_string(*f16, x) == "[1,0,1,1]");
  CHECK(x.g == 11);
  CHECK_THROWS_AS(element_from_string(f16, "[1,0,1]"), Error);
  CHECK_THROWS_AS(element_from_string(f16, "7"), Error);

  auto q = make_field(FieldSpec::rational());
  CHECK(element_to_string(*q, element_from_string(q, "-6/4")) == "-3/2");
  CHECK_THROWS_AS(element_from_string(q, "1/0"), Error);
  CHECK_THROWS_AS(element_from_string(q, "2*eps"), Error);

  auto qe = make_field(FieldSpec::rational_quadratic(4, -6, 1));
  for (const char* lit : {"3/2-1*eps", "1/2", "2*eps", "-2*eps", "0", "-1/2+2/3*eps"}) {
    auto v = element_from_string(qe, lit);
    CHECK(element_to_string(*qe, v) == lit);
  }
  // liberal parse, canonical emission
  CHECK(element_to_string(*qe, element_from_string(qe, "3/2 - 1*eps")) == "3/2-1*eps");
  CHECK(element_to_string(*qe, element_from_string(qe, "eps")) == "1*eps");
  CHECK(element_to_string(*qe, element_from_string(qe, "-eps+1")) == "1-1*eps");
}

TEST_CASE("checked element ops raise FieldMismatch across fields") {
  auto f7 = make_field(FieldSpec::finite(7, 1));
  auto f11 = make_field(FieldSpec::finite(11, 1));
  auto a = el_make(f7, GF::Elem(3)), b = el_make(f11, GF::Elem(3));
  CHECK_THROWS_AS(el_add(a, b), Error);
  auto c = el_make(f7, GF::Elem(5));
  CHECK(el_eq(el_mul(a, c), el_make(f7, GF::Elem(1))));
  CHECK(el_eq(el_pow(a, -1), el_make(f7, GF::Elem(5))));
  auto q = make_field(FieldSpec::rational());
  CHECK_THROWS_AS(el_add(a, el_make(q, QField::Elem{1, 0})), Error);
}

TEST_CASE("prime power decomposition") {
  CHECK(prime_power(2) == std::pair<std::uint64_t, std::uint32_t>{2, 1});
  CHECK(prime_power(8) == std::pair<std::uint64_t, std::uint32_t>{2, 3});
  CHECK(prime_power(9) == std::pair<std::uint64_t, std::uint32_t>{3, 2});
  CHECK(prime_power(13) == std::pair<std::uint64_t, std::uint32_t>{13, 1});
  CHECK(!prime_power(12).has_value());
  CHECK(!prime_power(1).has_value());
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(101));
  CHECK(!is_prime_u64(1));
  CHECK(!is_prime_u64(91));
}
