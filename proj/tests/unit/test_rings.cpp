#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "refring/algebra.hpp"
#include "refring/ring.hpp"

using namespace refring;

namespace {

std::vector<std::int64_t> residues(const std::vector<Element>& xs) {
  std::vector<std::int64_t> out;
  for (const auto& x : xs) out.push_back(x.value().residue());
  return out;
}

Element at(const Ring& r, const char* text) { return r.parse_element(text); }

}  // namespace

TEST_CASE("descriptor grammar round-trips") {
  for (const char* text : {"integers", "modular(12)", "prime(5)", "poly(modular(4), bound=3)", "trivial(integers)",
                           "product(modular(2), modular(3))", "bipoly(prime(2), bound=2)", "poly(prime(2))"}) {
    Ring r = Ring::parse(text);
    CHECK(Ring::parse(r.name()) == r);
  }
  CHECK_THROWS_AS(Ring::parse("modular(1)"), Error);
  CHECK_THROWS_AS(Ring::parse("prime(6)"), Error);
  CHECK_THROWS_AS(Ring::parse("modular(4"), ParseError);
  CHECK_THROWS_AS(Ring::parse("product()"), Error);
}

TEST_CASE("arithmetic examples") {
  Ring z4 = Ring::modular(4);
  CHECK((at(z4, "2") * at(z4, "3")).value().residue() == 2);

  Ring t = Ring::parse("trivial(integers)");
  CHECK((at(t, "(2,1)") * at(t, "(3,5)")) == at(t, "(6,13)"));

  Ring f2x = Ring::parse("poly(prime(2))");
  CHECK((at(f2x, "X+1") * at(f2x, "X+1")) == at(f2x, "X^2+1"));
  CHECK((at(f2x, "X+1") * at(f2x, "X+1")).to_string() == "X^2+1");

  CHECK_THROWS_AS(at(z4, "1") + Ring::modular(6).one(), DescriptorMismatch);
}

TEST_CASE("units") {
  Ring z12 = Ring::modular(12);
  auto inv = unit_inverse(at(z12, "5"));
  REQUIRE(inv);
  CHECK(inv->value().residue() == 5);
  CHECK_FALSE(is_unit(Ring::integers().from_integer(2)));
  CHECK(is_unit(Ring::integers().from_integer(-1)));

  Ring t = Ring::parse("trivial(modular(4))");
  auto ti = unit_inverse(at(t, "(1,2)"));
  REQUIRE(ti);
  CHECK(*ti == at(t, "(1,2)"));
  CHECK(*unit_inverse_exhaustive(at(t, "(1,2)")) == at(t, "(1,2)"));

  Ring z4x = Ring::parse("poly(modular(4))");
  auto u = at(z4x, "2*X+1");
  auto ui = unit_inverse(u);
  REQUIRE(ui);
  CHECK((u * *ui).is_one());
  CHECK_FALSE(is_unit(at(z4x, "X+1")));
}

TEST_CASE("closed-form units agree with exhaustive search") {
  for (const char* text : {"modular(12)", "prime(7)", "trivial(modular(4))", "product(modular(4), prime(3))",
                           "trivial(modular(6))"}) {
    Ring r = Ring::parse(text);
    for (const auto& a : r.elements()) {
      auto c = unit_inverse(a);
      auto e = unit_inverse_exhaustive(a);
      CHECK(c.has_value() == e.has_value());
      if (c) CHECK((a * *c).is_one());
    }
  }
}

TEST_CASE("bezout_gcd") {
  Ring z = Ring::integers();
  auto b = bezout_gcd(z.from_integer(12), z.from_integer(18));
  CHECK(b.d == z.from_integer(6));
  CHECK(b.s == z.from_integer(-1));
  CHECK(b.t == z.from_integer(1));

  auto zero = bezout_gcd(z.zero(), z.zero());
  CHECK(zero.d.is_zero());
  CHECK(zero.s.is_zero());
  CHECK(zero.t.is_zero());

  Ring f2x = Ring::parse("poly(prime(2))");
  auto p = bezout_gcd(at(f2x, "X^2"), at(f2x, "X"));
  CHECK(p.d == at(f2x, "X"));
  CHECK(p.s.is_zero());
  CHECK(p.t.is_one());

  CHECK_THROWS_AS(bezout_gcd(Ring::parse("trivial(integers)").one(), Ring::parse("trivial(integers)").one()),
                  UnsupportedDescriptor);
}

TEST_CASE("property: bezout identity over Z and F_3[X]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-500, 500);
  Ring z = Ring::integers();
  for (int i = 0; i < 500; ++i) {
    auto a = z.from_integer(d(rng)), b = z.from_integer(d(rng));
    auto r = bezout_gcd(a, b);
    CHECK(r.s * a + r.t * b == r.d);
    CHECK(r.d.value().integer() >= 0);
    std::int64_t g = std::gcd(static_cast<std::int64_t>(a.value().integer()),
                              static_cast<std::int64_t>(b.value().integer()));
    CHECK(r.d == z.from_integer(g));
  }
  Ring f3x = Ring::parse("poly(prime(3))");
  std::uniform_int_distribution<int> c(0, 2);
  for (int i = 0; i < 200; ++i) {
    std::vector<Value> pa, pb;
    for (int k = 0; k < 4; ++k) {
      pa.emplace_back(std::int64_t{c(rng)});
      pb.emplace_back(std::int64_t{c(rng)});
    }
    auto a = f3x.element(Value(pa)), b = f3x.element(Value(pb));
    auto r = bezout_gcd(a, b);
    CHECK(r.s * a + r.t * b == r.d);
    if (!r.d.is_zero()) CHECK(r.d.value().parts().back().residue() == 1);
  }
}

TEST_CASE("idempotents and primitive decomposition") {
  CHECK(residues(idempotents(Ring::modular(6))) == std::vector<std::int64_t>{0, 1, 3, 4});
  CHECK(residues(idempotents(Ring::modular(4))) == std::vector<std::int64_t>{0, 1});
  CHECK(residues(idempotents(Ring::prime_field(2))) == std::vector<std::int64_t>{0, 1});

  CHECK(residues(primitive_idempotent_decomposition(Ring::modular(6)).elements()) ==
        std::vector<std::int64_t>{3, 4});
  CHECK(residues(primitive_idempotent_decomposition(Ring::modular(4)).elements()) == std::vector<std::int64_t>{1});
  std::vector<std::int64_t> crt{oracle::crt_idempotent(30, 2), oracle::crt_idempotent(30, 3),
                                oracle::crt_idempotent(30, 5)};
  CHECK(crt == std::vector<std::int64_t>{15, 10, 6});
  CHECK(residues(primitive_idempotent_decomposition(Ring::modular(30)).elements()) == crt);
}

TEST_CASE("IdempotentBasis rejects invalid families") {
  Ring z6 = Ring::modular(6);
  CHECK_THROWS_AS(IdempotentBasis(z6, {z6.one()}), PreconditionViolated);  // 1 is not primitive
  CHECK_THROWS_AS(IdempotentBasis(z6, {at(z6, "3")}), PreconditionViolated);
  CHECK_NOTHROW(IdempotentBasis(z6, {at(z6, "4"), at(z6, "3")}));
}

TEST_CASE("property: idempotent bases of finite rings") {
  for (const char* text : {"modular(4)", "modular(6)", "modular(12)", "modular(30)", "prime(5)",
                           "trivial(modular(4))", "product(modular(4), modular(6))"}) {
    Ring r = Ring::parse(text);
    if (!r.cardinality()) continue;
    auto basis = primitive_idempotent_decomposition(r);
    Element sum = r.zero();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(basis[i] * basis[i] == basis[i]);
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (i != j) CHECK((basis[i] * basis[j]).is_zero());
      sum = sum + basis[i];
    }
    CHECK(sum.is_one());
  }
}

TEST_CASE("jacobson radical") {
  for (std::int64_t n : {4, 12, 8, 9, 6, 30}) {
    auto jq = jacobson_radical_and_quotient(Ring::modular(n));
    CHECK(residues(jq.radical) == oracle::jacobson_zn(n));
  }
  auto z4 = jacobson_radical_and_quotient(Ring::modular(4));
  CHECK(z4.quotient() == Ring::modular(2));
  auto f3 = jacobson_radical_and_quotient(Ring::prime_field(3));
  CHECK(f3.radical.size() == 1);

  auto t = jacobson_radical_and_quotient(Ring::parse("trivial(modular(4))"));
  CHECK(t.radical.size() == 8);
  CHECK(t.quotient().cardinality() == 2u);
  CHECK_THROWS_AS(jacobson_radical_and_quotient(Ring::integers()), InfiniteRing);
}

TEST_CASE("maximal ideals") {
  auto m6 = maximal_ideals(Ring::modular(6));
  REQUIRE(m6.size() == 2);
  CHECK(residues(m6[0]) == std::vector<std::int64_t>{0, 2, 4});
  CHECK(residues(m6[1]) == std::vector<std::int64_t>{0, 3});
  auto m4 = maximal_ideals(Ring::modular(4));
  REQUIRE(m4.size() == 1);
  CHECK(residues(m4[0]) == std::vector<std::int64_t>{0, 2});
  auto m5 = maximal_ideals(Ring::prime_field(5));
  REQUIRE(m5.size() == 1);
  CHECK(residues(m5[0]) == std::vector<std::int64_t>{0});
}

TEST_CASE("regular elements") {
  Ring z4 = Ring::modular(4);
  CHECK_FALSE(is_regular_element(at(z4, "2")));
  CHECK_FALSE(oracle::regular_zn(2, 4));
  auto g = regular_witness(at(z4, "3"));
  REQUIRE(g);
  CHECK(g->value().residue() == 3);

  Ring z = Ring::integers();
  CHECK_FALSE(is_regular_element(z.from_integer(5)));
  for (int c = -100; c <= 100; ++c) CHECK(5 * c * 5 != 5);
  CHECK(is_regular_element(z.from_integer(-1)));
  CHECK(is_regular_element(z.zero()));
  CHECK_THROWS_AS(regular_witness(z.from_integer(5), RegularityMethod::brute_force), InfiniteRing);
}

TEST_CASE("property: structural and brute-force regularity agree on Z/n") {
  for (std::int64_t n = 2; n <= 36; ++n) {
    Ring r = Ring::modular(n);
    for (const auto& a : r.elements()) {
      bool expected = oracle::regular_zn(a.value().residue(), n).has_value();
      CHECK(is_regular_element(a, RegularityMethod::structural) == expected);
      CHECK(is_regular_element(a, RegularityMethod::brute_force) == expected);
    }
  }
}

TEST_CASE("property: Z/n arithmetic matches integer arithmetic") {
  std::mt19937_64 rng(3);
  for (std::int64_t n : {2, 3, 4, 6, 12, 97, 1'000'003, 2'147'483'647}) {
    Ring r = Ring::modular(n);
    std::uniform_int_distribution<std::int64_t> d(0, n - 1);
    for (int i = 0; i < 2000; ++i) {
      std::int64_t a = d(rng), b = d(rng);
      auto x = r.from_integer(a), y = r.from_integer(b);
      Integer prod = Integer(a) * b % n;
      CHECK((x * y).value().residue() == static_cast<std::int64_t>(prod));
      CHECK((x + y).value().residue() == (a + b) % n);
      CHECK((x - y).value().residue() == oracle::mod(a - b, n));
    }
  }
}

TEST_CASE("property: canonical forms") {
  std::mt19937 rng(5);
  for (const char* text : {"modular(12)", "trivial(modular(4))", "product(modular(2), prime(3))",
                           "product(modular(3), trivial(modular(2)))"}) {
    Ring r = Ring::parse(text);
    auto elems = r.elements();
    std::uniform_int_distribution<std::size_t> d(0, elems.size() - 1);
    for (int i = 0; i < 10000; ++i) {
      const auto& a = elems[d(rng)];
      const auto& b = elems[d(rng)];
      CHECK((a == b) == (a.value() == b.value()));
      auto s = a + b, p = a * b;
      CHECK(r.canonical(s.value()) == s.value());
      CHECK(r.canonical(p.value()) == p.value());
    }
  }
}

TEST_CASE("quotients") {
  Ring z12 = Ring::modular(12);
  auto ideal = principal_ideal(at(z12, "4"));
  auto q = Ring::quotient(z12, ideal);
  CHECK(q.target == Ring::modular(4));
  CHECK(q(at(z12, "7")).value().residue() == 3);

  Ring t = Ring::parse("trivial(modular(2))");
  auto tj = jacobson_radical_and_quotient(t);
  for (const auto& a : t.elements())
    for (const auto& b : t.elements()) CHECK(tj.projection(a * b) == tj.projection(a) * tj.projection(b));
  std::vector<Element> not_ideal{z12.zero(), at(z12, "5")};
  CHECK_THROWS_AS(Ring::quotient(z12, not_ideal), PreconditionViolated);
}

TEST_CASE("budgets") {
  Budget tight;
  tight.cardinality = 10;
  CHECK_THROWS_AS(idempotents(Ring::modular(12), tight), BudgetExceeded);
  CHECK_THROWS_AS(idempotents(Ring::integers()), InfiniteRing);
}
