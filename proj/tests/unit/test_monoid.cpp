#include "doctest.h"

#include <random>

#include "refring/monoid.hpp"

using namespace refring;

namespace {

MonoidElement el(const PresentationPtr& p, Exponents e) { return MonoidElement(p, std::move(e)); }

using Grid = std::array<std::array<Exponents, 2>, 2>;

Grid exps(const RefinementWitness& w) {
  Grid g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g[i][j] = w.z[i][j].exponents();
  return g;
}

// Brute-force first witness under descending lexicographic z11, free rank 1.
std::optional<std::array<std::uint32_t, 4>> first_rank1_split(std::uint32_t x1, std::uint32_t x2,
                                                              std::uint32_t y1, std::uint32_t y2) {
  for (int a = static_cast<int>(std::max({x1, x2, y1, y2})); a >= 0; --a)
    for (int b = static_cast<int>(x1); b >= 0; --b)
      for (int c = static_cast<int>(x2); c >= 0; --c)
        for (int d = static_cast<int>(x2); d >= 0; --d)
          if (a + b == static_cast<int>(x1) && c + d == static_cast<int>(x2) && a + c == static_cast<int>(y1) &&
              b + d == static_cast<int>(y2))
            return std::array<std::uint32_t, 4>{std::uint32_t(a), std::uint32_t(b), std::uint32_t(c),
                                                std::uint32_t(d)};
  return std::nullopt;
}

}  // namespace

TEST_CASE("presentations validate vector lengths") {
  CHECK_THROWS_AS(MonoidPresentation::make(2, {{{1}, {0, 1}}}), PreconditionViolated);
  CHECK_THROWS_AS(MonoidPresentation::make(0), PreconditionViolated);
  CHECK(MonoidPresentation::free(3)->is_free());
}

TEST_CASE("normalize_and_eq") {
  auto f2 = MonoidPresentation::free(2);
  CHECK(normalize_and_eq(el(f2, {1, 2}), el(f2, {1, 2})) == Equality::equal);
  CHECK(normalize_and_eq(el(f2, {1, 2}), el(f2, {2, 1})) == Equality::unequal);

  auto p = MonoidPresentation::make(1, {{{2}, {3}}});
  CHECK(normalize_and_eq(el(p, {2}), el(p, {5})) == Equality::equal);
  // The class of g is {g}: nothing rewrites it.
  CHECK(normalize_and_eq(el(p, {1}), el(p, {2})) == Equality::unequal);

  auto other = MonoidPresentation::free(1);
  CHECK_THROWS_AS(normalize_and_eq(el(p, {1}), el(other, {1})), DescriptorMismatch);
}

TEST_CASE("normalize_and_eq can be inconclusive") {
  // 2g = 0 makes both classes infinite; g against 0 never saturates.
  auto p = MonoidPresentation::make(1, {{{2}, {0}}});
  CHECK(normalize_and_eq(el(p, {1}), el(p, {0}), 8) == Equality::inconclusive);
  CHECK(normalize_and_eq(el(p, {4}), el(p, {0}), 8) == Equality::equal);
}

TEST_CASE("normalize_and_eq saturates the finite side") {
  // 2g = g: the class of g is infinite, the class of 0 is {0}.
  auto p = MonoidPresentation::make(1, {{{2}, {1}}});
  CHECK(normalize_and_eq(el(p, {1}), el(p, {0})) == Equality::unequal);
  CHECK(normalize_and_eq(el(p, {0}), el(p, {3})) == Equality::unequal);
  CHECK(normalize_and_eq(el(p, {1}), el(p, {4})) == Equality::equal);
}

TEST_CASE("refine golden witnesses") {
  auto f1 = MonoidPresentation::free(1);
  auto w = refine(el(f1, {2}), el(f1, {3}), el(f1, {1}), el(f1, {4}), 5);
  REQUIRE(w);
  CHECK(exps(*w) == Grid{{{Exponents{1}, Exponents{1}}, {Exponents{0}, Exponents{3}}}});

  w = refine(el(f1, {0}), el(f1, {5}), el(f1, {5}), el(f1, {0}), 5);
  REQUIRE(w);
  CHECK(exps(*w) == Grid{{{Exponents{0}, Exponents{0}}, {Exponents{5}, Exponents{0}}}});

  w = refine(el(f1, {0}), el(f1, {0}), el(f1, {0}), el(f1, {0}), 1);
  REQUIRE(w);
  CHECK(exps(*w) == Grid{{{Exponents{0}, Exponents{0}}, {Exponents{0}, Exponents{0}}}});
}

TEST_CASE("refine rejects unequal sums") {
  auto f1 = MonoidPresentation::free(1);
  CHECK_THROWS_AS(refine(el(f1, {1}), el(f1, {1}), el(f1, {1}), el(f1, {2}), 3), PreconditionViolated);
}

TEST_CASE("refine over a presented monoid") {
  auto p = MonoidPresentation::make(1, {{{2}, {3}}});
  // 1 + 2 = 3 = 2 + 0 in the presented monoid (3g ≡ 2g).
  auto w = refine(el(p, {1}), el(p, {2}), el(p, {2}), el(p, {0}), 3);
  REQUIRE(w);
  CHECK(w->reproduces(el(p, {1}), el(p, {2}), el(p, {2}), el(p, {0})));
}

TEST_CASE("property: free refine matches brute force and is complete") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint32_t> d(0, 6);
  auto f1 = MonoidPresentation::free(1);
  for (int it = 0; it < 300; ++it) {
    std::uint32_t x1 = d(rng), x2 = d(rng), y1 = std::min<std::uint32_t>(d(rng), x1 + x2);
    std::uint32_t y2 = x1 + x2 - y1;
    auto w = refine(el(f1, {x1}), el(f1, {x2}), el(f1, {y1}), el(f1, {y2}), std::max({x1, x2, y1, y2}));
    REQUIRE(w);
    auto expected = first_rank1_split(x1, x2, y1, y2);
    REQUIRE(expected);
    CHECK(exps(*w) == Grid{{{Exponents{(*expected)[0]}, Exponents{(*expected)[1]}},
                            {Exponents{(*expected)[2]}, Exponents{(*expected)[3]}}}});
  }
  auto f3 = MonoidPresentation::free(3);
  for (int it = 0; it < 200; ++it) {
    Exponents x1(3), x2(3), y1(3), y2(3);
    for (int k = 0; k < 3; ++k) {
      x1[k] = d(rng);
      x2[k] = d(rng);
      y1[k] = std::min<std::uint32_t>(d(rng), x1[k] + x2[k]);
      y2[k] = x1[k] + x2[k] - y1[k];
    }
    auto w = refine(el(f3, x1), el(f3, x2), el(f3, y1), el(f3, y2), 12);
    REQUIRE(w);
    CHECK(w->reproduces(el(f3, x1), el(f3, x2), el(f3, y1), el(f3, y2)));
  }
}

TEST_CASE("conical_check") {
  auto f2 = MonoidPresentation::free(2);
  auto all = elements_up_to(f2, 3);
  CHECK(conical_check(all));
  std::vector<MonoidElement> zero{MonoidElement::zero(f2)};
  CHECK(conical_check(zero));
  auto p = MonoidPresentation::make(1, {{{2}, {0}}});
  std::vector<MonoidElement> g{el(p, {1})};
  CHECK_FALSE(conical_check(g, 4));
}

TEST_CASE("cancellation_law_check") {
  auto f2 = MonoidPresentation::free(2);
  auto cands = elements_up_to(f2, 3);
  auto r = cancellation_law_check(el(f2, {1, 1}), cands);
  CHECK(r.status == CancellationReport::Status::holds);
  CHECK(r.pairs_checked == cands.size() * cands.size());

  auto f1 = MonoidPresentation::free(1);
  std::vector<MonoidElement> small{el(f1, {0}), el(f1, {1}), el(f1, {2})};
  CHECK(cancellation_law_check(el(f1, {1}), small).status == CancellationReport::Status::holds);

  auto p = MonoidPresentation::make(1, {{{3}, {2}}});
  std::vector<MonoidElement> c{el(p, {0}), el(p, {1}), el(p, {2})};
  auto bad = cancellation_law_check(el(p, {1}), c);
  REQUIRE(bad.status == CancellationReport::Status::counterexample);
  CHECK(bad.pair->first.exponents() == Exponents{0});
  CHECK(bad.pair->second.exponents() == Exponents{2});
}

TEST_CASE("property: equality is reflexive, symmetric and additive") {
  auto p = MonoidPresentation::make(2, {{{2, 0}, {0, 1}}});
  auto elems = elements_up_to(p, 2);
  for (const auto& a : elems) {
    CHECK(normalize_and_eq(a, a) == Equality::equal);
    for (const auto& b : elems) {
      auto ab = normalize_and_eq(a, b);
      CHECK(ab == normalize_and_eq(b, a));
      if (ab == Equality::equal)
        for (const auto& c : elems) CHECK(normalize_and_eq(a + c, b + c) == Equality::equal);
    }
  }
}
