#include "doctest.h"

#include <numeric>

#include "oracles.hpp"
#include "refring/theorems.hpp"

using namespace refring;

namespace {

BasisPtr basis(const Ring& r) { return std::make_shared<const IdempotentBasis>(primitive_idempotent_decomposition(r)); }

ProjectiveModule pm(const BasisPtr& b, std::vector<std::uint32_t> t) { return ProjectiveModule(b, std::move(t)); }

std::vector<std::int64_t> labels_1d(const FiniteModule& m) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(m.label(static_cast<ModIndex>(i)).parts().at(0).residue());
  return out;
}

Ideal ideal_of(const Ring& r, std::vector<int> xs) {
  Ideal out;
  for (int x : xs) out.push_back(r.from_integer(x));
  return out;
}

}  // namespace

TEST_CASE("projective_monoid ranks") {
  CHECK(projective_monoid(Ring::modular(4)).presentation->generator_count() == 1);
  auto v6 = projective_monoid(Ring::modular(6));
  CHECK(v6.presentation->generator_count() == 2);
  CHECK(v6.presentation->is_free());
  CHECK(v6.unit().exponents() == Exponents{1, 1});
  CHECK(projective_monoid(Ring::prime_field(5)).presentation->generator_count() == 1);
}

TEST_CASE("projective modules") {
  auto b = basis(Ring::modular(6));
  CHECK_THROWS_AS(pm(b, {1}), PreconditionViolated);
  CHECK(pm(b, {1, 2}).cardinality() == 18);
  CHECK(pm(b, {2, 1}).cardinality() == 12);
  CHECK(module_iso(pm(b, {1, 2}), pm(b, {1, 2})));
  CHECK_FALSE(module_iso(pm(b, {1, 2}), pm(b, {2, 1})));
  CHECK((pm(b, {1, 0}) + pm(b, {0, 1})) == ProjectiveModule::free(b, 1));
  CHECK_THROWS_AS(module_iso(pm(b, {1, 0}), ProjectiveModule::free(basis(Ring::modular(4)), 1)),
                  DescriptorMismatch);
}

TEST_CASE("localization at maximal ideals") {
  Ring z6 = Ring::modular(6);
  auto b = basis(z6);
  auto m = pm(b, {1, 2});
  auto at2 = localize_at_maximal(m, ideal_of(z6, {0, 2, 4}));
  CHECK(at2.local_ring() == Ring::modular(2));
  CHECK(at2.projective->multiplicities() == std::vector<std::uint32_t>{1});
  auto at3 = localize_at_maximal(m, ideal_of(z6, {0, 3}));
  CHECK(at3.local_ring() == Ring::modular(3));
  CHECK(at3.projective->multiplicities() == std::vector<std::uint32_t>{2});
  CHECK(localize_at_maximal(pm(b, {0, 0}), 0).projective->is_zero());
  CHECK_THROWS_AS(localize_at_maximal(m, ideal_of(z6, {0})), PreconditionViolated);
  CHECK_THROWS_AS(localize_at_maximal(m, ideal_of(z6, {0, 1, 2, 3, 4, 5})), PreconditionViolated);

  // CRT oracle: x -> x mod 2 and x -> x mod 3.
  for (const auto& x : z6.elements()) {
    CHECK(at2.to_local(x).value().residue() == x.value().residue() % 2);
    CHECK(at3.to_local(x).value().residue() == x.value().residue() % 3);
  }
}

TEST_CASE("localization at elements") {
  Ring z12 = Ring::modular(12);
  auto v = localize_at_element(ProjectiveModule::free(basis(z12), 1), z12.from_integer(4));
  CHECK(v.idempotent.value().residue() == 4);
  CHECK(v.local_ring() == Ring::modular(3));
  CHECK(v.to_local(z12.from_integer(4)).is_one());
  auto fm = localize_at_element(FiniteModule::free(z12, 1), z12.from_integer(4));
  CHECK(labels_1d(*fm.finite) == std::vector<std::int64_t>{0, 4, 8});
  CHECK(module_iso(*fm.finite, FiniteModule::free(z12, 1).quotient({0, 3, 6, 9})));

  Ring z4 = Ring::modular(4);
  auto nil = localize_at_element(ProjectiveModule::free(basis(z4), 3), z4.from_integer(2));
  CHECK(nil.idempotent.is_zero());
  CHECK(nil.local_ring().cardinality() == 1u);
  CHECK(nil.projective->is_zero());

  Ring z6 = Ring::modular(6);
  auto m = pm(basis(z6), {1, 2});
  auto one = localize_at_element(m, z6.one());
  CHECK(one.local_ring() == z6);
  CHECK(module_iso(*one.projective, pm(basis(z6), {1, 2})));
  auto fone = localize_at_element(FiniteModule::free(z6, 2), z6.one());
  CHECK(fone.finite->size() == 36);
}

TEST_CASE("property: localizations invert the multiplicative set") {
  for (std::int64_t n : {4, 6, 8, 9, 12, 30}) {
    Ring r = Ring::modular(n);
    auto b = basis(r);
    for (const auto& f : r.elements()) {
      auto v = localize_at_element(ProjectiveModule::free(b, 1), f);
      Element p = f;
      for (int k = 0; k < 6; ++k, p = p * f) CHECK(is_unit(v.to_local(p)));
    }
    const auto maximal = maximal_ideals(r);
    for (std::size_t i = 0; i < b->size(); ++i) {
      auto v = localize_at_maximal(ProjectiveModule::free(b, 1), i);
      for (const auto& s : r.elements()) {
        bool in_p = false;
        for (const auto& x : maximal[i]) in_p = in_p || x == s;
        if (!in_p) CHECK(is_unit(v.to_local(s)));
      }
    }
  }
}

TEST_CASE("finite module isomorphism") {
  Ring z6 = Ring::modular(6);
  auto ann3 = FiniteModule::from_ideal(z6, ideal_of(z6, {0, 2, 4}));
  auto three = FiniteModule::from_ideal(z6, principal_ideal(z6.from_integer(3)));
  auto sum = FiniteModule::direct_sum(ann3, three);
  auto r = FiniteModule::free(z6, 1);
  auto iso = find_module_iso(sum, r);
  REQUIRE(iso);
  // A permutation of the carrier.
  std::vector<ModIndex> sorted = *iso;
  std::sort(sorted.begin(), sorted.end());
  std::vector<ModIndex> expect(6);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(sorted == expect);

  Ring z4 = Ring::modular(4);
  auto z2z2 = FiniteModule::direct_sum(FiniteModule::ring_quotient(z4, principal_ideal(z4.from_integer(2))),
                                       FiniteModule::ring_quotient(z4, principal_ideal(z4.from_integer(2))));
  CHECK_FALSE(module_iso(z2z2, FiniteModule::free(z4, 1)));
  CHECK(module_iso(FiniteModule::from_ideal(z4, principal_ideal(z4.from_integer(2))),
                   FiniteModule::ring_quotient(z4, principal_ideal(z4.from_integer(2)))));

  Budget tiny;
  tiny.search = 1;
  auto big = FiniteModule::free(Ring::modular(2), 4);
  CHECK_THROWS_AS(find_module_iso(big, FiniteModule::free(Ring::modular(2), 4), tiny), BudgetExceeded);
}

TEST_CASE("property: finite iso agrees with multiplicities and is an equivalence") {
  Ring z6 = Ring::modular(6);
  auto b = basis(z6);
  auto mods = projective_modules_up_to(b, 2);
  std::vector<FiniteModule> fin;
  for (const auto& m : mods) fin.push_back(to_finite_module(m));
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = 0; j < mods.size(); ++j) CHECK(module_iso(fin[i], fin[j]) == module_iso(mods[i], mods[j]));

  Ring z8 = Ring::modular(8);
  std::vector<FiniteModule> fam{FiniteModule::free(z8, 1), FiniteModule::ring_quotient(z8, principal_ideal(z8.from_integer(4))),
                                FiniteModule::from_ideal(z8, principal_ideal(z8.from_integer(2))),
                                FiniteModule::direct_sum(FiniteModule::ring_quotient(z8, principal_ideal(z8.from_integer(2))),
                                                         FiniteModule::ring_quotient(z8, principal_ideal(z8.from_integer(4))))};
  for (const auto& a : fam) {
    CHECK(module_iso(a, a));
    for (const auto& c : fam) {
      CHECK(module_iso(a, c) == module_iso(c, a));
      for (const auto& d : fam)
        if (module_iso(a, c) && module_iso(c, d)) CHECK(module_iso(a, d));
    }
  }
}

TEST_CASE("kernel, image, cokernel") {
  Ring z6 = Ring::modular(6);
  auto k6 = kernel_image_cokernel(Matrix::parse(z6, 1, 1, {"3"}));
  CHECK(labels_1d(k6.kernel) == std::vector<std::int64_t>{0, 2, 4});
  CHECK(labels_1d(k6.image) == std::vector<std::int64_t>{0, 3});
  CHECK(module_iso(k6.cokernel, FiniteModule::free(Ring::modular(6), 1).quotient({0, 3})));
  CHECK(k6.cokernel.size() == 3);

  Ring z4 = Ring::modular(4);
  auto k4 = kernel_image_cokernel(Matrix::parse(z4, 1, 1, {"2"}));
  CHECK(labels_1d(k4.kernel) == std::vector<std::int64_t>{0, 2});
  CHECK(labels_1d(k4.image) == std::vector<std::int64_t>{0, 2});
  CHECK(k4.cokernel.size() == 2);

  auto id = kernel_image_cokernel(Matrix::identity(z6, 2));
  CHECK(id.kernel.size() == 1);
  CHECK(id.image.size() == 36);
  CHECK(id.cokernel.size() == 1);
}

TEST_CASE("property: rank-nullity cardinality") {
  Ring z4 = Ring::modular(4);
  for (const auto& f : all_matrices(z4, 2, 2, {})) {
    auto k = kernel_image_cokernel(f);
    CHECK(k.kernel.size() * k.image.size() == 16);
    CHECK(k.image.size() * k.cokernel.size() == 16);
  }
}

TEST_CASE("local-global and partition of unity") {
  auto lg6 = local_global_verify(Ring::modular(6), 3);
  CHECK(lg6.verdict == Verdict::holds);
  CHECK(lg6.cases == 256);
  CHECK(local_global_verify(Ring::modular(4), 3).verdict == Verdict::holds);
  CHECK(local_global_verify(Ring::prime_field(3), 2, IdealFamily::prime).verdict == Verdict::holds);

  Ring z6 = Ring::modular(6), z12 = Ring::modular(12);
  CHECK(partition_of_unity_verify(z6, {z6.from_integer(3), z6.from_integer(4)}, 2).verdict == Verdict::holds);
  CHECK(partition_of_unity_verify(z12, {z12.from_integer(4), z12.from_integer(9)}, 2).verdict == Verdict::holds);
  CHECK(partition_of_unity_verify(z12, {z12.one()}, 1).verdict == Verdict::holds);
  CHECK_THROWS_AS(partition_of_unity_verify(z12, {z12.from_integer(2), z12.from_integer(4)}, 1),
                  PreconditionViolated);
}

TEST_CASE("constant rank and stably free") {
  Ring z6 = Ring::modular(6);
  auto b = basis(z6);
  auto c = constant_rank_free_check(pm(b, {2, 2}));
  CHECK(c.constant);
  CHECK(c.rank == 2);
  CHECK(c.free_verified);
  auto nc = constant_rank_free_check(pm(b, {1, 2}));
  CHECK_FALSE(nc.constant);
  CHECK(nc.local_ranks == std::vector<std::uint32_t>{1, 2});
  auto zero = constant_rank_free_check(pm(b, {0, 0}));
  CHECK(zero.constant);
  CHECK(zero.rank == 0);

  CHECK(stably_free_check(pm(b, {1, 1}), 1, 2) == 1);
  CHECK_THROWS_AS(stably_free_check(pm(b, {1, 2}), 1, 2), PreconditionViolated);
  CHECK(stably_free_check(pm(b, {0, 0}), 3, 3) == 0);
  CHECK(rank_corollaries_verify(z6, 3).verdict == Verdict::holds);
}

TEST_CASE("decomposition criterion") {
  Ring z6 = Ring::modular(6);
  auto rep = diagonal_refinement_check(Matrix::parse(z6, 1, 1, {"3"}));
  CHECK(rep.holds());
  REQUIRE(rep.indices.size() == 1);
  CHECK(rep.indices[0].d == "3");
  CHECK(rep.sums_match == true);

  auto id = diagonal_refinement_check(Matrix::identity(z6, 2));
  CHECK(id.holds());
  CHECK_THROWS_AS(diagonal_refinement_check(Matrix::parse(Ring::modular(4), 1, 1, {"2"})), PreconditionViolated);

  auto wide = diagonal_refinement_check(Matrix::parse(z6, 1, 2, {"3", "0"}));
  CHECK(wide.holds());
  CHECK(wide.indices.size() == 2);
  CHECK(wide.indices[1].d == "free");

  for (std::int64_t n : {4, 6, 8, 9, 12}) CHECK(decomposition_verify(Ring::modular(n)).verdict == Verdict::holds);
}

TEST_CASE("cancellation, reduction and the Jacobson lift") {
  for (const char* text : {"modular(6)", "modular(4)", "prime(2)"}) {
    auto r = cancellation_and_reduction_verify(Ring::parse(text), 3);
    CHECK(r.overall() == Verdict::holds);
  }
  for (const char* text : {"modular(4)", "modular(9)", "prime(3)", "modular(8)"}) {
    auto r = jacobson_lift_verify(Ring::parse(text));
    CHECK(r.overall() == Verdict::holds);
  }
  auto t = cancellation_and_reduction_verify(Ring::parse("trivial(modular(2))"), 2);
  CHECK(t.checks[0].verdict == Verdict::holds);
  CHECK(t.checks[1].verdict == Verdict::inconclusive);
}

TEST_CASE("report lines are stable") {
  CheckResult c{"refinement", "modular(4), \"x\"", Verdict::holds, 3, "ok"};
  CHECK(format_line(c) == "check=refinement verdict=holds cases=3 instance=\"modular(4), \\\"x\\\"\" detail=\"ok\"");
}
