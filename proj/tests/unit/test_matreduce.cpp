#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "refring/reduction.hpp"

using namespace refring;

namespace {

Matrix zmat(const oracle::Mat& a) {
  std::vector<Value> v;
  for (const auto& row : a)
    for (auto x : row) v.emplace_back(Integer(x));
  return Matrix(Ring::integers(), a.size(), a[0].size(), std::move(v));
}

Matrix mat(const char* ring, std::size_t r, std::size_t c, std::vector<std::string> entries) {
  return Matrix::parse(Ring::parse(ring), r, c, entries);
}

std::vector<std::string> diag_text(const DiagonalReduction& red) {
  std::vector<std::string> out;
  for (const auto& d : red.D.diagonal_entries()) out.push_back(d.to_string());
  return out;
}

std::vector<std::int64_t> diag_int(const DiagonalReduction& red) {
  std::vector<std::int64_t> out;
  for (const auto& d : red.D.diagonal_entries()) out.push_back(static_cast<std::int64_t>(d.value().integer()));
  return out;
}

oracle::Mat random_mat(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  oracle::Mat a(m, std::vector<std::int64_t>(n));
  for (auto& row : a)
    for (auto& x : row) x = d(rng);
  return a;
}

// Product of random elementary operations, det 1.
oracle::Mat random_unimodular(std::mt19937& rng, std::size_t n) {
  oracle::Mat u(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int k = 0; k < 6; ++k) {
    std::size_t s = idx(rng), t = idx(rng);
    if (s == t) continue;
    int f = c(rng);
    for (std::size_t j = 0; j < n; ++j) u[t][j] += f * u[s][j];
  }
  return u;
}

oracle::Mat mul(const oracle::Mat& a, const oracle::Mat& b) {
  oracle::Mat c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto id = smith_normal_form(zmat({{1, 0}, {0, 1}}));
  CHECK(diag_int(id) == std::vector<std::int64_t>{1, 1});
  CHECK(id.P == Matrix::identity(Ring::integers(), 2));
  CHECK(id.Q == Matrix::identity(Ring::integers(), 2));

  CHECK(oracle::invariant_factors({{2, 4}, {4, 6}}) == std::vector<std::int64_t>{2, 2});
  CHECK(diag_int(smith_normal_form(zmat({{2, 4}, {4, 6}}))) == std::vector<std::int64_t>{2, 2});
  CHECK(oracle::invariant_factors({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
  CHECK(diag_int(smith_normal_form(zmat({{2, 0}, {0, 3}}))) == std::vector<std::int64_t>{1, 6});

  CHECK(diag_int(smith_normal_form(zmat({{0, 0}, {0, -5}}))) == std::vector<std::int64_t>{5, 0});
  CHECK_THROWS_AS(smith_normal_form(mat("modular(4)", 1, 1, {"2"})), UnsupportedDescriptor);
}

TEST_CASE("smith normal form over F_p[X]") {
  auto red = smith_normal_form(mat("poly(prime(2))", 2, 2, {"X", "X^2", "X+1", "1"}));
  CHECK(verify_reduction(mat("poly(prime(2))", 2, 2, {"X", "X^2", "X+1", "1"}), red));
  CHECK(elementary_divisor_chain_check(red));
  // det = X + X^2(X+1) = X^3+X^2+X, gcd of entries 1.
  CHECK(diag_text(red) == std::vector<std::string>{"1", "X^3+X^2+X"});
}

TEST_CASE("property: SNF over Z against the determinant-divisor oracle") {
  std::mt19937 rng(2024);
  for (int it = 0; it < 200; ++it) {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 3}, {2, 4}, {4, 2}, {1, 3}}) {
      auto a = random_mat(rng, m, n, -20, 20);
      auto red = smith_normal_form(zmat(a));
      CHECK(verify_reduction(zmat(a), red));
      CHECK(elementary_divisor_chain_check(red));
      CHECK(diag_int(red) == oracle::invariant_factors(a));
    }
  }
}

TEST_CASE("property: SNF is invariant under unimodular equivalence") {
  std::mt19937 rng(99);
  for (int it = 0; it < 100; ++it) {
    auto a = random_mat(rng, 3, 3, -9, 9);
    auto b = mul(mul(random_unimodular(rng, 3), a), random_unimodular(rng, 3));
    CHECK(diag_int(smith_normal_form(zmat(a))) == diag_int(smith_normal_form(zmat(b))));
  }
}

TEST_CASE("diagonal reduction over Z/n") {
  auto one = diagonal_reduction(mat("modular(4)", 1, 1, {"2"}));
  CHECK(diag_text(one) == std::vector<std::string>{"2"});
  CHECK(one.P.is_diagonal());
  CHECK(one.P == Matrix::identity(Ring::modular(4), 1));
  CHECK(one.Q == Matrix::identity(Ring::modular(4), 1));

  auto row = diagonal_reduction(mat("modular(4)", 1, 2, {"2", "3"}));
  CHECK(row.D == mat("modular(4)", 1, 2, {"1", "0"}));

  CHECK(oracle::invariant_factors({{3, 0}, {0, 2}}) == std::vector<std::int64_t>{1, 6});
  auto z6 = diagonal_reduction(mat("modular(6)", 2, 2, {"3", "0", "0", "2"}));
  CHECK(diag_text(z6) == std::vector<std::string>{"1", "0"});
}

TEST_CASE("diagonal reduction over products and unsupported rings") {
  auto a = mat("product(modular(4), prime(3))", 2, 2, {"(2,1)", "(0,2)", "(3,0)", "(1,1)"});
  auto red = diagonal_reduction(a);
  CHECK(verify_reduction(a, red));
  CHECK_FALSE(supports_diagonal_reduction(Ring::parse("trivial(modular(4))")));
  CHECK_THROWS_AS(diagonal_reduction(mat("trivial(modular(4))", 1, 1, {"(1,0)"})), UnsupportedDescriptor);
}

TEST_CASE("exhaustive 2x2 diagonal reduction over Z/4 and Z/6") {
  for (const char* text : {"modular(4)", "modular(6)"}) {
    Ring r = Ring::parse(text);
    for (const auto& a : all_matrices(r, 2, 2, {})) {
      auto red = diagonal_reduction(a);
      CHECK(verify_reduction(a, red));
    }
  }
}

TEST_CASE("hermite_reduce") {
  Ring z = Ring::integers();
  auto v = mat("integers", 1, 2, {"4", "6"});
  auto red = hermite_reduce(v);
  CHECK(red.D == mat("integers", 1, 2, {"2", "0"}));
  CHECK(red.Q == mat("integers", 2, 2, {"-1", "-3", "1", "2"}));
  CHECK(oracle::det({{-1, -3}, {1, 2}}) == 1);

  auto zero = hermite_reduce(mat("integers", 1, 2, {"0", "0"}));
  CHECK(zero.D.is_zero());
  CHECK(zero.Q == Matrix::identity(z, 2));

  auto col = mat("poly(prime(2))", 2, 1, {"X", "X^2"});
  auto cr = hermite_reduce(col);
  CHECK(cr.D == mat("poly(prime(2))", 2, 1, {"X", "0"}));
  CHECK(verify_reduction(col, cr));

  auto mod = hermite_reduce(mat("modular(6)", 1, 2, {"4", "3"}));
  CHECK(mod.D == mat("modular(6)", 1, 2, {"1", "0"}));
  CHECK_THROWS_AS(hermite_reduce(mat("integers", 2, 2, {"1", "0", "0", "1"})), PreconditionViolated);
}

TEST_CASE("total divisors and chains") {
  Ring z6 = Ring::modular(6);
  Ring z = Ring::integers();
  CHECK(is_total_divisor(z6.parse_element("2"), z6.parse_element("4")));
  CHECK_FALSE(is_total_divisor(z6.parse_element("4"), z6.parse_element("3")));
  CHECK_FALSE(is_total_divisor(z.from_integer(2), z.from_integer(3)));
  for (const char* text : {"integers", "modular(6)", "trivial(integers)", "poly(prime(3))"}) {
    Ring r = Ring::parse(text);
    CHECK(is_total_divisor(r.one(), r.from_integer(7)));
  }
  auto chain = [&](std::vector<int> d) {
    std::vector<Element> e;
    for (int x : d) e.push_back(z.from_integer(x));
    Matrix D = Matrix::diagonal(z, d.size(), d.size(), e);
    Matrix I = Matrix::identity(z, d.size());
    return elementary_divisor_chain_check(DiagonalReduction{I, I, I, I, D});
  };
  CHECK(chain({1, 6}));
  CHECK_FALSE(chain({2, 3}));
  CHECK(chain({2, 2}));
}

TEST_CASE("verify_reduction detects tampering") {
  auto a = zmat({{2, 4}, {4, 6}});
  auto red = smith_normal_form(a);
  CHECK(verify_reduction(a, red));

  auto bad_d = red;
  bad_d.D.set(1, 1, Value(Integer(3)));
  CHECK_FALSE(verify_reduction(a, bad_d));

  auto bad_p = red;
  bad_p.P = zmat({{2, 0}, {0, 1}});
  CHECK_FALSE(verify_reduction(a, bad_p));

  auto bad_shape = red;
  bad_shape.Q = Matrix::identity(Ring::integers(), 3);
  CHECK_THROWS_AS(verify_reduction(a, bad_shape), PreconditionViolated);
}

TEST_CASE("matrix regularity") {
  CHECK_FALSE(is_regular_matrix(mat("modular(4)", 1, 1, {"2"})));
  auto d = mat("modular(6)", 2, 2, {"3", "0", "0", "4"});
  auto g = regular_matrix_witness(d);
  REQUIRE(g);
  CHECK(d * *g * d == d);
  CHECK(is_regular_matrix(d, RegularityMethod::brute_force));
  auto zero = Matrix(Ring::modular(5), 2, 3);
  auto gz = regular_matrix_witness(zero);
  REQUIRE(gz);
  CHECK(gz->rows() == 3);
  CHECK(gz->cols() == 2);
}

TEST_CASE("property: structural and brute-force matrix regularity agree") {
  Ring z6 = Ring::modular(6);
  for (const auto& f : all_matrices(z6, 1, 1, {}))
    CHECK(is_regular_matrix(f, RegularityMethod::structural) == is_regular_matrix(f, RegularityMethod::brute_force));
  std::mt19937 rng(17);
  auto all = all_matrices(z6, 2, 2, {});
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int i = 0; i < 60; ++i) {
    const auto& f = all[pick(rng)];
    CHECK(is_regular_matrix(f, RegularityMethod::structural) == is_regular_matrix(f, RegularityMethod::brute_force));
  }
}
