#pragma once

// Independent reference computations used to derive expected values. None of
// these call into the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<std::int64_t>>;

inline std::int64_t det(const Mat& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  std::int64_t s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    s += (j % 2 ? -1 : 1) * a[0][j] * det(minor);
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// gcd of all k x k minors.
inline std::int64_t determinant_divisor(const Mat& a, std::size_t k) {
  const std::size_t m = a.size(), n = a[0].size();
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(m, k, 0, cur, rs);
  subsets(n, k, 0, cur, cs);
  std::int64_t g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      Mat sub;
      for (auto i : r) {
        std::vector<std::int64_t> row;
        for (auto j : c) row.push_back(a[i][j]);
        sub.push_back(row);
      }
      g = std::gcd(g, std::llabs(det(sub)));
    }
  return g;
}

/// Invariant factors d_k = D_k / D_{k-1}; zeros after the rank.
inline std::vector<std::int64_t> invariant_factors(const Mat& a) {
  const std::size_t r = std::min(a.size(), a[0].size());
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    std::int64_t dk = determinant_divisor(a, k);
    if (dk == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

/// The e with e = 1 mod q and e = 0 mod n/q, for coprime q and n/q.
inline std::int64_t crt_idempotent(std::int64_t n, std::int64_t q) {
  for (std::int64_t e = 0; e < n; ++e)
    if (mod(e, q) == 1 % q && mod(e, n / q) == 0) return e;
  return -1;
}

/// J(Z/n) as the multiples of the radical of n.
inline std::vector<std::int64_t> jacobson_zn(std::int64_t n) {
  std::int64_t rad = 1, m = n;
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      rad *= p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) rad *= m;
  std::vector<std::int64_t> out;
  for (std::int64_t x = 0; x < n; x += rad) out.push_back(x);
  return out;
}

/// Brute-force a g a = a over Z/n.
inline std::optional<std::int64_t> regular_zn(std::int64_t a, std::int64_t n) {
  for (std::int64_t g = 0; g < n; ++g)
    if (mod(a * g % n * a, n) == mod(a, n)) return g;
  return std::nullopt;
}

}  // namespace oracle
