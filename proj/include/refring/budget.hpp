#pragma once

#include <cstddef>
#include <string>

#include "refring/errors.hpp"

namespace refring {

/// Limits for exhaustive work.
///
/// `cardinality` caps the size of any finite ring or module carrier that is
/// enumerated; `search` caps the number of candidates tried by a search
/// (homomorphisms, witnesses, cofactors).
struct Budget {
  std::size_t cardinality = 4096;
  std::size_t search = 1'000'000;

  void require_cardinality(std::size_t n, const std::string& what) const {
    if (n > cardinality) {
      throw BudgetExceeded(what + ": " + std::to_string(n) +
                           " elements exceed the cardinality budget of " +
                           std::to_string(cardinality));
    }
  }

  void require_search(std::size_t n, const std::string& what) const {
    if (n > search) {
      throw BudgetExceeded(what + ": " + std::to_string(n) +
                           " candidates exceed the search budget of " +
                           std::to_string(search));
    }
  }
};

/// Saturating product, used to size search spaces without overflow.
inline std::size_t saturating_mul(std::size_t a, std::size_t b) {
  constexpr std::size_t kMax = static_cast<std::size_t>(-1);
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

inline std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

}  // namespace refring
