#pragma once

// Bounded searches that back the non-Bézout and non-Hermite examples.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "refring/budget.hpp"
#include "refring/reduction.hpp"
#include "refring/ring.hpp"

namespace refring {

/// Degree of a univariate polynomial, or total degree of a bivariate one;
/// -1 for zero.
int total_degree(const Ring& ring, const Value& f);

/// Every polynomial of (total) degree at most d over a finite coefficient
/// ring. Coefficients are odometer digits with the constant term fastest;
/// bivariate monomials run by total degree, X before Y.
std::vector<Element> bounded_degree_elements(const Ring& ring, unsigned d, const Budget& budget = {});

struct PrincipalityVerdict {
  enum class Kind { principal_witness, not_principal_up_to };
  Kind kind = Kind::not_principal_up_to;
  unsigned degree_bound = 0;
  std::optional<Element> generator;
  std::vector<Element> cofactors;    // generators[i] = g * cofactors[i]
  std::vector<Element> combination;  // g = sum combination[i] * generators[i]
  std::size_t candidates_checked = 0;

  /// `PrincipalWitness(g, {c_1, ..})` or `NotPrincipalUpTo(d)`.
  std::string to_string() const;
};

/// Searches g of degree <= d with g in (f_1..f_n), witnessed by
/// coefficients of degree <= d, and each f_i = g c_i with deg c_i <= d. The
/// first g in enumeration order wins and is re-verified by multiplication.
/// NotPrincipalUpTo(d) is evidence about these bounds only.
///
/// Throws UnsupportedDescriptor unless the ring is a polynomial ring over a
/// finite ring or bivariate, PreconditionViolated when a generator exceeds
/// degree d, and BudgetExceeded past budget.search combinations.
PrincipalityVerdict bounded_principality_check(const Ring& ring, const std::vector<Element>& generators, unsigned d,
                                               const Budget& budget = {});

struct RowReductionSearch {
  std::size_t candidates = 0;
  std::optional<DiagonalReduction> found;  // (a b) Q = (d 0) with Q invertible
};

/// Tries every Q over T(Z, Z) whose entries have both coordinates in
/// [-h, h] for (a b) Q = (d 0) with a = (2, 0), b = (0, 1) and det Q a
/// unit.
RowReductionSearch trivial_extension_row_search(unsigned height, const Budget& budget = {});

}  // namespace refring
