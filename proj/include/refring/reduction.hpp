#pragma once

// Witnessed diagonal reduction P A Q = D of matrices over concrete rings.

#include <optional>

#include "refring/algebra.hpp"
#include "refring/budget.hpp"
#include "refring/matrix.hpp"

namespace refring {

/// P (m x m), Q (n x n) invertible with stored inverses, D = P A Q diagonal.
struct DiagonalReduction {
  Matrix P, P_inv, Q, Q_inv, D;
};

/// Smith normal form over ℤ or F_p[X]: nonzero diagonal entries are canonical
/// associates with d_i | d_{i+1}, zeros last. Pivots are the smallest nonzero
/// entry by |a| or degree, ties broken row-major. Verified before return.
DiagonalReduction smith_normal_form(const Matrix& a);

/// Diagonal reduction over ℤ/n and F_p (integer lift, SNF over ℤ, reduce
/// mod n), Euclidean rings (SNF) and products (componentwise). The diagonal
/// keeps the canonical residue of each lifted SNF entry. Verified.
DiagonalReduction diagonal_reduction(const Matrix& a);

/// Whether diagonal_reduction has an algorithm for this ring.
bool supports_diagonal_reduction(const Ring& ring);

/// 1 x 2 or 2 x 1 reduction built from Bézout coefficients: (a b) Q = (d 0)
/// with Q = [[s, -b/d], [t, a/d]], or P (a b)^T = (d 0)^T with P = Q^T.
DiagonalReduction hermite_reduce(const Matrix& v);

/// Checks shapes, P A Q = D, D diagonal, P P_inv = P_inv P = I and
/// Q Q_inv = Q_inv Q = I by exact arithmetic.
bool verify_reduction(const Matrix& a, const DiagonalReduction& red);

/// a totally divides b (b R b within a R, which for commutative rings is
/// b in aR). Exhaustive for finite rings, remainder test for Euclidean
/// rings, componentwise for products.
bool is_total_divisor(const Element& a, const Element& b, const Budget& budget = {});

/// Successive diagonal entries of red.D form a total-divisor chain.
bool elementary_divisor_chain_check(const DiagonalReduction& red, const Budget& budget = {});

/// Witness g (n x m) with f g f = f, or nullopt.
///
/// structural: needs diagonal_reduction and a structural regular-element
///   test; f = P^{-1} D Q^{-1} is regular iff every diagonal entry is, and
///   g = Q G P with G the transposed diagonal of element witnesses.
/// brute_force: exhaustive over all n x m matrices of a finite ring.
std::optional<Matrix> regular_matrix_witness(const Matrix& f,
                                             RegularityMethod method = RegularityMethod::automatic,
                                             const Budget& budget = {});
inline bool is_regular_matrix(const Matrix& f, RegularityMethod method = RegularityMethod::automatic,
                              const Budget& budget = {}) {
  return regular_matrix_witness(f, method, budget).has_value();
}

}  // namespace refring
