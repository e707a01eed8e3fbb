#pragma once

// Structure of individual rings: units, Bézout identities, idempotents,
// the Jacobson radical, maximal ideals and von Neumann regular elements.
// Exhaustive algorithms iterate in the ring's enumeration order.

#include <optional>
#include <vector>

#include "refring/budget.hpp"
#include "refring/ring.hpp"

namespace refring {

/// Inverse of `a` when it is a unit.
///
/// Supported: ℤ, ℤ/n, F_p, polynomials over a field or over a finite ring
/// (constant term a unit, the rest nilpotent), products, trivial extensions,
/// and any finite ring by exhaustive search.
std::optional<Element> unit_inverse(const Element& a, const Budget& budget = {});
inline bool is_unit(const Element& a, const Budget& budget = {}) {
  return unit_inverse(a, budget).has_value();
}

/// Exhaustive unit search over a finite ring, independent of unit_inverse's
/// closed forms.
std::optional<Element> unit_inverse_exhaustive(const Element& a, const Budget& budget = {});

struct Bezout {
  Element d, s, t;  // s a + t b = d
};

/// Extended Euclid over ℤ (d >= 0) and F_p[X] (d monic); ℤ/n and F_p through
/// the integer lift of the residues. bezout_gcd(0, 0) = (0, 0, 0).
Bezout bezout_gcd(const Element& a, const Element& b);

/// All e with e^2 = e.
std::vector<Element> idempotents(const Ring& ring, const Budget& budget = {});

/// Primitive orthogonal idempotents summing to 1, ordered by ascending
/// |e R| with ties broken by enumeration index. The zero ring has none.
class IdempotentBasis {
 public:
  /// Verifies e_i^2 = e_i, e_i e_j = 0, sum = 1 and primitivity.
  IdempotentBasis(Ring ring, std::vector<Element> idempotents, const Budget& budget = {});

  const Ring& ring() const { return ring_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }

 private:
  Ring ring_;
  std::vector<Element> elements_;
};

IdempotentBasis primitive_idempotent_decomposition(const Ring& ring, const Budget& budget = {});

/// Sorted (enumeration order) element list of an ideal.
using Ideal = std::vector<Element>;

/// aR, exhaustively.
Ideal principal_ideal(const Element& a, const Budget& budget = {});

struct JacobsonQuotient {
  Ideal radical;
  RingHomomorphism projection;  // projection.target is R / J(R)
  const Ring& quotient() const { return projection.target; }
};

/// J(R) = {a : 1 - r a is a unit for every r}, exhaustively, with the
/// projection onto R / J(R) checked to be a surjective homomorphism with
/// kernel J(R) when |R| <= 256.
JacobsonQuotient jacobson_radical_and_quotient(const Ring& ring, const Budget& budget = {});

/// One maximal ideal per primitive idempotent e_i, in basis order: the
/// elements x with e_i x a non-unit of e_i R.
std::vector<Ideal> maximal_ideals(const Ring& ring, const Budget& budget = {});

enum class RegularityMethod { automatic, structural, brute_force };

/// Witness g with a g a = a, or nullopt when `a` is not regular.
///
/// brute_force: exhaustive over g (finite rings).
/// structural: ℤ (a in {0, 1, -1}); ℤ/n (gcd(a, n) coprime to n / gcd(a, n),
///   witness by CRT); fields; F_p[X] (zero or a unit); products componentwise.
/// automatic: structural where available, otherwise brute force.
std::optional<Element> regular_witness(const Element& a,
                                       RegularityMethod method = RegularityMethod::automatic,
                                       const Budget& budget = {});
inline bool is_regular_element(const Element& a,
                               RegularityMethod method = RegularityMethod::automatic,
                               const Budget& budget = {}) {
  return regular_witness(a, method, budget).has_value();
}

}  // namespace refring
