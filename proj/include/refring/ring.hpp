#pragma once

// Computable commutative rings with canonical element forms.
//
// A Ring is a cheap handle to an immutable descriptor node. Elements are
// stored as a recursive Value payload; the Ring interprets payloads:
//
//   integers            Integer
//   modular(n), prime(p) int64 residue in [0, n)
//   poly(R)             vector of R-values, no trailing zeros (0 = empty)
//   bipoly(prime(p))    polynomial in Y whose coefficients are polynomials in X
//   product(R1..Rk)     vector of component values
//   trivial(R)          vector {r, m}, multiplication (r1 r2, r1 m2 + m1 r2)
//   quotient            a canonical coset representative of the base ring
//
// Equality of elements is payload equality.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "refring/budget.hpp"

namespace refring {

using Integer = boost::multiprecision::cpp_int;

struct Value {
  std::variant<std::int64_t, Integer, std::vector<Value>> data;

  Value() : data(std::int64_t{0}) {}
  explicit Value(std::int64_t r) : data(r) {}
  explicit Value(Integer z) : data(std::move(z)) {}
  explicit Value(std::vector<Value> parts) : data(std::move(parts)) {}

  std::int64_t residue() const { return std::get<std::int64_t>(data); }
  const Integer& integer() const { return std::get<Integer>(data); }
  const std::vector<Value>& parts() const { return std::get<std::vector<Value>>(data); }
  std::vector<Value>& parts() { return std::get<std::vector<Value>>(data); }

  bool operator==(const Value& other) const { return data == other.data; }
  bool operator<(const Value& other) const { return data < other.data; }
};

struct ValueHash {
  std::size_t operator()(const Value& v) const;
};

enum class RingKind { integers, modular, prime_field, polynomial, bivariate, product, trivial, quotient };

class Element;
struct RingHomomorphism;

namespace detail {
struct RingNode;
}

class Ring {
 public:
  static Ring integers();
  /// n >= 2.
  static Ring modular(std::int64_t n);
  /// p prime (checked).
  static Ring prime_field(std::int64_t p);
  /// Arithmetic is unbounded; `degree_bound` only sizes exhaustive searches.
  static Ring polynomials(Ring base, std::optional<unsigned> degree_bound = std::nullopt);
  /// Polynomials in X and Y over a prime field.
  static Ring bivariate(Ring base, unsigned total_degree_bound);
  static Ring product(std::vector<Ring> factors);
  /// T(R, R).
  static Ring trivial_extension(Ring base);
  /// Projection R -> R / I for a finite R, I given by its full element list
  /// (checked to be an ideal). The target is a modular or product descriptor
  /// when one fits, otherwise an internal quotient descriptor whose elements
  /// are canonical coset representatives.
  static RingHomomorphism quotient(const Ring& base, std::span<const Element> ideal);

  /// Parses the descriptor grammar, e.g. `poly(modular(4), bound=3)`.
  static Ring parse(std::string_view text);

  RingKind kind() const;
  /// Canonical descriptor text; two rings are equal iff their names are.
  const std::string& name() const;
  bool operator==(const Ring& other) const;

  std::int64_t modulus() const;               // modular, prime_field
  const Ring& base() const;                    // polynomial, bivariate, trivial, quotient
  const std::vector<Ring>& factors() const;    // product
  std::optional<unsigned> degree_bound() const;  // polynomial, bivariate

  bool is_field() const;
  /// ℤ, or univariate polynomials over a field.
  bool is_euclidean() const;

  Element zero() const;
  Element one() const;
  Element from_integer(const Integer& z) const;
  Element element(Value v) const;  // canonicalizes
  Element parse_element(std::string_view text) const;

  /// Number of elements, or nullopt for an infinite ring. Saturates.
  std::optional<std::size_t> cardinality() const;
  /// Throws InfiniteRing or BudgetExceeded.
  std::size_t finite_size(const Budget& budget = {}) const;
  /// Enumeration order: residues ascending; tuples lexicographic with the
  /// last coordinate fastest; quotients in order of their representatives.
  Value value_at(std::size_t index) const;
  std::size_t index_of(const Value& v) const;
  std::vector<Element> elements(const Budget& budget = {}) const;

  // Payload-level arithmetic. Callers guarantee operands belong to this ring.
  Value zero_value() const;
  Value one_value() const;
  Value add(const Value& a, const Value& b) const;
  Value neg(const Value& a) const;
  Value sub(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  Value pow(const Value& a, std::uint64_t e) const;
  Value canonical(Value v) const;
  Value from_integer_value(const Integer& z) const;
  bool is_zero(const Value& a) const;
  std::string format(const Value& a) const;

  /// Nonnegative size used for Euclidean division: |a| over ℤ, degree over
  /// polynomials (zero has no size and is never asked for).
  Integer euclidean_size(const Value& a) const;
  /// a = q b + r with r = 0 or size(r) < size(b). b must be nonzero.
  std::pair<Value, Value> divmod(const Value& a, const Value& b) const;
  /// Unit u such that u * a is the canonical associate (nonnegative, monic).
  Value normalizing_unit(const Value& a) const;

  const detail::RingNode& node() const { return *node_; }

 private:
  explicit Ring(std::shared_ptr<const detail::RingNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::RingNode> node_;
  friend struct detail::RingNode;
};

class Element {
 public:
  /// `v` must already be canonical for `ring`.
  Element(Ring ring, Value v) : ring_(std::move(ring)), value_(std::move(v)) {}

  const Ring& ring() const { return ring_; }
  const Value& value() const { return value_; }

  bool is_zero() const { return ring_.is_zero(value_); }
  bool is_one() const { return value_ == ring_.one_value(); }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator-() const;
  Element pow(std::uint64_t e) const;

  /// Throws DescriptorMismatch across rings.
  bool operator==(const Element& o) const;

  std::string to_string() const { return ring_.format(value_); }

 private:
  Ring ring_;
  Value value_;
};

void require_same_ring(const Ring& a, const Ring& b, const char* what);

/// A verified ring map given by a payload function.
struct RingHomomorphism {
  Ring source;
  Ring target;
  std::function<Value(const Value&)> map;

  Element operator()(const Element& a) const;
};

/// Degree of a univariate polynomial payload; -1 for zero.
inline int poly_degree(const Value& f) { return static_cast<int>(f.parts().size()) - 1; }

}  // namespace refring
