#pragma once

// Finitely generated commutative monoids given by generators and relations.
//
// Elements are exponent vectors over the generators. For a presentation
// without relations (a free commutative monoid) the vector is the canonical
// form and every decision below is exact. With relations, equality is
// decided by a bounded bidirectional rewriting search and can come back
// inconclusive.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refring/budget.hpp"

namespace refring {

using Exponents = std::vector<std::uint32_t>;

struct Relation {
  Exponents lhs;
  Exponents rhs;
  bool operator==(const Relation&) const = default;
};

class MonoidPresentation {
 public:
  /// Throws PreconditionViolated when a relation vector has the wrong length
  /// or `generator_count` is zero.
  static std::shared_ptr<const MonoidPresentation> make(std::size_t generator_count,
                                                        std::vector<Relation> relations = {});
  static std::shared_ptr<const MonoidPresentation> free(std::size_t generator_count) {
    return make(generator_count);
  }

  std::size_t generator_count() const { return generator_count_; }
  const std::vector<Relation>& relations() const { return relations_; }
  bool is_free() const { return relations_.empty(); }

  bool operator==(const MonoidPresentation&) const = default;
  std::string to_string() const;

 private:
  MonoidPresentation(std::size_t n, std::vector<Relation> r)
      : generator_count_(n), relations_(std::move(r)) {}

  std::size_t generator_count_;
  std::vector<Relation> relations_;
};

using PresentationPtr = std::shared_ptr<const MonoidPresentation>;

class MonoidElement {
 public:
  MonoidElement(PresentationPtr presentation, Exponents exponents);
  static MonoidElement zero(PresentationPtr presentation);

  const PresentationPtr& presentation() const { return presentation_; }
  const Exponents& exponents() const { return exponents_; }
  bool is_zero_vector() const;

  /// Componentwise sum. Throws DescriptorMismatch across presentations.
  MonoidElement operator+(const MonoidElement& other) const;
  MonoidElement scaled(std::uint32_t k) const;

  /// Literal exponent-vector equality. Use normalize_and_eq for equality in
  /// a presented monoid.
  bool operator==(const MonoidElement& other) const { return exponents_ == other.exponents_; }

  std::string to_string() const;

 private:
  PresentationPtr presentation_;
  Exponents exponents_;
};

bool same_presentation(const MonoidElement& a, const MonoidElement& b);

enum class Equality { equal, unequal, inconclusive };

std::string to_string(Equality e);

/// Rewrite steps used by operations that compare elements internally.
inline constexpr std::size_t kDefaultRewriteSteps = 24;

/// Decides a == b in the presented monoid. Exact for free presentations.
/// Otherwise explores rewrite closures from both ends, at most `search_bound`
/// rewrite steps in total; `unequal` is returned only when one closure is
/// saturated without meeting the other.
Equality normalize_and_eq(const MonoidElement& a, const MonoidElement& b,
                          std::size_t search_bound = kDefaultRewriteSteps);

/// z[i][j] with x_i = z[i][0] + z[i][1] and y_j = z[0][j] + z[1][j].
struct RefinementWitness {
  std::array<std::array<MonoidElement, 2>, 2> z;

  bool reproduces(const MonoidElement& x1, const MonoidElement& x2, const MonoidElement& y1,
                  const MonoidElement& y2, std::size_t search_bound = kDefaultRewriteSteps) const;
};

/// Searches for a 2x2 refinement of x1 + x2 = y1 + y2 with every exponent of
/// every z entry at most `bound`. Candidates are tried in descending
/// lexicographic order of z11 (then z12, z21, z22 for presented monoids); the
/// first witness wins. nullopt means the bound was exhausted.
///
/// Throws PreconditionViolated if the sums are shown to differ.
std::optional<RefinementWitness> refine(const MonoidElement& x1, const MonoidElement& x2,
                                        const MonoidElement& y1, const MonoidElement& y2,
                                        std::uint32_t bound, const Budget& budget = {});

/// True iff no two elements of the set (an element may pair with itself) that
/// are not both zero sum to zero.
bool conical_check(std::span<const MonoidElement> elements,
                   std::size_t search_bound = kDefaultRewriteSteps);

struct CancellationReport {
  enum class Status { holds, counterexample, inconclusive };
  Status status = Status::holds;
  /// The offending (A, B) for counterexample or inconclusive.
  std::optional<std::pair<MonoidElement, MonoidElement>> pair;
  std::size_t pairs_checked = 0;
};

/// Checks 2u + A = u + B  =>  u + A = B over all ordered pairs of candidates.
CancellationReport cancellation_law_check(const MonoidElement& unit,
                                          std::span<const MonoidElement> candidates,
                                          std::size_t search_bound = kDefaultRewriteSteps);

/// Every element whose exponents are all at most `max_exponent`, in
/// lexicographic order (first generator slowest).
std::vector<MonoidElement> elements_up_to(const PresentationPtr& presentation,
                                          std::uint32_t max_exponent, const Budget& budget = {});

}  // namespace refring
