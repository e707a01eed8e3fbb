#pragma once

// Modules over finite commutative rings.
//
// ProjectiveModule stores multiplicities over the primitive idempotents:
// t = (t_1..t_k) stands for t_1 (e_1 R) + ... + t_k (e_k R). FiniteModule is
// an explicitly enumerated module given by addition and scalar tables.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "refring/algebra.hpp"
#include "refring/budget.hpp"
#include "refring/matrix.hpp"
#include "refring/monoid.hpp"
#include "refring/ring.hpp"

namespace refring {

using BasisPtr = std::shared_ptr<const IdempotentBasis>;

class ProjectiveModule {
 public:
  /// Throws PreconditionViolated when the vector length differs from the
  /// basis size.
  ProjectiveModule(BasisPtr basis, std::vector<std::uint32_t> multiplicities);
  static ProjectiveModule free(BasisPtr basis, std::uint32_t rank);

  const Ring& ring() const { return basis_->ring(); }
  const BasisPtr& basis() const { return basis_; }
  const std::vector<std::uint32_t>& multiplicities() const { return t_; }
  bool is_zero() const;

  /// Direct sum.
  ProjectiveModule operator+(const ProjectiveModule& other) const;
  /// Literal multiplicity equality; module_iso adds the ring check.
  bool operator==(const ProjectiveModule& other) const { return t_ == other.t_; }

  /// Product of |e_i R|^{t_i}, saturating.
  std::size_t cardinality() const;
  std::string to_string() const;

 private:
  BasisPtr basis_;
  std::vector<std::uint32_t> t_;
};

/// V(R) as the free commutative monoid on the classes [e_i R].
struct ProjectiveMonoid {
  PresentationPtr presentation;
  BasisPtr basis;

  /// The class of R itself (every coordinate 1).
  MonoidElement unit() const;
  MonoidElement class_of(const ProjectiveModule& m) const;
  ProjectiveModule module_of(const MonoidElement& x) const;
};

ProjectiveMonoid projective_monoid(const Ring& ring, const Budget& budget = {});

/// Carrier element indices into a FiniteModule.
using ModIndex = std::uint32_t;

class FiniteModule {
 public:
  /// R^n with tuple labels.
  static FiniteModule free(const Ring& ring, std::size_t rank, const Budget& budget = {});
  /// A subset of R^n given as tuples; checked to contain 0 and be closed
  /// under addition and scalars.
  static FiniteModule submodule_of_free(const Ring& ring, std::size_t rank, std::vector<std::vector<Value>> tuples,
                                        const Budget& budget = {});
  /// An ideal viewed as a submodule of R.
  static FiniteModule from_ideal(const Ring& ring, const Ideal& ideal, const Budget& budget = {});
  /// R / I.
  static FiniteModule ring_quotient(const Ring& ring, const Ideal& ideal, const Budget& budget = {});
  /// M + N with pair labels.
  static FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b, const Budget& budget = {});
  static FiniteModule direct_sum(std::span<const FiniteModule> parts, const Ring& ring, const Budget& budget = {});

  /// The submodule on the given carrier indices (closure checked).
  FiniteModule submodule(std::vector<ModIndex> members) const;
  /// M / N for a submodule given by carrier indices; each coset is labelled
  /// by its least-index member.
  FiniteModule quotient(const std::vector<ModIndex>& members) const;
  /// r M.
  FiniteModule scalar_image(const Element& r) const;

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return labels_.size(); }
  const Value& label(ModIndex x) const { return labels_[x]; }
  std::string format(ModIndex x) const;
  ModIndex zero() const { return zero_; }
  ModIndex add(ModIndex x, ModIndex y) const { return add_[static_cast<std::size_t>(x) * size() + y]; }
  /// `r` is a ring enumeration index.
  ModIndex scale(std::size_t r, ModIndex x) const { return scale_[r * size() + x]; }
  ModIndex scale(const Element& r, ModIndex x) const;
  std::optional<ModIndex> find(const Value& label) const;

  /// ann(x) as ring enumeration indices.
  std::vector<std::size_t> annihilator_of(ModIndex x) const;
  /// ann(M) as ring elements.
  Ideal annihilator() const;
  /// R x as a sorted index set.
  std::vector<ModIndex> cyclic_submodule(ModIndex x) const;
  /// Sum of submodules given as index sets.
  std::vector<ModIndex> sum(const std::vector<ModIndex>& a, const std::vector<ModIndex>& b) const;

  std::string to_string() const;

 private:
  using Formatter = std::function<std::string(const Value&)>;

  FiniteModule(Ring ring, std::vector<Value> labels, std::vector<ModIndex> add, std::vector<ModIndex> scale,
               ModIndex zero, Formatter formatter);
  static FiniteModule build(const Ring& ring, std::vector<Value> labels,
                            const std::function<Value(const Value&, const Value&)>& add,
                            const std::function<Value(const Value&, const Value&)>& scale, Formatter formatter,
                            const char* what);
  void spot_check() const;

  Ring ring_;
  std::vector<Value> labels_;
  std::vector<ModIndex> add_;
  std::vector<ModIndex> scale_;
  ModIndex zero_;
  Formatter formatter_;
};

/// Largest carrier a FiniteModule is built for.
inline constexpr std::size_t kMaxCarrier = 2048;

/// t_1 (e_1 R) + ... + t_k (e_k R) as tuples.
FiniteModule to_finite_module(const ProjectiveModule& m, const Budget& budget = {});

/// Localization S^{-1}R realized as the factor e R = R / (1 - e) R.
struct LocalizedView {
  std::string target;  // e.g. "maximal ideal #1: {0, 2, 4}" or "element 4"
  Element idempotent;  // e
  RingHomomorphism to_local;
  std::optional<ProjectiveModule> projective;  // over the local ring's basis
  std::optional<FiniteModule> finite;          // e M, an R-module on which e acts as 1

  const Ring& local_ring() const { return to_local.target; }
};

/// M_P for the i-th ideal of maximal_ideals(R): rank t_i free over R_P.
LocalizedView localize_at_maximal(const ProjectiveModule& m, std::size_t ideal_index, const Budget& budget = {});
/// Same, identifying the ideal by its elements. Throws PreconditionViolated
/// when it is not one of maximal_ideals(R).
LocalizedView localize_at_maximal(const ProjectiveModule& m, const Ideal& ideal, const Budget& budget = {});

/// The idempotent power f^t of f (0 when f is nilpotent).
Element idempotent_power(const Element& f);

/// M_(f) through e = idempotent_power(f). The image of f is checked to be a
/// unit of the local ring.
LocalizedView localize_at_element(const ProjectiveModule& m, const Element& f, const Budget& budget = {});
LocalizedView localize_at_element(const FiniteModule& m, const Element& f, const Budget& budget = {});

/// Exact: multiplicity vectors over the same ring.
bool module_iso(const ProjectiveModule& a, const ProjectiveModule& b);

/// A verified isomorphism as a carrier permutation, or nullopt after an
/// exhaustive search. Throws BudgetExceeded past `budget.search` candidate
/// generator assignments.
std::optional<std::vector<ModIndex>> find_module_iso(const FiniteModule& a, const FiniteModule& b,
                                                     const Budget& budget = {});
inline bool module_iso(const FiniteModule& a, const FiniteModule& b, const Budget& budget = {}) {
  return find_module_iso(a, b, budget).has_value();
}

struct KernelImageCokernel {
  FiniteModule kernel;    // in R^n
  FiniteModule image;     // in R^m
  FiniteModule cokernel;  // R^m / image
};

/// For f (m x n) acting on column vectors R^n -> R^m. Checks
/// |ker| |im| = |R|^n.
KernelImageCokernel kernel_image_cokernel(const Matrix& f, const Budget& budget = {});

}  // namespace refring
