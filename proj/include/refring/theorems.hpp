#pragma once

// Exhaustive verifiers for structure theorems about finite commutative
// rings. Each returns line-oriented results; a `violated` verdict means the
// implementation disagrees with the theorem on that instance.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "refring/module.hpp"
#include "refring/reduction.hpp"

namespace refring {

enum class Verdict { holds, violated, inconclusive };

std::string to_string(Verdict v);

struct CheckResult {
  std::string name;
  std::string instance;
  Verdict verdict = Verdict::holds;
  std::size_t cases = 0;
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void append(const Report& other);
  /// violated if any check is violated, else inconclusive if any is, else holds.
  Verdict overall() const;
};

/// `check=<name> verdict=<v> cases=<n> instance="<...>" detail="<...>"`, one
/// line per check.
std::string format_line(const CheckResult& c);
std::ostream& operator<<(std::ostream& os, const Report& r);

/// Every multiplicity vector with entries at most `bound`, first coordinate
/// slowest.
std::vector<ProjectiveModule> projective_modules_up_to(const BasisPtr& basis, std::uint32_t bound,
                                                       const Budget& budget = {});

enum class IdealFamily { prime, maximal };

/// For all pairs of projectives with multiplicities <= bound: M = N iff
/// M_P = N_P for every P in the family. Over a finite commutative ring
/// every prime ideal is maximal, so both families are maximal_ideals(R).
CheckResult local_global_verify(const Ring& ring, std::uint32_t bound, IdealFamily family = IdealFamily::maximal,
                                const Budget& budget = {});

/// Coefficients c with sum c_i f_i = 1, or nullopt.
std::optional<std::vector<Element>> unit_combination(const std::vector<Element>& generators,
                                                     const Budget& budget = {});

/// For all pairs with multiplicities <= bound: M = N iff M_(f_i) = N_(f_i)
/// for every i. Throws PreconditionViolated when the f_i do not generate R.
CheckResult partition_of_unity_verify(const Ring& ring, const std::vector<Element>& generators,
                                      std::uint32_t bound, const Budget& budget = {});

struct RankVerdict {
  bool constant = false;
  std::uint32_t rank = 0;                   // when constant
  std::vector<std::uint32_t> local_ranks;   // rank of M_P per maximal ideal
  /// When constant: M = R^r by multiplicities and, if the carriers are
  /// small enough, by an explicit finite-module isomorphism.
  bool free_verified = false;
};

/// Constant local rank r implies M = R^r (checked with module_iso).
RankVerdict constant_rank_free_check(const ProjectiveModule& m, const Budget& budget = {});

/// Given the claim M + R^a = R^b, returns b - a after checking M = R^(b-a).
/// Throws PreconditionViolated when the claim is false.
std::uint32_t stably_free_check(const ProjectiveModule& m, std::uint32_t a, std::uint32_t b);

/// Constant-rank vectors up to `max_rank` are free, and every true
/// stably-free claim t + a = b with a, b <= max_rank yields a free module.
CheckResult rank_corollaries_verify(const Ring& ring, std::uint32_t max_rank, const Budget& budget = {});

/// V(R) is free, refine succeeds on `samples` random splittings with
/// entries <= max_entry, and the monoid is conical.
CheckResult refinement_verify(const Ring& ring, std::size_t samples, std::uint32_t max_entry,
                              std::uint32_t seed = 1, const Budget& budget = {});

struct DecompositionIndex {
  std::size_t index = 0;
  std::string d;                 // diagonal entry, or "free"
  bool kernel_part = false;      // K_j + I_j = R
  bool cokernel_part = false;    // C_j + I_j = R
};

struct DecompositionReport {
  std::vector<DecompositionIndex> indices;
  /// ker f, im f and coker f compared with the direct sums of the parts;
  /// nullopt when the carriers exceed the budget.
  std::optional<bool> sums_match;
  bool holds() const;
};

/// For regular f with diagonal form diag(d_1..d_r): K_j = ann(d_j),
/// I_j = d_j R, C_j = R / d_j R. Beyond r the kernel (n > m) or cokernel
/// (m > n) parts are free of rank one. Throws PreconditionViolated when f
/// is not regular.
DecompositionReport diagonal_refinement_check(const Matrix& f, const Budget& budget = {});

/// Cancellation in V(R) over multiplicities <= bound, and diagonal
/// reduction of every regular 1x1, 1x2, 2x1 (and 2x2 when |R|^4 is at most
/// `max_matrices`) matrix.
Report cancellation_and_reduction_verify(const Ring& ring, std::uint32_t bound, std::size_t max_matrices = 20000,
                                         const Budget& budget = {});

/// J(R) against the intersection of the maximal ideals; regular matrices
/// over R and R/J(R) reduce; reductions project to reductions.
Report jacobson_lift_verify(const Ring& ring, std::size_t max_matrices = 20000, const Budget& budget = {});

/// Decomposition criterion over every regular 1x1 matrix.
CheckResult decomposition_verify(const Ring& ring, const Budget& budget = {});

struct SuiteOptions {
  std::uint32_t bound = 3;
  std::size_t refine_samples = 500;
  std::uint32_t refine_max_entry = 10;
  std::size_t max_matrices = 20000;
};

/// Everything above for one ring.
Report theorem_suite(const Ring& ring, const SuiteOptions& options = {}, const Budget& budget = {});

}  // namespace refring
