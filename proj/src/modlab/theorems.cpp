#include "refring/theorems.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "refring/errors.hpp"

namespace refring {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

Verdict Report::overall() const {
  Verdict v = Verdict::holds;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::violated) return Verdict::violated;
    if (c.verdict == Verdict::inconclusive) v = Verdict::inconclusive;
  }
  return v;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

CheckResult make(std::string name, std::string instance) {
  CheckResult c;
  c.name = std::move(name);
  c.instance = std::move(instance);
  return c;
}

// Budget exhaustion and missing algorithms become inconclusive results.
CheckResult guarded(const std::string& name, const std::string& instance, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    CheckResult c = make(name, instance);
    c.verdict = Verdict::inconclusive;
    c.detail = std::string("budget exceeded: ") + e.what();
    return c;
  } catch (const UnsupportedDescriptor& e) {
    CheckResult c = make(name, instance);
    c.verdict = Verdict::inconclusive;
    c.detail = std::string("unsupported: ") + e.what();
    return c;
  }
}

BasisPtr basis_of(const Ring& ring, const Budget& budget) {
  return std::make_shared<const IdempotentBasis>(primitive_idempotent_decomposition(ring, budget));
}

std::string join_values(const std::vector<Element>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].to_string();
  return s + "}";
}

// Compares global isomorphism with agreement of the given localizations over
// all ordered pairs.
CheckResult compare_local_global(CheckResult c, const std::vector<ProjectiveModule>& modules,
                                 const std::vector<std::vector<ProjectiveModule>>& local) {
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < modules.size(); ++i)
    for (std::size_t j = 0; j < modules.size(); ++j) {
      ++pairs;
      const bool global = module_iso(modules[i], modules[j]);
      bool agree = true;
      for (std::size_t p = 0; p < local[i].size(); ++p) agree = agree && module_iso(local[i][p], local[j][p]);
      if (global != agree && c.verdict == Verdict::holds) {
        c.verdict = Verdict::violated;
        c.detail = "counterexample M=" + modules[i].to_string() + " N=" + modules[j].to_string();
      }
    }
  c.cases = pairs;
  if (c.verdict == Verdict::holds) c.detail = std::to_string(pairs) + " pairs, 0 counterexamples" + c.detail;
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> small_shapes(std::size_t q, std::size_t max_matrices) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 1}, {1, 2}, {2, 1}};
  if (saturating_pow(q, 4) <= max_matrices) shapes.emplace_back(2, 2);
  return shapes;
}

std::string shape_list(const std::vector<std::pair<std::size_t, std::size_t>>& shapes) {
  std::string s;
  for (auto [m, n] : shapes) s += (s.empty() ? "" : ",") + std::to_string(m) + "x" + std::to_string(n);
  return s;
}

struct ReductionTally {
  std::size_t regular = 0;
  std::size_t reduced = 0;
  std::optional<std::string> failure;
};

// Reduces every regular matrix of the given shapes; `extra` sees each
// successful reduction.
ReductionTally reduce_regular(const Ring& ring, const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                              const Budget& budget,
                              const std::function<bool(const Matrix&, const DiagonalReduction&)>& extra = {}) {
  ReductionTally t;
  for (auto [m, n] : shapes)
    for (const auto& a : all_matrices(ring, m, n, budget)) {
      if (!is_regular_matrix(a, RegularityMethod::automatic, budget)) continue;
      ++t.regular;
      const DiagonalReduction red = diagonal_reduction(a);
      if (!verify_reduction(a, red) || (extra && !extra(a, red))) {
        if (!t.failure) t.failure = a.to_string();
        continue;
      }
      ++t.reduced;
    }
  return t;
}

}  // namespace

std::string format_line(const CheckResult& c) {
  return "check=" + c.name + " verdict=" + to_string(c.verdict) + " cases=" + std::to_string(c.cases) +
         " instance=" + quoted(c.instance) + " detail=" + quoted(c.detail);
}

std::ostream& operator<<(std::ostream& os, const Report& r) {
  for (const auto& c : r.checks) os << format_line(c) << '\n';
  return os;
}

std::vector<ProjectiveModule> projective_modules_up_to(const BasisPtr& basis, std::uint32_t bound,
                                                       const Budget& budget) {
  const std::size_t k = basis->size();
  const std::size_t n = saturating_pow(bound + 1, k);
  budget.require_search(n, "projective modules up to " + std::to_string(bound));
  std::vector<ProjectiveModule> out;
  std::vector<std::uint32_t> t(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(basis, t);
    for (std::size_t c = k; c-- > 0;) {
      if (++t[c] <= bound) break;
      t[c] = 0;
    }
  }
  return out;
}

CheckResult local_global_verify(const Ring& ring, std::uint32_t bound, IdealFamily family, const Budget& budget) {
  const std::string name = family == IdealFamily::prime ? "local-global-prime" : "local-global-maximal";
  const std::string instance = ring.name() + ", multiplicities <= " + std::to_string(bound);
  return guarded(name, instance, [&] {
    const BasisPtr basis = basis_of(ring, budget);
    const auto modules = projective_modules_up_to(basis, bound, budget);
    std::vector<std::vector<ProjectiveModule>> local;
    for (const auto& m : modules) {
      std::vector<ProjectiveModule> row;
      for (std::size_t p = 0; p < basis->size(); ++p) row.push_back(*localize_at_maximal(m, p, budget).projective);
      local.push_back(std::move(row));
    }
    CheckResult c = make(name, instance);
    if (family == IdealFamily::prime) c.detail = "; primes of a finite commutative ring are maximal";
    return compare_local_global(std::move(c), modules, local);
  });
}

std::optional<std::vector<Element>> unit_combination(const std::vector<Element>& generators, const Budget& budget) {
  if (generators.empty()) return std::nullopt;
  const Ring& r = generators.front().ring();
  for (const auto& g : generators) require_same_ring(g.ring(), r, "unit_combination");
  const std::size_t q = r.finite_size(budget);
  const std::size_t n = generators.size();
  budget.require_search(saturating_pow(q, n), "unit combination search");
  std::vector<std::size_t> digit(n, 0);
  for (;;) {
    Value s = r.zero_value();
    for (std::size_t i = 0; i < n; ++i) s = r.add(s, r.mul(r.value_at(digit[i]), generators[i].value()));
    if (s == r.one_value()) {
      std::vector<Element> c;
      for (auto d : digit) c.emplace_back(r, r.value_at(d));
      return c;
    }
    std::size_t k = n;
    while (k > 0 && digit[k - 1] + 1 == q) digit[--k] = 0;
    if (k == 0) return std::nullopt;
    ++digit[k - 1];
  }
}

CheckResult partition_of_unity_verify(const Ring& ring, const std::vector<Element>& generators, std::uint32_t bound,
                                      const Budget& budget) {
  const std::string instance =
      ring.name() + ", generators " + join_values(generators) + ", multiplicities <= " + std::to_string(bound);
  const auto coeffs = unit_combination(generators, budget);
  if (!coeffs) throw PreconditionViolated(join_values(generators) + " does not generate " + ring.name());
  return guarded("partition-of-unity", instance, [&] {
    const BasisPtr basis = basis_of(ring, budget);
    const auto modules = projective_modules_up_to(basis, bound, budget);
    std::vector<std::vector<ProjectiveModule>> local;
    for (const auto& m : modules) {
      std::vector<ProjectiveModule> row;
      for (const auto& f : generators) row.push_back(*localize_at_element(m, f, budget).projective);
      local.push_back(std::move(row));
    }
    CheckResult c = make("partition-of-unity", instance);
    c.detail = "; 1 = ";
    for (std::size_t i = 0; i < generators.size(); ++i)
      c.detail += (i ? " + " : "") + (*coeffs)[i].to_string() + "*" + generators[i].to_string();
    return compare_local_global(std::move(c), modules, local);
  });
}

RankVerdict constant_rank_free_check(const ProjectiveModule& m, const Budget& budget) {
  RankVerdict v;
  for (std::size_t p = 0; p < m.basis()->size(); ++p)
    v.local_ranks.push_back(localize_at_maximal(m, p, budget).projective->multiplicities().at(0));
  v.constant = std::adjacent_find(v.local_ranks.begin(), v.local_ranks.end(), std::not_equal_to<>()) ==
               v.local_ranks.end();
  if (!v.constant) return v;
  v.rank = v.local_ranks.empty() ? 0 : v.local_ranks.front();
  const ProjectiveModule free = ProjectiveModule::free(m.basis(), v.rank);
  v.free_verified = module_iso(m, free);
  if (v.free_verified && m.cardinality() <= kMaxCarrier) {
    try {
      v.free_verified = module_iso(to_finite_module(m, budget), FiniteModule::free(m.ring(), v.rank, budget), budget);
    } catch (const BudgetExceeded&) {
      // Multiplicity comparison stands on its own.
    }
  }
  return v;
}

std::uint32_t stably_free_check(const ProjectiveModule& m, std::uint32_t a, std::uint32_t b) {
  const auto& t = m.multiplicities();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] + a != b)
      throw PreconditionViolated("claim false: coordinate " + std::to_string(i) + " gives " +
                                 std::to_string(t[i]) + " + " + std::to_string(a) + " != " + std::to_string(b));
  const std::uint32_t r = b - a;
  if (!module_iso(m, ProjectiveModule::free(m.basis(), r)))
    throw std::logic_error("stably free module is not free");
  return r;
}

CheckResult rank_corollaries_verify(const Ring& ring, std::uint32_t max_rank, const Budget& budget) {
  const std::string instance = ring.name() + ", ranks and a, b <= " + std::to_string(max_rank);
  return guarded("constant-rank-and-stably-free", instance, [&] {
    CheckResult c = make("constant-rank-and-stably-free", instance);
    const BasisPtr basis = basis_of(ring, budget);
    std::size_t constant = 0, claims = 0, rejected = 0;
    for (std::uint32_t r = 0; r <= max_rank; ++r) {
      const auto v = constant_rank_free_check(ProjectiveModule::free(basis, r), budget);
      ++constant;
      if (!v.constant || v.rank != r || !v.free_verified) {
        c.verdict = Verdict::violated;
        c.detail = "constant rank " + std::to_string(r) + " not verified free";
        return c;
      }
    }
    for (const auto& m : projective_modules_up_to(basis, max_rank, budget))
      for (std::uint32_t a = 0; a <= max_rank; ++a)
        for (std::uint32_t b = 0; b <= max_rank; ++b) {
          const bool claim = std::all_of(m.multiplicities().begin(), m.multiplicities().end(),
                                         [&](std::uint32_t x) { return x + a == b; });
          try {
            const auto r = stably_free_check(m, a, b);
            if (!claim || r != b - a) {
              c.verdict = Verdict::violated;
              c.detail = "claim " + m.to_string() + " accepted wrongly";
              return c;
            }
            ++claims;
          } catch (const PreconditionViolated&) {
            if (claim) {
              c.verdict = Verdict::violated;
              c.detail = "true claim " + m.to_string() + " rejected";
              return c;
            }
            ++rejected;
          }
        }
    c.cases = constant + claims + rejected;
    c.detail = std::to_string(constant) + " constant-rank modules free; " + std::to_string(claims) +
               " stably-free claims verified free; " + std::to_string(rejected) + " false claims rejected";
    return c;
  });
}

CheckResult refinement_verify(const Ring& ring, std::size_t samples, std::uint32_t max_entry, std::uint32_t seed,
                              const Budget& budget) {
  const std::string instance = ring.name() + ", " + std::to_string(samples) + " splittings with entries <= " +
                               std::to_string(max_entry);
  return guarded("refinement", instance, [&] {
    CheckResult c = make("refinement", instance);
    const ProjectiveMonoid v = projective_monoid(ring, budget);
    const std::size_t k = v.basis->size();
    if (!v.presentation->is_free()) {
      c.verdict = Verdict::violated;
      c.detail = "V(R) is not free";
      return c;
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::uint32_t> entry(0, max_entry);
    for (std::size_t s = 0; s < samples; ++s) {
      Exponents x1(k), x2(k), y1(k), y2(k);
      for (std::size_t i = 0; i < k; ++i) {
        x1[i] = entry(rng);
        x2[i] = entry(rng);
        y1[i] = std::uniform_int_distribution<std::uint32_t>(0, x1[i] + x2[i])(rng);
        y2[i] = x1[i] + x2[i] - y1[i];
      }
      const MonoidElement a1(v.presentation, x1), a2(v.presentation, x2), b1(v.presentation, y1),
          b2(v.presentation, y2);
      const std::uint32_t bound = 2 * max_entry;
      const auto w = refine(a1, a2, b1, b2, bound, budget);
      if (!w || !w->reproduces(a1, a2, b1, b2)) {
        c.verdict = Verdict::violated;
        c.detail = "no refinement for " + a1.to_string() + "+" + a2.to_string() + " = " + b1.to_string() + "+" +
                   b2.to_string();
        return c;
      }
    }
    const auto small = elements_up_to(v.presentation, std::min<std::uint32_t>(max_entry, 3), budget);
    if (!conical_check(small)) {
      c.verdict = Verdict::violated;
      c.detail = "V(R) is not conical";
      return c;
    }
    c.cases = samples;
    c.detail = "V(R) free of rank " + std::to_string(k) + "; all splittings refined; conical on " +
               std::to_string(small.size()) + " elements";
    return c;
  });
}

bool DecompositionReport::holds() const {
  return std::all_of(indices.begin(), indices.end(), [](const DecompositionIndex& d) {
           return d.kernel_part && d.cokernel_part;
         }) &&
         sums_match.value_or(true);
}

DecompositionReport diagonal_refinement_check(const Matrix& f, const Budget& budget) {
  const Ring& r = f.ring();
  if (!is_regular_matrix(f, RegularityMethod::automatic, budget))
    throw PreconditionViolated(f.to_string() + " is not regular over " + r.name());
  const DiagonalReduction red = diagonal_reduction(f);
  const std::size_t m = f.rows(), n = f.cols(), rank = std::min(m, n);
  const FiniteModule whole = FiniteModule::from_ideal(r, r.elements(budget), budget);

  auto entry = [&](std::size_t j) { return j < rank ? red.D.at(j, j) : r.zero(); };
  auto kernel_part = [&](const Element& d) {
    Ideal ann;
    for (const auto& x : r.elements(budget))
      if ((d * x).is_zero()) ann.push_back(x);
    return FiniteModule::from_ideal(r, ann, budget);
  };
  auto image_part = [&](const Element& d) { return FiniteModule::from_ideal(r, principal_ideal(d, budget), budget); };
  auto cokernel_part = [&](const Element& d) {
    return FiniteModule::ring_quotient(r, principal_ideal(d, budget), budget);
  };

  DecompositionReport report;
  const std::size_t count = std::max(m, n);
  for (std::size_t j = 0; j < count; ++j) {
    const Element d = entry(j);
    DecompositionIndex idx;
    idx.index = j + 1;
    idx.d = j < rank ? d.to_string() : "free";
    const FiniteModule image = image_part(d);
    // Beyond the rank only the kernel side (extra columns) or the cokernel
    // side (extra rows) exists.
    idx.kernel_part = j >= n || module_iso(FiniteModule::direct_sum(kernel_part(d), image, budget), whole, budget);
    idx.cokernel_part =
        j >= m || module_iso(FiniteModule::direct_sum(cokernel_part(d), image, budget), whole, budget);
    report.indices.push_back(std::move(idx));
  }

  try {
    const KernelImageCokernel kic = kernel_image_cokernel(f, budget);
    std::vector<FiniteModule> ks, is, cs;
    for (std::size_t j = 0; j < n; ++j) ks.push_back(kernel_part(entry(j)));
    for (std::size_t j = 0; j < rank; ++j) is.push_back(image_part(entry(j)));
    for (std::size_t j = 0; j < m; ++j) cs.push_back(cokernel_part(entry(j)));
    report.sums_match = module_iso(kic.kernel, FiniteModule::direct_sum(ks, r, budget), budget) &&
                        module_iso(kic.image, FiniteModule::direct_sum(is, r, budget), budget) &&
                        module_iso(kic.cokernel, FiniteModule::direct_sum(cs, r, budget), budget);
  } catch (const BudgetExceeded&) {
    report.sums_match = std::nullopt;
  }
  return report;
}

CheckResult decomposition_verify(const Ring& ring, const Budget& budget) {
  const std::string instance = ring.name() + ", every 1x1 matrix";
  return guarded("decomposition", instance, [&] {
    CheckResult c = make("decomposition", instance);
    std::size_t regular = 0, rejected = 0;
    for (const auto& d : ring.elements(budget)) {
      const Matrix f = Matrix::from_elements(ring, 1, 1, {d});
      if (!is_regular_element(d, RegularityMethod::automatic, budget)) {
        try {
          diagonal_refinement_check(f, budget);
          c.verdict = Verdict::violated;
          c.detail = "non-regular " + d.to_string() + " accepted";
          return c;
        } catch (const PreconditionViolated&) {
          ++rejected;
        }
        continue;
      }
      ++regular;
      const auto rep = diagonal_refinement_check(f, budget);
      if (!rep.holds()) {
        c.verdict = Verdict::violated;
        c.detail = "fails at d = " + d.to_string();
        return c;
      }
    }
    c.cases = regular;
    c.detail = std::to_string(regular) + " regular entries: ann(d)+dR = R and R/dR+dR = R; " +
               std::to_string(rejected) + " non-regular entries rejected";
    return c;
  });
}

Report cancellation_and_reduction_verify(const Ring& ring, std::uint32_t bound, std::size_t max_matrices,
                                         const Budget& budget) {
  Report report;
  const std::string inst = ring.name() + ", multiplicities <= " + std::to_string(bound);
  report.add(guarded("cancellation", inst, [&] {
    CheckResult c = make("cancellation", inst);
    const ProjectiveMonoid v = projective_monoid(ring, budget);
    const auto candidates = elements_up_to(v.presentation, bound, budget);
    const auto r = cancellation_law_check(v.unit(), candidates);
    c.cases = r.pairs_checked;
    if (r.status == CancellationReport::Status::holds) {
      c.detail = "2R+A = R+B implies R+A = B on " + std::to_string(r.pairs_checked) + " pairs";
    } else {
      c.verdict = r.status == CancellationReport::Status::counterexample ? Verdict::violated : Verdict::inconclusive;
      c.detail = "A=" + r.pair->first.to_string() + " B=" + r.pair->second.to_string();
    }
    return c;
  }));

  const std::size_t q = ring.cardinality().value_or(0);
  const auto shapes = small_shapes(q, max_matrices);
  const std::string minst = ring.name() + ", shapes " + shape_list(shapes);
  report.add(guarded("regular-reduction", minst, [&] {
    CheckResult c = make("regular-reduction", minst);
    const auto t = reduce_regular(ring, shapes, budget);
    c.cases = t.regular;
    if (t.failure) {
      c.verdict = Verdict::violated;
      c.detail = "no verified reduction for " + *t.failure;
    } else {
      c.detail = std::to_string(t.reduced) + " regular matrices reduced with verified witnesses";
    }
    return c;
  }));
  return report;
}

Report jacobson_lift_verify(const Ring& ring, std::size_t max_matrices, const Budget& budget) {
  Report report;
  const std::string inst = ring.name();
  std::optional<JacobsonQuotient> jq;
  report.add(guarded("jacobson-radical", inst, [&] {
    CheckResult c = make("jacobson-radical", inst);
    jq = jacobson_radical_and_quotient(ring, budget);
    std::vector<Value> meet;
    for (const auto& x : ring.elements(budget)) meet.push_back(x.value());
    for (const auto& p : maximal_ideals(ring, budget)) {
      std::vector<Value> keep;
      for (const auto& x : p)
        if (std::find(meet.begin(), meet.end(), x.value()) != meet.end()) keep.push_back(x.value());
      meet = std::move(keep);
    }
    std::vector<Value> rad;
    for (const auto& x : jq->radical) rad.push_back(x.value());
    c.cases = ring.finite_size(budget);
    if (rad != meet) {
      c.verdict = Verdict::violated;
      c.detail = "unit criterion and intersection of maximal ideals differ";
    } else {
      c.detail = "J = " + join_values(jq->radical) + ", R/J = " + jq->quotient().name();
    }
    return c;
  }));
  if (!jq) return report;

  const Ring& bar = jq->quotient();
  const auto shapes_bar = small_shapes(bar.finite_size(budget), max_matrices);
  const std::string qinst = bar.name() + ", shapes " + shape_list(shapes_bar);
  report.add(guarded("jacobson-quotient-reduction", qinst, [&] {
    CheckResult c = make("jacobson-quotient-reduction", qinst);
    const auto t = reduce_regular(bar, shapes_bar, budget);
    c.cases = t.regular;
    if (t.failure) {
      c.verdict = Verdict::violated;
      c.detail = "no verified reduction for " + *t.failure;
    } else {
      c.detail = std::to_string(t.reduced) + " regular matrices over R/J reduced";
    }
    return c;
  }));

  const auto shapes = small_shapes(ring.finite_size(budget), max_matrices);
  const std::string rinst = ring.name() + ", shapes " + shape_list(shapes);
  report.add(guarded("jacobson-lift", rinst, [&] {
    CheckResult c = make("jacobson-lift", rinst);
    const auto t = reduce_regular(ring, shapes, budget, [&](const Matrix& a, const DiagonalReduction& red) {
      const DiagonalReduction image{red.P.mapped(jq->projection), red.P_inv.mapped(jq->projection),
                                    red.Q.mapped(jq->projection), red.Q_inv.mapped(jq->projection),
                                    red.D.mapped(jq->projection)};
      return verify_reduction(a.mapped(jq->projection), image);
    });
    c.cases = t.regular;
    if (t.failure) {
      c.verdict = Verdict::violated;
      c.detail = "lift or projection fails for " + *t.failure;
    } else {
      c.detail = std::to_string(t.reduced) + " regular matrices over R reduced; each projects to a reduction over R/J";
    }
    return c;
  }));
  return report;
}

Report theorem_suite(const Ring& ring, const SuiteOptions& options, const Budget& budget) {
  Report report;
  report.add(local_global_verify(ring, options.bound, IdealFamily::prime, budget));
  report.add(local_global_verify(ring, options.bound, IdealFamily::maximal, budget));

  const std::string pinst = ring.name() + ", a and 1-a";
  report.add(guarded("partition-of-unity", pinst, [&] {
    const auto basis = primitive_idempotent_decomposition(ring, budget);
    const Element a = basis.size() > 0 ? basis[0] : ring.one();
    return partition_of_unity_verify(ring, {a, ring.one() - a}, options.bound, budget);
  }));

  report.add(rank_corollaries_verify(ring, options.bound, budget));
  report.add(refinement_verify(ring, options.refine_samples, options.refine_max_entry, 1, budget));
  report.append(cancellation_and_reduction_verify(ring, options.bound, options.max_matrices, budget));
  report.append(jacobson_lift_verify(ring, options.max_matrices, budget));
  report.add(decomposition_verify(ring, budget));
  return report;
}

}  // namespace refring
