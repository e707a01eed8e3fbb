#include "refring/monoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "refring/errors.hpp"

namespace refring {

namespace {

std::string vector_text(const Exponents& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  out << ')';
  return out.str();
}

bool dominates(const Exponents& x, const Exponents& u) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < u[i]) return false;
  return true;
}

Exponents rewrite(const Exponents& x, const Exponents& from, const Exponents& to) {
  Exponents r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - from[i] + to[i];
  return r;
}

void require_same(const MonoidElement& a, const MonoidElement& b) {
  if (!same_presentation(a, b))
    throw DescriptorMismatch("monoid elements belong to different presentations");
}

// Visited states beyond this count make a closure search inconclusive.
constexpr std::size_t kClosureCap = 1u << 18;

// Advances `digits` (entries in [0, hi[i]]) to the next vector in descending
// lexicographic order. Returns false after the all-zero vector.
bool step_descending(Exponents& digits, const Exponents& hi) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] > 0) {
      --digits[i];
      for (std::size_t j = i + 1; j < digits.size(); ++j) digits[j] = hi[j];
      return true;
    }
  }
  return false;
}

}  // namespace

std::shared_ptr<const MonoidPresentation> MonoidPresentation::make(std::size_t generator_count,
                                                                   std::vector<Relation> relations) {
  if (generator_count == 0) throw PreconditionViolated("a presentation needs at least one generator");
  for (const auto& r : relations) {
    if (r.lhs.size() != generator_count || r.rhs.size() != generator_count)
      throw PreconditionViolated("relation vector length differs from the generator count");
  }
  return std::shared_ptr<const MonoidPresentation>(
      new MonoidPresentation(generator_count, std::move(relations)));
}

std::string MonoidPresentation::to_string() const {
  std::ostringstream out;
  out << "generators=" << generator_count_;
  for (const auto& r : relations_) out << ' ' << vector_text(r.lhs) << '=' << vector_text(r.rhs);
  return out.str();
}

MonoidElement::MonoidElement(PresentationPtr presentation, Exponents exponents)
    : presentation_(std::move(presentation)), exponents_(std::move(exponents)) {
  if (!presentation_) throw PreconditionViolated("monoid element without a presentation");
  if (exponents_.size() != presentation_->generator_count())
    throw PreconditionViolated("exponent vector length differs from the generator count");
}

MonoidElement MonoidElement::zero(PresentationPtr presentation) {
  const auto n = presentation->generator_count();
  return MonoidElement(std::move(presentation), Exponents(n, 0));
}

bool MonoidElement::is_zero_vector() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
}

MonoidElement MonoidElement::operator+(const MonoidElement& other) const {
  require_same(*this, other);
  Exponents r(exponents_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = exponents_[i] + other.exponents_[i];
  return MonoidElement(presentation_, std::move(r));
}

MonoidElement MonoidElement::scaled(std::uint32_t k) const {
  Exponents r(exponents_);
  for (auto& e : r) e *= k;
  return MonoidElement(presentation_, std::move(r));
}

std::string MonoidElement::to_string() const { return vector_text(exponents_); }

bool same_presentation(const MonoidElement& a, const MonoidElement& b) {
  return a.presentation() == b.presentation() || *a.presentation() == *b.presentation();
}

std::string to_string(Equality e) {
  switch (e) {
    case Equality::equal: return "equal";
    case Equality::unequal: return "unequal";
    case Equality::inconclusive: return "inconclusive";
  }
  return "?";
}

Equality normalize_and_eq(const MonoidElement& a, const MonoidElement& b, std::size_t search_bound) {
  require_same(a, b);
  if (a.exponents() == b.exponents()) return Equality::equal;
  const auto& relations = a.presentation()->relations();
  if (relations.empty()) return Equality::unequal;

  struct Side {
    std::set<Exponents> seen;
    std::vector<Exponents> frontier;
  };
  Side sides[2];
  sides[0].seen.insert(a.exponents());
  sides[0].frontier.push_back(a.exponents());
  sides[1].seen.insert(b.exponents());
  sides[1].frontier.push_back(b.exponents());

  for (std::size_t step = 0; step < search_bound; ++step) {
    // Expand the smaller live frontier; ties go to the smaller closure.
    const auto size_key = [&](int i) { return std::pair(sides[i].frontier.size(), sides[i].seen.size()); };
    int s = size_key(0) <= size_key(1) ? 0 : 1;
    if (sides[s].frontier.empty()) s = 1 - s;
    Side& here = sides[s];
    const Side& there = sides[1 - s];
    std::vector<Exponents> next;
    for (const auto& x : here.frontier) {
      for (const auto& r : relations) {
        for (int dir = 0; dir < 2; ++dir) {
          const Exponents& from = dir == 0 ? r.lhs : r.rhs;
          const Exponents& to = dir == 0 ? r.rhs : r.lhs;
          if (!dominates(x, from)) continue;
          Exponents y = rewrite(x, from, to);
          if (there.seen.count(y)) return Equality::equal;
          if (here.seen.insert(y).second) next.push_back(std::move(y));
        }
      }
    }
    here.frontier = std::move(next);
    if (here.frontier.empty()) return Equality::unequal;  // closure saturated
    if (here.seen.size() > kClosureCap) return Equality::inconclusive;
  }
  return Equality::inconclusive;
}

bool RefinementWitness::reproduces(const MonoidElement& x1, const MonoidElement& x2,
                                   const MonoidElement& y1, const MonoidElement& y2,
                                   std::size_t search_bound) const {
  auto eq = [&](const MonoidElement& l, const MonoidElement& r) {
    return normalize_and_eq(l, r, search_bound) == Equality::equal;
  };
  return eq(z[0][0] + z[0][1], x1) && eq(z[1][0] + z[1][1], x2) && eq(z[0][0] + z[1][0], y1) &&
         eq(z[0][1] + z[1][1], y2);
}

std::optional<RefinementWitness> refine(const MonoidElement& x1, const MonoidElement& x2,
                                        const MonoidElement& y1, const MonoidElement& y2,
                                        std::uint32_t bound, const Budget& budget) {
  require_same(x1, x2);
  require_same(x1, y1);
  require_same(x1, y2);
  const auto& pres = x1.presentation();
  const std::size_t k = pres->generator_count();

  switch (normalize_and_eq(x1 + x2, y1 + y2)) {
    case Equality::equal: break;
    case Equality::unequal: throw PreconditionViolated("refine: x1 + x2 differs from y1 + y2");
    case Equality::inconclusive:
      throw BudgetExceeded("refine: could not establish x1 + x2 = y1 + y2 within the rewrite bound");
  }

  if (pres->is_free()) {
    // z11 determines the rest: z12 = x1 - z11, z21 = y1 - z11, z22 = y2 - z12.
    Exponents hi(k);
    for (std::size_t i = 0; i < k; ++i)
      hi[i] = std::min({bound, x1.exponents()[i], y1.exponents()[i]});
    Exponents z11 = hi;
    std::size_t tried = 0;
    do {
      budget.require_search(++tried, "refine");
      Exponents z12(k), z21(k), z22(k);
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        z12[i] = x1.exponents()[i] - z11[i];
        z21[i] = y1.exponents()[i] - z11[i];
        // x2 - z21 and y2 - z12 agree because the sums match.
        if (x2.exponents()[i] < z21[i]) ok = false;
        else z22[i] = x2.exponents()[i] - z21[i];
        ok = ok && z12[i] <= bound && z21[i] <= bound && z22[i] <= bound;
      }
      if (ok) {
        return RefinementWitness{{{{MonoidElement(pres, z11), MonoidElement(pres, z12)},
                                   {MonoidElement(pres, z21), MonoidElement(pres, z22)}}}};
      }
    } while (step_descending(z11, hi));
    return std::nullopt;
  }

  const std::size_t per_entry = saturating_pow(static_cast<std::size_t>(bound) + 1, k);
  budget.require_search(saturating_pow(per_entry, 4), "refine");
  const Exponents hi(k, bound);
  std::array<Exponents, 4> z{hi, hi, hi, hi};
  auto eq = [](const MonoidElement& l, const MonoidElement& r) {
    return normalize_and_eq(l, r) == Equality::equal;
  };
  for (;;) {
    MonoidElement a(pres, z[0]), b(pres, z[1]), c(pres, z[2]), d(pres, z[3]);
    if (eq(a + b, x1) && eq(c + d, x2) && eq(a + c, y1) && eq(b + d, y2))
      return RefinementWitness{{{{a, b}, {c, d}}}};
    // Odometer over (z11, z12, z21, z22), z22 fastest.
    int slot = 3;
    while (slot >= 0 && !step_descending(z[slot], hi)) {
      z[slot] = hi;
      --slot;
    }
    if (slot < 0) return std::nullopt;
  }
}

bool conical_check(std::span<const MonoidElement> elements, std::size_t search_bound) {
  if (elements.empty()) return true;
  const auto& pres = elements.front().presentation();
  if (pres->is_free()) return true;  // nonnegative vectors sum to 0 only when both are 0
  const auto zero = MonoidElement::zero(pres);
  auto shown_zero = [&](const MonoidElement& x) {
    return normalize_and_eq(x, zero, search_bound) == Equality::equal;
  };
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i; j < elements.size(); ++j) {
      const auto sum = elements[i] + elements[j];
      if (normalize_and_eq(sum, zero, search_bound) != Equality::equal) continue;
      if (!shown_zero(elements[i]) || !shown_zero(elements[j])) return false;
    }
  }
  return true;
}

CancellationReport cancellation_law_check(const MonoidElement& unit,
                                          std::span<const MonoidElement> candidates,
                                          std::size_t search_bound) {
  CancellationReport report;
  const auto two_u = unit + unit;
  for (const auto& a : candidates) {
    for (const auto& b : candidates) {
      ++report.pairs_checked;
      const Equality hyp = normalize_and_eq(two_u + a, unit + b, search_bound);
      if (hyp == Equality::unequal) continue;
      const Equality concl = normalize_and_eq(unit + a, b, search_bound);
      if (hyp == Equality::equal && concl == Equality::equal) continue;
      if (hyp == Equality::equal && concl == Equality::unequal) {
        report.status = CancellationReport::Status::counterexample;
        report.pair.emplace(a, b);
        return report;
      }
      if (report.status == CancellationReport::Status::holds) {
        report.status = CancellationReport::Status::inconclusive;
        report.pair.emplace(a, b);
      }
    }
  }
  return report;
}

std::vector<MonoidElement> elements_up_to(const PresentationPtr& presentation,
                                          std::uint32_t max_exponent, const Budget& budget) {
  const std::size_t k = presentation->generator_count();
  const std::size_t count = saturating_pow(static_cast<std::size_t>(max_exponent) + 1, k);
  budget.require_search(count, "elements_up_to");
  std::vector<MonoidElement> out;
  out.reserve(count);
  Exponents v(k, 0);
  for (;;) {
    out.emplace_back(presentation, v);
    std::size_t i = k;
    while (i > 0 && v[i - 1] == max_exponent) v[--i] = 0;
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

}  // namespace refring
