#include "refring/principality.hpp"

#include <algorithm>
#include <unordered_map>

#include "refring/algebra.hpp"
#include "refring/errors.hpp"

namespace refring {

int total_degree(const Ring& ring, const Value& f) {
  if (ring.kind() == RingKind::polynomial) return poly_degree(f);
  if (ring.kind() != RingKind::bivariate) throw UnsupportedDescriptor("degree of an element of " + ring.name());
  int best = -1;
  const auto& ys = f.parts();
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const int dx = poly_degree(ys[j]);
    if (dx >= 0) best = std::max(best, dx + static_cast<int>(j));
  }
  return best;
}

std::vector<Element> bounded_degree_elements(const Ring& ring, unsigned d, const Budget& budget) {
  // Slots are (x exponent, y exponent); univariate rings use y = 0 only.
  std::vector<std::pair<unsigned, unsigned>> slots;
  Ring coeff = ring;
  if (ring.kind() == RingKind::polynomial) {
    coeff = ring.base();
    for (unsigned i = 0; i <= d; ++i) slots.emplace_back(i, 0);
  } else if (ring.kind() == RingKind::bivariate) {
    coeff = ring.base();
    for (unsigned t = 0; t <= d; ++t)
      for (unsigned y = 0; y <= t; ++y) slots.emplace_back(t - y, y);
  } else {
    throw UnsupportedDescriptor("bounded-degree enumeration needs a polynomial ring, got " + ring.name());
  }
  const std::size_t q = coeff.finite_size(budget);
  const std::size_t total = saturating_pow(q, slots.size());
  budget.require_search(total, "bounded-degree elements of " + ring.name());

  std::vector<Element> out;
  out.reserve(total);
  std::vector<std::size_t> digit(slots.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Value v;
    if (ring.kind() == RingKind::polynomial) {
      std::vector<Value> c;
      for (auto dg : digit) c.push_back(coeff.value_at(dg));
      v = Value(std::move(c));
    } else {
      std::vector<Value> ys(d + 1, Value(std::vector<Value>(d + 1, coeff.zero_value())));
      for (std::size_t s = 0; s < slots.size(); ++s)
        ys[slots[s].second].parts()[slots[s].first] = coeff.value_at(digit[s]);
      v = Value(std::move(ys));
    }
    out.push_back(ring.element(std::move(v)));
    for (std::size_t s = 0; s < digit.size(); ++s) {
      if (++digit[s] < q) break;
      digit[s] = 0;
    }
  }
  return out;
}

std::string PrincipalityVerdict::to_string() const {
  if (kind == Kind::not_principal_up_to) return "NotPrincipalUpTo(" + std::to_string(degree_bound) + ")";
  std::string s = "PrincipalWitness(" + generator->to_string() + ", {";
  for (std::size_t i = 0; i < cofactors.size(); ++i) s += (i ? ", " : "") + cofactors[i].to_string();
  return s + "})";
}

PrincipalityVerdict bounded_principality_check(const Ring& ring, const std::vector<Element>& generators, unsigned d,
                                               const Budget& budget) {
  for (const auto& f : generators) {
    require_same_ring(f.ring(), ring, "bounded_principality_check");
    if (total_degree(ring, f.value()) > static_cast<int>(d))
      throw PreconditionViolated("generator " + f.to_string() + " has degree above the bound " + std::to_string(d));
  }
  const std::vector<Element> pool = bounded_degree_elements(ring, d, budget);
  const std::size_t n = generators.size();
  budget.require_search(saturating_pow(pool.size(), n), "ideal combinations");

  // Every sum s_1 f_1 + .. + s_n f_n with the s_i from the pool, keeping the
  // first coefficient tuple reaching each value.
  std::unordered_map<Value, std::vector<std::size_t>, ValueHash> combos;
  std::vector<std::size_t> digit(n, 0);
  for (;;) {
    Value s = ring.zero_value();
    for (std::size_t i = 0; i < n; ++i) s = ring.add(s, ring.mul(pool[digit[i]].value(), generators[i].value()));
    combos.emplace(std::move(s), digit);
    std::size_t k = 0;
    while (k < n && ++digit[k] == pool.size()) digit[k++] = 0;
    if (k == n) break;
  }

  PrincipalityVerdict verdict;
  verdict.degree_bound = d;
  for (const auto& g : pool) {
    ++verdict.candidates_checked;
    const auto hit = combos.find(g.value());
    if (hit == combos.end()) continue;
    std::vector<Element> cofactors;
    for (const auto& f : generators) {
      auto c = std::find_if(pool.begin(), pool.end(), [&](const Element& x) { return g * x == f; });
      if (c == pool.end()) break;
      cofactors.push_back(*c);
    }
    if (cofactors.size() != n) continue;

    Element sum = ring.zero();
    std::vector<Element> comb;
    for (std::size_t i = 0; i < n; ++i) {
      comb.push_back(pool[hit->second[i]]);
      sum = sum + comb.back() * generators[i];
      if (!(g * cofactors[i] == generators[i])) throw std::logic_error("cofactor failed to verify");
    }
    if (!(sum == g)) throw std::logic_error("combination failed to verify");
    verdict.kind = PrincipalityVerdict::Kind::principal_witness;
    verdict.generator = g;
    verdict.cofactors = std::move(cofactors);
    verdict.combination = std::move(comb);
    return verdict;
  }
  return verdict;
}

RowReductionSearch trivial_extension_row_search(unsigned height, const Budget& budget) {
  const Ring t = Ring::trivial_extension(Ring::integers());
  const long h = static_cast<long>(height);
  std::vector<Element> entries;
  for (long x = -h; x <= h; ++x)
    for (long y = -h; y <= h; ++y)
      entries.push_back(t.element(Value(std::vector<Value>{Value(Integer(x)), Value(Integer(y))})));

  RowReductionSearch result;
  const std::size_t e = entries.size();
  budget.require_search(saturating_pow(e, 4), "T(Z,Z) row reduction search");
  const Element a = t.parse_element("(2,0)"), b = t.parse_element("(0,1)");
  const Matrix row = Matrix::from_elements(t, 1, 2, {a, b});
  for (std::size_t i12 = 0; i12 < e; ++i12)
    for (std::size_t i22 = 0; i22 < e; ++i22) {
      // The second entry of (a b) Q must vanish; checking it first prunes
      // the other two entries.
      result.candidates += e * e;
      if (!(a * entries[i12] + b * entries[i22]).is_zero()) continue;
      for (std::size_t i11 = 0; i11 < e; ++i11)
        for (std::size_t i21 = 0; i21 < e; ++i21) {
          const Element det = entries[i11] * entries[i22] - entries[i12] * entries[i21];
          const auto inv = unit_inverse(det, budget);
          if (!inv) continue;
          const Matrix q = Matrix::from_elements(t, 2, 2, {entries[i11], entries[i12], entries[i21], entries[i22]});
          const Matrix q_inv = Matrix::from_elements(
              t, 2, 2, {*inv * entries[i22], -(*inv * entries[i12]), -(*inv * entries[i21]), *inv * entries[i11]});
          const Matrix one = Matrix::identity(t, 1);
          DiagonalReduction red{one, one, q, q_inv, row * q};
          if (verify_reduction(row, red)) {
            result.found = std::move(red);
            return result;
          }
        }
    }
  return result;
}

}  // namespace refring
