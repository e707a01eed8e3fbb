#include "refring/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "refring/errors.hpp"

namespace refring {

namespace {

bool is_scalar_mod(const Ring& r) {
  return r.kind() == RingKind::modular || r.kind() == RingKind::prime_field;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r0 = n, r1 = a % n, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return ((s0 % n) + n) % n;
}

bool is_nilpotent(const Ring& r, const Value& c, const Budget& budget) {
  return r.is_zero(r.pow(c, r.finite_size(budget)));
}

// Integer extended Euclid in the iteration order that yields 12·(-1) + 18·1 = 6.
struct IntBezout {
  Integer d, s, t;
};

IntBezout integer_bezout(const Integer& a, const Integer& b) {
  if (a == 0 && b == 0) return {0, 0, 0};
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace

// -------------------------------------------------------------------- units

std::optional<Element> unit_inverse_exhaustive(const Element& a, const Budget& budget) {
  const Ring& r = a.ring();
  const std::size_t n = r.finite_size(budget);
  const Value one = r.one_value();
  for (std::size_t i = 0; i < n; ++i) {
    Value b = r.value_at(i);
    if (r.mul(a.value(), b) == one) return Element(r, std::move(b));
  }
  return std::nullopt;
}

std::optional<Element> unit_inverse(const Element& a, const Budget& budget) {
  const Ring& r = a.ring();
  const Value& v = a.value();
  switch (r.kind()) {
    case RingKind::integers:
      if (v.integer() == 1 || v.integer() == -1) return a;
      return std::nullopt;
    case RingKind::modular:
    case RingKind::prime_field: {
      const std::int64_t n = r.modulus();
      if (gcd64(v.residue(), n) != 1) return std::nullopt;
      return Element(r, Value(inverse_mod(v.residue(), n)));
    }
    case RingKind::polynomial: {
      const Ring& b = r.base();
      if (v.parts().empty()) return std::nullopt;
      if (b.is_field() || b.kind() == RingKind::integers) {
        if (v.parts().size() != 1) return std::nullopt;
        const auto c = unit_inverse(Element(b, v.parts()[0]), budget);
        if (!c) return std::nullopt;
        return Element(r, Value(std::vector<Value>{c->value()}));
      }
      if (!b.cardinality())
        throw UnsupportedDescriptor("unit test for " + r.name() + " needs a finite or field base");
      // Unit iff the constant term is a unit and every other coefficient is
      // nilpotent. Then a = u (1 + N) with N nilpotent.
      const auto u_inv = unit_inverse(Element(b, v.parts()[0]), budget);
      if (!u_inv) return std::nullopt;
      for (std::size_t i = 1; i < v.parts().size(); ++i)
        if (!is_nilpotent(b, v.parts()[i], budget)) return std::nullopt;
      const Value u_inv_poly(std::vector<Value>{u_inv->value()});
      const Value n = r.sub(r.mul(u_inv_poly, v), r.one_value());  // u^{-1} a - 1
      Value term = r.one_value();
      Value sum = r.one_value();
      for (;;) {
        term = r.neg(r.mul(term, n));
        if (r.is_zero(term)) break;
        sum = r.add(sum, term);
      }
      Element inv(r, r.mul(sum, u_inv_poly));
      if (!(inv * a).is_one()) throw std::logic_error("polynomial inverse failed to verify");
      return inv;
    }
    case RingKind::bivariate: {
      if (v.parts().size() != 1 || v.parts()[0].parts().size() != 1) return std::nullopt;
      const Ring& f = r.base();
      const Value c(inverse_mod(v.parts()[0].parts()[0].residue(), f.modulus()));
      return Element(r, Value(std::vector<Value>{Value(std::vector<Value>{c})}));
    }
    case RingKind::product: {
      std::vector<Value> parts;
      for (std::size_t i = 0; i < r.factors().size(); ++i) {
        const auto c = unit_inverse(Element(r.factors()[i], v.parts()[i]), budget);
        if (!c) return std::nullopt;
        parts.push_back(c->value());
      }
      return Element(r, Value(std::move(parts)));
    }
    case RingKind::trivial: {
      // (r, m)^{-1} = (r^{-1}, -m r^{-2})
      const Ring& b = r.base();
      const auto ri = unit_inverse(Element(b, v.parts()[0]), budget);
      if (!ri) return std::nullopt;
      const Value m = b.neg(b.mul(v.parts()[1], b.mul(ri->value(), ri->value())));
      return Element(r, Value(std::vector<Value>{ri->value(), m}));
    }
    case RingKind::quotient: return unit_inverse_exhaustive(a, budget);
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ Bézout

Bezout bezout_gcd(const Element& a, const Element& b) {
  require_same_ring(a.ring(), b.ring(), "bezout_gcd");
  const Ring& r = a.ring();
  Bezout out{r.zero(), r.zero(), r.zero()};
  if (r.kind() == RingKind::integers) {
    const auto z = integer_bezout(a.value().integer(), b.value().integer());
    out = {r.from_integer(z.d), r.from_integer(z.s), r.from_integer(z.t)};
  } else if (is_scalar_mod(r)) {
    const auto z = integer_bezout(Integer(a.value().residue()), Integer(b.value().residue()));
    out = {r.from_integer(z.d), r.from_integer(z.s), r.from_integer(z.t)};
  } else if (r.is_euclidean()) {
    if (a.is_zero() && b.is_zero()) return out;
    Value old_r = a.value(), rr = b.value();
    Value old_s = r.one_value(), s = r.zero_value();
    Value old_t = r.zero_value(), t = r.one_value();
    while (!r.is_zero(rr)) {
      auto [q, rem] = r.divmod(old_r, rr);
      old_r = std::exchange(rr, rem);
      old_s = std::exchange(s, r.sub(old_s, r.mul(q, s)));
      old_t = std::exchange(t, r.sub(old_t, r.mul(q, t)));
    }
    const Value u = r.normalizing_unit(old_r);
    out = {Element(r, r.mul(u, old_r)), Element(r, r.mul(u, old_s)), Element(r, r.mul(u, old_t))};
  } else {
    throw UnsupportedDescriptor("bezout_gcd is not available over " + r.name());
  }
  if (!(out.s * a + out.t * b == out.d)) throw std::logic_error("Bézout identity failed to verify");
  return out;
}

// -------------------------------------------------------------- idempotents

std::vector<Element> idempotents(const Ring& ring, const Budget& budget) {
  std::vector<Element> out;
  const std::size_t n = ring.finite_size(budget);
  for (std::size_t i = 0; i < n; ++i) {
    Value e = ring.value_at(i);
    if (ring.mul(e, e) == e) out.emplace_back(ring, std::move(e));
  }
  return out;
}

Ideal principal_ideal(const Element& a, const Budget& budget) {
  const Ring& r = a.ring();
  const std::size_t n = r.finite_size(budget);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) hit[r.index_of(r.mul(a.value(), r.value_at(i)))] = true;
  Ideal out;
  for (std::size_t i = 0; i < n; ++i)
    if (hit[i]) out.emplace_back(r, r.value_at(i));
  return out;
}

IdempotentBasis::IdempotentBasis(Ring ring, std::vector<Element> idempotents_list, const Budget& budget)
    : ring_(std::move(ring)), elements_(std::move(idempotents_list)) {
  Element sum = ring_.zero();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Element& e = elements_[i];
    require_same_ring(e.ring(), ring_, "IdempotentBasis");
    if (!(e * e == e)) throw PreconditionViolated(e.to_string() + " is not idempotent");
    if (e.is_zero()) throw PreconditionViolated("a basis idempotent must be nonzero");
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (!(e * elements_[j]).is_zero())
        throw PreconditionViolated(e.to_string() + " and " + elements_[j].to_string() + " are not orthogonal");
    sum = sum + e;
  }
  if (!sum.is_one()) throw PreconditionViolated("basis idempotents do not sum to 1");
  const auto all = idempotents(ring_, budget);
  for (const auto& e : elements_) {
    for (const auto& f : all) {
      if (f.is_zero() || f == e) continue;
      if (f * e == f) throw PreconditionViolated(e.to_string() + " is not primitive");
    }
  }
}

IdempotentBasis primitive_idempotent_decomposition(const Ring& ring, const Budget& budget) {
  const auto all = idempotents(ring, budget);
  struct Entry {
    Element e;
    std::size_t ideal_size;
    std::size_t index;
  };
  std::vector<Entry> prim;
  for (const auto& e : all) {
    if (e.is_zero()) continue;
    bool primitive = true;
    for (const auto& f : all) {
      if (f.is_zero() || f == e) continue;
      if (f * e == f) {
        primitive = false;
        break;
      }
    }
    if (primitive) prim.push_back({e, principal_ideal(e, budget).size(), ring.index_of(e.value())});
  }
  std::sort(prim.begin(), prim.end(), [](const Entry& l, const Entry& r) {
    return l.ideal_size != r.ideal_size ? l.ideal_size < r.ideal_size : l.index < r.index;
  });
  std::vector<Element> basis;
  for (auto& p : prim) basis.push_back(std::move(p.e));
  return IdempotentBasis(ring, std::move(basis), budget);
}

// ---------------------------------------------------- radical and maximals

JacobsonQuotient jacobson_radical_and_quotient(const Ring& ring, const Budget& budget) {
  const std::size_t n = ring.finite_size(budget);
  std::vector<Value> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) elems.push_back(ring.value_at(i));
  const Value one = ring.one_value();
  std::vector<bool> unit(n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n && !unit[i]; ++j)
      if (ring.mul(elems[i], elems[j]) == one) unit[i] = true;

  Ideal radical;
  for (std::size_t i = 0; i < n; ++i) {
    bool in = true;
    for (std::size_t j = 0; j < n && in; ++j)
      in = unit[ring.index_of(ring.sub(one, ring.mul(elems[j], elems[i])))];
    if (in) radical.emplace_back(ring, elems[i]);
  }

  RingHomomorphism proj = Ring::quotient(ring, radical);
  if (n <= 256) {
    const Ring& q = proj.target;
    const std::size_t qn = q.finite_size(budget);
    std::vector<bool> covered(qn, false);
    std::size_t kernel = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Value pi = proj.map(elems[i]);
      covered[q.index_of(pi)] = true;
      if (q.is_zero(pi)) ++kernel;
      for (std::size_t j = 0; j < n; ++j) {
        const Value pj = proj.map(elems[j]);
        if (!(proj.map(ring.add(elems[i], elems[j])) == q.add(pi, pj)) ||
            !(proj.map(ring.mul(elems[i], elems[j])) == q.mul(pi, pj)))
          throw std::logic_error("projection onto R/J(R) is not a homomorphism");
      }
    }
    if (!(proj.map(one) == q.one_value())) throw std::logic_error("projection does not preserve 1");
    if (std::find(covered.begin(), covered.end(), false) != covered.end())
      throw std::logic_error("projection onto R/J(R) is not surjective");
    if (kernel != radical.size()) throw std::logic_error("kernel of the projection differs from J(R)");
  }
  return JacobsonQuotient{std::move(radical), std::move(proj)};
}

std::vector<Ideal> maximal_ideals(const Ring& ring, const Budget& budget) {
  const auto basis = primitive_idempotent_decomposition(ring, budget);
  const std::size_t n = ring.finite_size(budget);
  std::vector<Ideal> out;
  for (const auto& e : basis.elements()) {
    std::vector<bool> member(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const Value ex = ring.mul(e.value(), ring.value_at(i));
      bool unit = false;
      for (std::size_t j = 0; j < n && !unit; ++j) unit = ring.mul(ex, ring.value_at(j)) == e.value();
      member[i] = !unit;
    }
    Ideal ideal;
    for (std::size_t i = 0; i < n; ++i)
      if (member[i]) ideal.emplace_back(ring, ring.value_at(i));
    for (const auto& x : ideal) {
      for (const auto& y : ideal)
        if (!member[ring.index_of(ring.add(x.value(), y.value()))])
          throw std::logic_error("maximal ideal not closed under addition");
      for (std::size_t j = 0; j < n; ++j)
        if (!member[ring.index_of(ring.mul(x.value(), ring.value_at(j)))])
          throw std::logic_error("maximal ideal not closed under multiplication");
    }
    out.push_back(std::move(ideal));
  }
  return out;
}

// --------------------------------------------------------------- regularity

namespace {

std::optional<Element> regular_brute_force(const Element& a, const Budget& budget) {
  const Ring& r = a.ring();
  const std::size_t n = r.finite_size(budget);
  for (std::size_t i = 0; i < n; ++i) {
    Value g = r.value_at(i);
    if (r.mul(r.mul(a.value(), g), a.value()) == a.value()) return Element(r, std::move(g));
  }
  return std::nullopt;
}

bool has_structural_regularity(const Ring& r) {
  switch (r.kind()) {
    case RingKind::integers:
    case RingKind::modular:
    case RingKind::prime_field: return true;
    case RingKind::polynomial: return r.base().is_field();
    case RingKind::product:
      return std::all_of(r.factors().begin(), r.factors().end(), has_structural_regularity);
    default: return false;
  }
}

std::optional<Element> regular_structural(const Element& a, const Budget& budget) {
  const Ring& r = a.ring();
  const Value& v = a.value();
  switch (r.kind()) {
    case RingKind::integers:
      // In a domain a(ga - 1) = 0 forces a = 0 or a unit.
      if (v.integer() == 0 || v.integer() == 1 || v.integer() == -1) return a;
      return std::nullopt;
    case RingKind::modular:
    case RingKind::prime_field: {
      const std::int64_t n = r.modulus();
      const std::int64_t x = v.residue();
      if (x == 0) return r.zero();
      const std::int64_t d = gcd64(x, n);
      const std::int64_t m = n / d;
      if (gcd64(d, m) != 1) return std::nullopt;
      if (m == 1) return r.zero();
      // g = a^{-1} mod m, g = 0 mod d.
      const std::int64_t inv = inverse_mod(x % m, m);
      const std::int64_t lift = static_cast<std::int64_t>(
          static_cast<__int128>(d) * (static_cast<__int128>(inverse_mod(d % m, m)) * inv % m) % n);
      return Element(r, Value(lift));
    }
    case RingKind::polynomial:
      if (a.is_zero()) return a;
      return unit_inverse(a, budget);
    case RingKind::product: {
      std::vector<Value> parts;
      for (std::size_t i = 0; i < r.factors().size(); ++i) {
        const auto g = regular_structural(Element(r.factors()[i], v.parts()[i]), budget);
        if (!g) return std::nullopt;
        parts.push_back(g->value());
      }
      return Element(r, Value(std::move(parts)));
    }
    default: throw UnsupportedDescriptor("no structural regularity criterion for " + r.name());
  }
}

}  // namespace

std::optional<Element> regular_witness(const Element& a, RegularityMethod method, const Budget& budget) {
  std::optional<Element> g;
  switch (method) {
    case RegularityMethod::brute_force: g = regular_brute_force(a, budget); break;
    case RegularityMethod::structural: g = regular_structural(a, budget); break;
    case RegularityMethod::automatic:
      g = has_structural_regularity(a.ring()) ? regular_structural(a, budget) : regular_brute_force(a, budget);
      break;
  }
  if (g && !(a * *g * a == a)) throw std::logic_error("regularity witness failed to verify");
  return g;
}

}  // namespace refring
