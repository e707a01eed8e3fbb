#include "refring/module.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "refring/errors.hpp"

namespace refring {

// ------------------------------------------------------------ projective

ProjectiveModule::ProjectiveModule(BasisPtr basis, std::vector<std::uint32_t> multiplicities)
    : basis_(std::move(basis)), t_(std::move(multiplicities)) {
  if (!basis_) throw PreconditionViolated("projective module needs an idempotent basis");
  if (t_.size() != basis_->size())
    throw PreconditionViolated("multiplicity vector has length " + std::to_string(t_.size()) + ", basis has " +
                               std::to_string(basis_->size()) + " idempotents");
}

ProjectiveModule ProjectiveModule::free(BasisPtr basis, std::uint32_t rank) {
  const std::size_t k = basis->size();
  return ProjectiveModule(std::move(basis), std::vector<std::uint32_t>(k, rank));
}

bool ProjectiveModule::is_zero() const {
  return std::all_of(t_.begin(), t_.end(), [](auto x) { return x == 0; });
}

ProjectiveModule ProjectiveModule::operator+(const ProjectiveModule& other) const {
  require_same_ring(ring(), other.ring(), "direct sum");
  std::vector<std::uint32_t> t(t_);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += other.t_[i];
  return ProjectiveModule(basis_, std::move(t));
}

std::size_t ProjectiveModule::cardinality() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t_.size(); ++i)
    n = saturating_mul(n, saturating_pow(principal_ideal((*basis_)[i]).size(), t_[i]));
  return n;
}

std::string ProjectiveModule::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < t_.size(); ++i) s += (i ? "," : "") + std::to_string(t_[i]);
  return s + ")";
}

MonoidElement ProjectiveMonoid::unit() const {
  return MonoidElement(presentation, Exponents(basis->size(), 1));
}

MonoidElement ProjectiveMonoid::class_of(const ProjectiveModule& m) const {
  require_same_ring(m.ring(), basis->ring(), "projective monoid class");
  return MonoidElement(presentation, m.multiplicities());
}

ProjectiveModule ProjectiveMonoid::module_of(const MonoidElement& x) const {
  if (x.presentation() != presentation) throw DescriptorMismatch("element of a different monoid");
  return ProjectiveModule(basis, x.exponents());
}

ProjectiveMonoid projective_monoid(const Ring& ring, const Budget& budget) {
  auto basis = std::make_shared<const IdempotentBasis>(primitive_idempotent_decomposition(ring, budget));
  if (basis->size() == 0) throw PreconditionViolated("the zero ring has no projective monoid generators");
  return ProjectiveMonoid{MonoidPresentation::free(basis->size()), std::move(basis)};
}

// ------------------------------------------------------------ finite

namespace {

std::string format_tuple(const Ring& r, const Value& v) {
  std::string s = "(";
  const auto& parts = v.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + r.format(parts[i]);
  return s + ")";
}

Value tuple_add(const Ring& r, const Value& a, const Value& b) {
  std::vector<Value> out(a.parts().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.add(a.parts()[i], b.parts()[i]);
  return Value(std::move(out));
}

Value tuple_scale(const Ring& r, const Value& c, const Value& a) {
  std::vector<Value> out(a.parts().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.mul(c, a.parts()[i]);
  return Value(std::move(out));
}

std::vector<Value> all_tuples(const Ring& r, std::size_t rank, const Budget& budget) {
  const std::size_t q = r.finite_size(budget);
  const std::size_t n = saturating_pow(q, rank);
  if (n > kMaxCarrier) throw BudgetExceeded("R^" + std::to_string(rank) + " over " + r.name() + " has " +
                                            std::to_string(n) + " elements, above the carrier limit");
  budget.require_cardinality(n, "free module carrier");
  std::vector<Value> out;
  out.reserve(n);
  std::vector<std::size_t> digit(rank, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Value> t(rank);
    for (std::size_t k = 0; k < rank; ++k) t[k] = r.value_at(digit[k]);
    out.emplace_back(std::move(t));
    for (std::size_t k = rank; k-- > 0;) {
      if (++digit[k] < q) break;
      digit[k] = 0;
    }
  }
  return out;
}

}  // namespace

FiniteModule::FiniteModule(Ring ring, std::vector<Value> labels, std::vector<ModIndex> add,
                           std::vector<ModIndex> scale, ModIndex zero, Formatter formatter)
    : ring_(std::move(ring)),
      labels_(std::move(labels)),
      add_(std::move(add)),
      scale_(std::move(scale)),
      zero_(zero),
      formatter_(std::move(formatter)) {
  if (labels_.size() <= 512) spot_check();
}

FiniteModule FiniteModule::build(const Ring& ring, std::vector<Value> labels,
                                 const std::function<Value(const Value&, const Value&)>& add,
                                 const std::function<Value(const Value&, const Value&)>& scale, Formatter formatter,
                                 const char* what) {
  const std::size_t n = labels.size();
  if (n > kMaxCarrier) throw BudgetExceeded(std::string(what) + ": carrier above the limit");
  const std::size_t q = ring.finite_size();
  std::unordered_map<Value, ModIndex, ValueHash> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(labels[i], static_cast<ModIndex>(i)).second)
      throw PreconditionViolated(std::string(what) + ": repeated carrier element");
  auto lookup = [&](const Value& v) {
    auto it = index.find(v);
    if (it == index.end()) throw PreconditionViolated(std::string(what) + ": carrier is not closed");
    return it->second;
  };
  std::vector<ModIndex> add_table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      add_table[i * n + j] = add_table[j * n + i] = lookup(add(labels[i], labels[j]));
  std::vector<ModIndex> scale_table(q * n);
  for (std::size_t r = 0; r < q; ++r) {
    const Value c = ring.value_at(r);
    for (std::size_t i = 0; i < n; ++i) scale_table[r * n + i] = lookup(scale(c, labels[i]));
  }
  const ModIndex zero = scale_table[ring.index_of(ring.zero_value()) * n + 0];
  return FiniteModule(ring, std::move(labels), std::move(add_table), std::move(scale_table), zero,
                      std::move(formatter));
}

void FiniteModule::spot_check() const {
  const std::size_t n = size();
  const std::size_t q = ring_.finite_size();
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1), scal(0, q - 1);
  const std::size_t one = ring_.index_of(ring_.one_value());
  auto fail = [](const char* law) { throw std::logic_error(std::string("module table violates ") + law); };
  for (int it = 0; it < 1000; ++it) {
    const auto x = static_cast<ModIndex>(pick(rng)), y = static_cast<ModIndex>(pick(rng)),
               z = static_cast<ModIndex>(pick(rng));
    const std::size_t r = scal(rng), s = scal(rng);
    if (add(x, y) != add(y, x)) fail("commutativity");
    if (add(add(x, y), z) != add(x, add(y, z))) fail("associativity");
    if (add(x, zero_) != x) fail("the zero law");
    if (scale(one, x) != x) fail("the unit law");
    if (scale(r, add(x, y)) != add(scale(r, x), scale(r, y))) fail("distributivity over elements");
    const std::size_t rs = ring_.index_of(ring_.add(ring_.value_at(r), ring_.value_at(s)));
    if (scale(rs, x) != add(scale(r, x), scale(s, x))) fail("distributivity over scalars");
    const std::size_t rm = ring_.index_of(ring_.mul(ring_.value_at(r), ring_.value_at(s)));
    if (scale(rm, x) != scale(r, scale(s, x))) fail("scalar associativity");
  }
}

FiniteModule FiniteModule::free(const Ring& ring, std::size_t rank, const Budget& budget) {
  return build(
      ring, all_tuples(ring, rank, budget), [&](const Value& a, const Value& b) { return tuple_add(ring, a, b); },
      [&](const Value& c, const Value& a) { return tuple_scale(ring, c, a); },
      [ring](const Value& v) { return format_tuple(ring, v); }, "free module");
}

FiniteModule FiniteModule::submodule_of_free(const Ring& ring, std::size_t, std::vector<std::vector<Value>> tuples,
                                             const Budget& budget) {
  budget.require_cardinality(tuples.size(), "submodule carrier");
  std::vector<Value> labels;
  labels.reserve(tuples.size());
  for (auto& t : tuples) labels.emplace_back(std::move(t));
  return build(
      ring, std::move(labels), [&](const Value& a, const Value& b) { return tuple_add(ring, a, b); },
      [&](const Value& c, const Value& a) { return tuple_scale(ring, c, a); },
      [ring](const Value& v) { return format_tuple(ring, v); }, "submodule");
}

FiniteModule FiniteModule::from_ideal(const Ring& ring, const Ideal& ideal, const Budget& budget) {
  budget.require_cardinality(ideal.size(), "ideal carrier");
  std::vector<Value> labels;
  for (const auto& e : ideal) {
    require_same_ring(e.ring(), ring, "ideal module");
    labels.push_back(e.value());
  }
  return build(
      ring, std::move(labels), [&](const Value& a, const Value& b) { return ring.add(a, b); },
      [&](const Value& c, const Value& a) { return ring.mul(c, a); },
      [ring](const Value& v) { return ring.format(v); }, "ideal");
}

FiniteModule FiniteModule::ring_quotient(const Ring& ring, const Ideal& ideal, const Budget& budget) {
  const FiniteModule r = from_ideal(ring, ring.elements(budget), budget);
  std::vector<ModIndex> members;
  for (const auto& e : ideal) members.push_back(static_cast<ModIndex>(ring.index_of(e.value())));
  return r.quotient(members);
}

FiniteModule FiniteModule::direct_sum(const FiniteModule& a, const FiniteModule& b, const Budget& budget) {
  require_same_ring(a.ring(), b.ring(), "direct sum");
  const std::size_t na = a.size(), nb = b.size(), n = saturating_mul(na, nb);
  if (n > kMaxCarrier) throw BudgetExceeded("direct sum has " + std::to_string(n) + " elements, above the limit");
  budget.require_cardinality(n, "direct sum carrier");
  const std::size_t q = a.ring().finite_size();
  std::vector<Value> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) labels.emplace_back(std::vector<Value>{a.labels_[i], b.labels_[j]});
  std::vector<ModIndex> add(n * n), scale(q * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      add[x * n + y] = static_cast<ModIndex>(
          a.add(static_cast<ModIndex>(x / nb), static_cast<ModIndex>(y / nb)) * nb +
          b.add(static_cast<ModIndex>(x % nb), static_cast<ModIndex>(y % nb)));
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t x = 0; x < n; ++x)
      scale[r * n + x] = static_cast<ModIndex>(a.scale(r, static_cast<ModIndex>(x / nb)) * nb +
                                               b.scale(r, static_cast<ModIndex>(x % nb)));
  const ModIndex zero = static_cast<ModIndex>(a.zero_ * nb + b.zero_);
  auto fa = a.formatter_, fb = b.formatter_;
  return FiniteModule(a.ring(), std::move(labels), std::move(add), std::move(scale), zero,
                      [fa, fb](const Value& v) { return "(" + fa(v.parts()[0]) + ", " + fb(v.parts()[1]) + ")"; });
}

FiniteModule FiniteModule::direct_sum(std::span<const FiniteModule> parts, const Ring& ring, const Budget& budget) {
  if (parts.empty()) return free(ring, 0, budget);
  FiniteModule acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i], budget);
  return acc;
}

FiniteModule FiniteModule::submodule(std::vector<ModIndex> members) const {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const std::size_t n = members.size(), q = ring_.finite_size();
  std::vector<ModIndex> local(size(), static_cast<ModIndex>(-1));
  for (std::size_t i = 0; i < n; ++i) local[members[i]] = static_cast<ModIndex>(i);
  auto at = [&](ModIndex x) {
    if (local[x] == static_cast<ModIndex>(-1)) throw PreconditionViolated("subset is not a submodule");
    return local[x];
  };
  if (n == 0) throw PreconditionViolated("a submodule contains zero");
  std::vector<Value> labels;
  for (auto x : members) labels.push_back(labels_[x]);
  std::vector<ModIndex> add(n * n), scale(q * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) add[i * n + j] = at(this->add(members[i], members[j]));
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t i = 0; i < n; ++i) scale[r * n + i] = at(this->scale(r, members[i]));
  return FiniteModule(ring_, std::move(labels), std::move(add), std::move(scale), at(zero_), formatter_);
}

FiniteModule FiniteModule::quotient(const std::vector<ModIndex>& members) const {
  const FiniteModule sub = submodule(members);  // closure check
  (void)sub;
  const std::size_t n = size(), q = ring_.finite_size();
  constexpr ModIndex kUnset = static_cast<ModIndex>(-1);
  std::vector<ModIndex> cls(n, kUnset);
  std::vector<ModIndex> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] != kUnset) continue;
    const auto c = static_cast<ModIndex>(reps.size());
    reps.push_back(static_cast<ModIndex>(x));
    for (auto s : members) cls[add(static_cast<ModIndex>(x), s)] = c;
  }
  const std::size_t k = reps.size();
  std::vector<Value> labels;
  for (auto r : reps) labels.push_back(labels_[r]);
  std::vector<ModIndex> add_t(k * k), scale_t(q * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) add_t[i * k + j] = cls[add(reps[i], reps[j])];
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t i = 0; i < k; ++i) scale_t[r * k + i] = cls[scale(r, reps[i])];
  auto f = formatter_;
  return FiniteModule(ring_, std::move(labels), std::move(add_t), std::move(scale_t), cls[zero_],
                      [f](const Value& v) { return f(v) + "+N"; });
}

FiniteModule FiniteModule::scalar_image(const Element& r) const {
  require_same_ring(r.ring(), ring_, "scalar image");
  const std::size_t ri = ring_.index_of(r.value());
  std::vector<ModIndex> members;
  for (std::size_t x = 0; x < size(); ++x) members.push_back(scale(ri, static_cast<ModIndex>(x)));
  return submodule(std::move(members));
}

std::string FiniteModule::format(ModIndex x) const { return formatter_(labels_[x]); }

ModIndex FiniteModule::scale(const Element& r, ModIndex x) const {
  require_same_ring(r.ring(), ring_, "scalar action");
  return scale(ring_.index_of(r.value()), x);
}

std::optional<ModIndex> FiniteModule::find(const Value& label) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (labels_[i] == label) return static_cast<ModIndex>(i);
  return std::nullopt;
}

std::vector<std::size_t> FiniteModule::annihilator_of(ModIndex x) const {
  std::vector<std::size_t> out;
  const std::size_t q = ring_.finite_size();
  for (std::size_t r = 0; r < q; ++r)
    if (scale(r, x) == zero_) out.push_back(r);
  return out;
}

Ideal FiniteModule::annihilator() const {
  Ideal out;
  const std::size_t q = ring_.finite_size();
  for (std::size_t r = 0; r < q; ++r) {
    bool kills = true;
    for (std::size_t x = 0; x < size() && kills; ++x) kills = scale(r, static_cast<ModIndex>(x)) == zero_;
    if (kills) out.emplace_back(ring_, ring_.value_at(r));
  }
  return out;
}

std::vector<ModIndex> FiniteModule::cyclic_submodule(ModIndex x) const {
  std::vector<ModIndex> out;
  const std::size_t q = ring_.finite_size();
  for (std::size_t r = 0; r < q; ++r) out.push_back(scale(r, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ModIndex> FiniteModule::sum(const std::vector<ModIndex>& a, const std::vector<ModIndex>& b) const {
  std::vector<bool> seen(size(), false);
  for (auto x : a)
    for (auto y : b) seen[add(x, y)] = true;
  std::vector<ModIndex> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (seen[i]) out.push_back(static_cast<ModIndex>(i));
  return out;
}

std::string FiniteModule::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < size(); ++i) s += (i ? ", " : "") + format(static_cast<ModIndex>(i));
  return s + "}";
}

FiniteModule to_finite_module(const ProjectiveModule& m, const Budget& budget) {
  const Ring& r = m.ring();
  std::vector<Ideal> slots;
  for (std::size_t i = 0; i < m.basis()->size(); ++i)
    for (std::uint32_t k = 0; k < m.multiplicities()[i]; ++k) slots.push_back(principal_ideal((*m.basis())[i]));
  std::size_t n = 1;
  for (const auto& s : slots) n = saturating_mul(n, s.size());
  if (n > kMaxCarrier) throw BudgetExceeded("projective module " + m.to_string() + " has too many elements");
  budget.require_cardinality(n, "projective module carrier");
  std::vector<std::vector<Value>> tuples;
  std::vector<std::size_t> digit(slots.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Value> t;
    for (std::size_t k = 0; k < slots.size(); ++k) t.push_back(slots[k][digit[k]].value());
    tuples.push_back(std::move(t));
    for (std::size_t k = slots.size(); k-- > 0;) {
      if (++digit[k] < slots[k].size()) break;
      digit[k] = 0;
    }
  }
  return FiniteModule::submodule_of_free(r, slots.size(), std::move(tuples), budget);
}

// ------------------------------------------------------------ localization

namespace {

std::string format_ideal(const Ideal& ideal) {
  std::string s = "{";
  for (std::size_t i = 0; i < ideal.size(); ++i) s += (i ? ", " : "") + ideal[i].to_string();
  return s + "}";
}

RingHomomorphism factor_map(const Element& e, const Budget& budget) {
  const Ideal complement = principal_ideal(e.ring().one() - e, budget);
  return Ring::quotient(e.ring(), complement);
}

// Primitive idempotents of R that survive in the factor, listed in the
// factor's own basis order.
std::vector<std::size_t> surviving_coordinates(const IdempotentBasis& source, const RingHomomorphism& hom,
                                               const IdempotentBasis& local) {
  std::vector<std::size_t> out;
  for (const auto& eps : local.elements()) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < source.size(); ++i)
      if (hom(source[i]) == eps) hit = i;
    if (!hit) throw std::logic_error("local idempotent is not the image of a primitive idempotent");
    out.push_back(*hit);
  }
  return out;
}

}  // namespace

LocalizedView localize_at_maximal(const ProjectiveModule& m, std::size_t ideal_index, const Budget& budget) {
  const Ring& r = m.ring();
  const IdempotentBasis& basis = *m.basis();
  if (ideal_index >= basis.size()) throw PreconditionViolated("no maximal ideal with index " + std::to_string(ideal_index));
  const std::vector<Ideal> maximal = maximal_ideals(r, budget);
  const Ideal& p = maximal[ideal_index];
  const Element e = basis[ideal_index];
  RingHomomorphism hom = factor_map(e, budget);

  std::vector<bool> in_p(r.finite_size(budget), false);
  for (const auto& x : p) in_p[r.index_of(x.value())] = true;
  for (const auto& s : r.elements(budget))
    if (!in_p[r.index_of(s.value())] && !is_unit(hom(s), budget))
      throw std::logic_error("element outside the maximal ideal is not inverted");

  auto local_basis = std::make_shared<const IdempotentBasis>(primitive_idempotent_decomposition(hom.target, budget));
  if (local_basis->size() != 1) throw std::logic_error("localization at a maximal ideal is not local");
  ProjectiveModule local = ProjectiveModule::free(local_basis, m.multiplicities()[ideal_index]);
  return LocalizedView{"maximal ideal #" + std::to_string(ideal_index) + " " + format_ideal(p), e, std::move(hom),
                       std::move(local), std::nullopt};
}

LocalizedView localize_at_maximal(const ProjectiveModule& m, const Ideal& ideal, const Budget& budget) {
  std::vector<Value> want;
  for (const auto& x : ideal) {
    require_same_ring(x.ring(), m.ring(), "localize_at_maximal");
    want.push_back(x.value());
  }
  std::sort(want.begin(), want.end(), [&](const Value& a, const Value& b) {
    return m.ring().index_of(a) < m.ring().index_of(b);
  });
  want.erase(std::unique(want.begin(), want.end()), want.end());
  const auto maximal = maximal_ideals(m.ring(), budget);
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    std::vector<Value> have;
    for (const auto& x : maximal[i]) have.push_back(x.value());
    if (have == want) return localize_at_maximal(m, i, budget);
  }
  throw PreconditionViolated(format_ideal(ideal) + " is not a maximal ideal of " + m.ring().name());
}

Element idempotent_power(const Element& f) {
  const std::size_t n = f.ring().finite_size();
  Element p = f;
  for (std::size_t k = 0; k <= n; ++k) {
    if (p * p == p) return p;
    p = p * f;
  }
  throw std::logic_error("no idempotent power found");
}

LocalizedView localize_at_element(const ProjectiveModule& m, const Element& f, const Budget& budget) {
  require_same_ring(f.ring(), m.ring(), "localize_at_element");
  const Element e = idempotent_power(f);
  RingHomomorphism hom = factor_map(e, budget);
  if (!is_unit(hom(f), budget)) throw std::logic_error("localized element is not a unit");
  auto local_basis = std::make_shared<const IdempotentBasis>(primitive_idempotent_decomposition(hom.target, budget));
  const auto coords = surviving_coordinates(*m.basis(), hom, *local_basis);
  std::vector<std::uint32_t> t;
  for (auto i : coords) t.push_back(m.multiplicities()[i]);
  ProjectiveModule local(local_basis, std::move(t));
  return LocalizedView{"element " + f.to_string(), e, std::move(hom), std::move(local), std::nullopt};
}

LocalizedView localize_at_element(const FiniteModule& m, const Element& f, const Budget& budget) {
  require_same_ring(f.ring(), m.ring(), "localize_at_element");
  const Element e = idempotent_power(f);
  RingHomomorphism hom = factor_map(e, budget);
  if (!is_unit(hom(f), budget)) throw std::logic_error("localized element is not a unit");
  FiniteModule em = m.scalar_image(e);
  std::vector<bool> hit(em.size(), false);
  for (std::size_t x = 0; x < em.size(); ++x) {
    const ModIndex y = em.scale(f, static_cast<ModIndex>(x));
    if (hit[y]) throw std::logic_error("localized element does not act invertibly");
    hit[y] = true;
  }
  return LocalizedView{"element " + f.to_string(), e, std::move(hom), std::nullopt, std::move(em)};
}

// ------------------------------------------------------------ isomorphism

bool module_iso(const ProjectiveModule& a, const ProjectiveModule& b) {
  require_same_ring(a.ring(), b.ring(), "module_iso");
  return a.multiplicities() == b.multiplicities();
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const FiniteModule& a, const FiniteModule& b, const Budget& budget)
      : a_(a), b_(b), budget_(budget), q_(a.ring().finite_size()) {}

  std::optional<std::vector<ModIndex>> run() {
    choose_generators();
    for (auto g : gens_) {
      std::vector<ModIndex> cands;
      const auto ann = a_.annihilator_of(g);
      for (std::size_t y = 0; y < b_.size(); ++y)
        if (b_.annihilator_of(static_cast<ModIndex>(y)) == ann) cands.push_back(static_cast<ModIndex>(y));
      candidates_.push_back(std::move(cands));
    }
    images_.assign(gens_.size(), 0);
    if (!assign(0)) return std::nullopt;
    return phi_;
  }

 private:
  void choose_generators() {
    std::vector<ModIndex> order(a_.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> cyc(a_.size());
    for (std::size_t x = 0; x < a_.size(); ++x) cyc[x] = a_.cyclic_submodule(static_cast<ModIndex>(x)).size();
    std::stable_sort(order.begin(), order.end(), [&](ModIndex x, ModIndex y) { return cyc[x] > cyc[y]; });
    std::vector<ModIndex> span{a_.zero()};
    std::vector<bool> in_span(a_.size(), false);
    in_span[a_.zero()] = true;
    for (auto x : order) {
      if (span.size() == a_.size()) break;
      if (in_span[x]) continue;
      gens_.push_back(x);
      span = a_.sum(span, a_.cyclic_submodule(x));
      std::fill(in_span.begin(), in_span.end(), false);
      for (auto s : span) in_span[s] = true;
    }
  }

  // Extends 0 -> 0 along x -> x + r g_i for the first `count` generators.
  bool propagate(std::size_t count) {
    constexpr ModIndex kUnset = static_cast<ModIndex>(-1);
    phi_.assign(a_.size(), kUnset);
    std::vector<bool> used(b_.size(), false);
    phi_[a_.zero()] = b_.zero();
    used[b_.zero()] = true;
    std::deque<ModIndex> queue{a_.zero()};
    while (!queue.empty()) {
      const ModIndex x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t r = 0; r < q_; ++r) {
          const ModIndex y = a_.add(x, a_.scale(r, gens_[i]));
          const ModIndex img = b_.add(phi_[x], b_.scale(r, images_[i]));
          if (phi_[y] == kUnset) {
            if (used[img]) return false;
            phi_[y] = img;
            used[img] = true;
            queue.push_back(y);
          } else if (phi_[y] != img) {
            return false;
          }
        }
    }
    return true;
  }

  bool assign(std::size_t depth) {
    if (depth == gens_.size()) return propagate(depth) && verify();
    for (auto y : candidates_[depth]) {
      if (++tried_ > budget_.search)
        throw BudgetExceeded("module isomorphism search exceeded " + std::to_string(budget_.search) +
                             " candidate maps");
      images_[depth] = y;
      if (propagate(depth + 1) && assign(depth + 1)) return true;
    }
    return false;
  }

  bool verify() const {
    for (std::size_t x = 0; x < a_.size(); ++x) {
      const auto xi = static_cast<ModIndex>(x);
      for (std::size_t y = 0; y < a_.size(); ++y) {
        const auto yi = static_cast<ModIndex>(y);
        if (phi_[a_.add(xi, yi)] != b_.add(phi_[xi], phi_[yi])) return false;
      }
      for (std::size_t r = 0; r < q_; ++r)
        if (phi_[a_.scale(r, xi)] != b_.scale(r, phi_[xi])) return false;
    }
    return true;
  }

  const FiniteModule& a_;
  const FiniteModule& b_;
  const Budget& budget_;
  std::size_t q_;
  std::vector<ModIndex> gens_;
  std::vector<std::vector<ModIndex>> candidates_;
  std::vector<ModIndex> images_;
  std::vector<ModIndex> phi_;
  std::size_t tried_ = 0;
};

std::vector<std::vector<std::size_t>> annihilator_profile(const FiniteModule& m) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t x = 0; x < m.size(); ++x) out.push_back(m.annihilator_of(static_cast<ModIndex>(x)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<ModIndex>> find_module_iso(const FiniteModule& a, const FiniteModule& b,
                                                     const Budget& budget) {
  require_same_ring(a.ring(), b.ring(), "module_iso");
  if (a.size() != b.size()) return std::nullopt;
  if (annihilator_profile(a) != annihilator_profile(b)) return std::nullopt;
  return IsoSearch(a, b, budget).run();
}

// ------------------------------------------------------------ ker / im / coker

KernelImageCokernel kernel_image_cokernel(const Matrix& f, const Budget& budget) {
  const Ring& r = f.ring();
  const std::size_t m = f.rows(), n = f.cols();
  const auto domain = all_tuples(r, n, budget);
  const FiniteModule target = FiniteModule::free(r, m, budget);
  std::vector<std::vector<Value>> kernel;
  std::vector<bool> in_image(target.size(), false);
  for (const auto& x : domain) {
    std::vector<Value> y(m, r.zero_value());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] = r.add(y[i], r.mul(f.value(i, j), x.parts()[j]));
    if (std::all_of(y.begin(), y.end(), [&](const Value& v) { return r.is_zero(v); })) kernel.push_back(x.parts());
    in_image[*target.find(Value(y))] = true;
  }
  std::vector<ModIndex> image_members;
  std::vector<std::vector<Value>> image;
  for (std::size_t i = 0; i < target.size(); ++i)
    if (in_image[i]) {
      image_members.push_back(static_cast<ModIndex>(i));
      image.push_back(target.label(static_cast<ModIndex>(i)).parts());
    }
  if (saturating_mul(kernel.size(), image.size()) != domain.size())
    throw std::logic_error("|ker| |im| differs from |R|^n");
  return KernelImageCokernel{FiniteModule::submodule_of_free(r, n, std::move(kernel), budget),
                             FiniteModule::submodule_of_free(r, m, std::move(image), budget),
                             target.quotient(image_members)};
}

}  // namespace refring
