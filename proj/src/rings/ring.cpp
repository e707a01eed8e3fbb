#include "refring/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "refring/errors.hpp"

namespace refring {

namespace detail {

struct RingNode {
  RingKind kind = RingKind::integers;
  std::int64_t modulus = 0;
  std::optional<unsigned> degree_bound;
  // base() is children[0]; for bivariate children[1] is the poly(poly(base))
  // ring that carries the arithmetic; for products these are the factors.
  std::vector<Ring> children;
  std::string name;
  // Quotient rings: representatives sorted by base index, and the position of
  // the representative of every base element.
  std::vector<Value> reps;
  std::vector<std::size_t> rep_of;

  static Ring wrap(std::shared_ptr<RingNode> n) { return Ring(std::move(n)); }
};

}  // namespace detail

using detail::RingNode;

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d <= p / d; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_reduce(const Integer& z, std::int64_t n) {
  Integer r = z % n;
  if (r < 0) r += n;
  return static_cast<std::int64_t>(r);
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t r0 = n, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw PreconditionViolated("element is not invertible modulo " + std::to_string(n));
  return ((s0 % n) + n) % n;
}

bool is_scalar(RingKind k) {
  return k == RingKind::integers || k == RingKind::modular || k == RingKind::prime_field;
}

void trim(std::vector<Value>& f, const Ring& base) {
  while (!f.empty() && base.is_zero(f.back())) f.pop_back();
}

// ---------------------------------------------------------------- parsing

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  Integer integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) fail("expected an integer");
    std::string lit(text_.substr(start, pos_ - start));
    if (lit[0] == '+') lit.erase(0, 1);
    return Integer(lit);
  }
  bool at_digit() {
    skip();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  // Text of a balanced sub-expression up to the next top-level ',' or closer.
  std::string balanced() {
    skip();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Ring parse_ring(Scanner& s) {
  const std::string head = s.word();
  if (head == "integers" || head == "ZZ") return Ring::integers();
  s.expect('(');
  Ring result = Ring::integers();
  if (head == "modular" || head == "prime" || head == "field") {
    const Integer n = s.integer();
    if (n > Integer(std::numeric_limits<std::int64_t>::max())) s.fail("modulus too large");
    const auto v = static_cast<std::int64_t>(n);
    result = head == "modular" ? Ring::modular(v) : Ring::prime_field(v);
  } else if (head == "poly" || head == "bipoly") {
    Ring base = parse_ring(s);
    std::optional<unsigned> bound;
    if (s.accept(',')) {
      if (s.word() != "bound") s.fail("expected 'bound='");
      s.expect('=');
      const Integer d = s.integer();
      if (d < 1 || d > 64) s.fail("degree bound must be in [1, 64]");
      bound = static_cast<unsigned>(d);
    }
    if (head == "poly") {
      result = Ring::polynomials(std::move(base), bound);
    } else {
      if (!bound) s.fail("bipoly needs a total degree bound");
      result = Ring::bivariate(std::move(base), *bound);
    }
  } else if (head == "product") {
    std::vector<Ring> factors{parse_ring(s)};
    while (s.accept(',')) factors.push_back(parse_ring(s));
    result = Ring::product(std::move(factors));
  } else if (head == "trivial") {
    result = Ring::trivial_extension(parse_ring(s));
  } else {
    s.fail("unknown ring '" + head + "'");
  }
  s.expect(')');
  return result;
}

// Polynomial expressions in X (and Y), over a scalar coefficient ring.
// Returns a map (x exponent, y exponent) -> integer coefficient.
std::map<std::pair<unsigned, unsigned>, Integer> parse_expression(Scanner& s, bool allow_y) {
  std::map<std::pair<unsigned, unsigned>, Integer> terms;
  bool first = true;
  while (!s.done()) {
    Integer sign = 1;
    if (s.accept('+')) {
    } else if (s.accept('-')) {
      sign = -1;
    } else if (!first) {
      s.fail("expected '+' or '-'");
    }
    first = false;
    Integer coef = 1;
    bool have_coef = false;
    if (s.at_digit()) {
      coef = s.integer();
      have_coef = true;
    }
    unsigned ex = 0, ey = 0;
    bool have_var = false;
    for (;;) {
      if (have_coef || have_var) {
        const char c = s.peek();
        if (c == '*') {
          s.accept('*');
        } else if (!(c == 'X' || c == 'x' || c == 'Y' || c == 'y')) {
          break;
        }
      }
      const char c = s.peek();
      if (c == 'X' || c == 'x' || ((c == 'Y' || c == 'y') && allow_y)) {
        s.accept(c);
        unsigned e = 1;
        if (s.accept('^')) {
          const Integer z = s.integer();
          if (z < 0 || z > 1024) s.fail("exponent out of range");
          e = static_cast<unsigned>(z);
        }
        (c == 'X' || c == 'x' ? ex : ey) += e;
        have_var = true;
      } else if (s.at_digit() && have_var) {
        coef *= s.integer();
      } else {
        if (!have_coef && !have_var) s.fail("expected a term");
        break;
      }
    }
    terms[{ex, ey}] += sign * coef;
  }
  if (first) s.fail("empty polynomial");
  return terms;
}

std::string format_expression(const std::map<std::pair<unsigned, unsigned>, std::string>& terms) {
  // Terms arrive keyed by (x, y); print by descending total degree, then x.
  std::vector<std::pair<std::pair<unsigned, unsigned>, std::string>> order(terms.begin(), terms.end());
  std::sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
    const unsigned dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
    if (dl != dr) return dl > dr;
    return l.first.first > r.first.first;
  });
  std::string out;
  for (const auto& [exp, coef] : order) {
    std::string mono;
    auto var = [&](char v, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    var('X', exp.first);
    var('Y', exp.second);
    std::string c = coef;
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    std::string term;
    if (mono.empty()) term = c;
    else if (c == "1") term = mono;
    else term = c + "*" + mono;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? "-" : "+") + term;
  }
  return out.empty() ? "0" : out;
}

std::shared_ptr<RingNode> new_node(RingKind kind) {
  auto n = std::make_shared<RingNode>();
  n->kind = kind;
  return n;
}

}  // namespace

// ------------------------------------------------------------------ hashing

std::size_t ValueHash::operator()(const Value& v) const {
  struct Visitor {
    std::size_t operator()(std::int64_t r) const { return std::hash<std::int64_t>{}(r); }
    std::size_t operator()(const Integer& z) const { return std::hash<std::string>{}(z.str()); }
    std::size_t operator()(const std::vector<Value>& parts) const {
      std::size_t h = 0x9e3779b97f4a7c15ull + parts.size();
      for (const auto& p : parts) h ^= ValueHash{}(p) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };
  return std::visit(Visitor{}, v.data) ^ (v.data.index() * 0x51ed27);
}

// ------------------------------------------------------------ constructors

Ring Ring::integers() {
  static const Ring z = [] {
    auto n = new_node(RingKind::integers);
    n->name = "integers";
    return Ring(n);
  }();
  return z;
}

Ring Ring::modular(std::int64_t n) {
  if (n < 2) throw PreconditionViolated("modulus must be at least 2, got " + std::to_string(n));
  auto node = new_node(RingKind::modular);
  node->modulus = n;
  node->name = "modular(" + std::to_string(n) + ")";
  return Ring(node);
}

Ring Ring::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw PreconditionViolated(std::to_string(p) + " is not prime");
  auto node = new_node(RingKind::prime_field);
  node->modulus = p;
  node->name = "prime(" + std::to_string(p) + ")";
  return Ring(node);
}

Ring Ring::polynomials(Ring base, std::optional<unsigned> degree_bound) {
  if (degree_bound && *degree_bound == 0) throw PreconditionViolated("degree bound must be positive");
  if (base.kind() == RingKind::quotient)
    throw UnsupportedDescriptor("polynomials over internal quotient rings are not supported");
  auto node = new_node(RingKind::polynomial);
  node->degree_bound = degree_bound;
  node->name = "poly(" + base.name() +
               (degree_bound ? ", bound=" + std::to_string(*degree_bound) : std::string()) + ")";
  node->children = {std::move(base)};
  return Ring(node);
}

Ring Ring::bivariate(Ring base, unsigned total_degree_bound) {
  if (base.kind() != RingKind::prime_field)
    throw PreconditionViolated("bivariate polynomials need a prime field base");
  if (total_degree_bound == 0) throw PreconditionViolated("degree bound must be positive");
  auto node = new_node(RingKind::bivariate);
  node->degree_bound = total_degree_bound;
  node->name = "bipoly(" + base.name() + ", bound=" + std::to_string(total_degree_bound) + ")";
  Ring in_x = polynomials(base);
  node->children = {base, polynomials(in_x)};
  return Ring(node);
}

Ring Ring::product(std::vector<Ring> factors) {
  if (factors.empty()) throw PreconditionViolated("a product needs at least one factor");
  auto node = new_node(RingKind::product);
  node->name = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) node->name += ", ";
    node->name += factors[i].name();
  }
  node->name += ")";
  node->children = std::move(factors);
  return Ring(node);
}

Ring Ring::trivial_extension(Ring base) {
  auto node = new_node(RingKind::trivial);
  node->name = "trivial(" + base.name() + ")";
  node->children = {std::move(base)};
  return Ring(node);
}

Ring Ring::parse(std::string_view text) {
  Scanner s(text);
  Ring r = parse_ring(s);
  if (!s.done()) s.fail("trailing characters");
  return r;
}

// --------------------------------------------------------------- accessors

RingKind Ring::kind() const { return node_->kind; }
const std::string& Ring::name() const { return node_->name; }

bool Ring::operator==(const Ring& other) const {
  return node_ == other.node_ || node_->name == other.node_->name;
}

std::int64_t Ring::modulus() const {
  if (kind() != RingKind::modular && kind() != RingKind::prime_field)
    throw UnsupportedDescriptor(name() + " has no modulus");
  return node_->modulus;
}

const Ring& Ring::base() const {
  switch (kind()) {
    case RingKind::polynomial:
    case RingKind::bivariate:
    case RingKind::trivial:
    case RingKind::quotient: return node_->children[0];
    default: throw UnsupportedDescriptor(name() + " has no base ring");
  }
}

const std::vector<Ring>& Ring::factors() const {
  if (kind() != RingKind::product) throw UnsupportedDescriptor(name() + " is not a product");
  return node_->children;
}

std::optional<unsigned> Ring::degree_bound() const { return node_->degree_bound; }

bool Ring::is_field() const {
  if (kind() == RingKind::prime_field) return true;
  return kind() == RingKind::modular && is_prime(node_->modulus);
}

bool Ring::is_euclidean() const {
  return kind() == RingKind::integers || (kind() == RingKind::polynomial && base().is_field());
}

// ---------------------------------------------------------------- elements

Element Ring::zero() const { return Element(*this, zero_value()); }
Element Ring::one() const { return Element(*this, one_value()); }
Element Ring::from_integer(const Integer& z) const { return Element(*this, from_integer_value(z)); }
Element Ring::element(Value v) const { return Element(*this, canonical(std::move(v))); }

Value Ring::zero_value() const { return from_integer_value(0); }
Value Ring::one_value() const { return from_integer_value(1); }

Value Ring::from_integer_value(const Integer& z) const {
  switch (kind()) {
    case RingKind::integers: return Value(z);
    case RingKind::modular:
    case RingKind::prime_field: return Value(mod_reduce(z, node_->modulus));
    case RingKind::polynomial:
    case RingKind::bivariate: {
      const Ring& coeff = kind() == RingKind::polynomial ? base() : node_->children[1].base();
      std::vector<Value> f{coeff.from_integer_value(z)};
      trim(f, coeff);
      return Value(std::move(f));
    }
    case RingKind::product: {
      std::vector<Value> parts;
      for (const auto& f : factors()) parts.push_back(f.from_integer_value(z));
      return Value(std::move(parts));
    }
    case RingKind::trivial:
      return Value(std::vector<Value>{base().from_integer_value(z), base().zero_value()});
    case RingKind::quotient: return canonical(base().from_integer_value(z));
  }
  return Value();
}

Value Ring::canonical(Value v) const {
  switch (kind()) {
    case RingKind::integers:
      if (std::holds_alternative<std::int64_t>(v.data)) return Value(Integer(v.residue()));
      if (!std::holds_alternative<Integer>(v.data)) throw ParseError("expected an integer payload");
      return v;
    case RingKind::modular:
    case RingKind::prime_field:
      if (std::holds_alternative<Integer>(v.data)) return Value(mod_reduce(v.integer(), node_->modulus));
      if (!std::holds_alternative<std::int64_t>(v.data)) throw ParseError("expected a residue payload");
      return Value(mod_reduce(Integer(v.residue()), node_->modulus));
    case RingKind::polynomial:
    case RingKind::bivariate: {
      if (!std::holds_alternative<std::vector<Value>>(v.data))
        throw ParseError("expected a coefficient list");
      const Ring& coeff = kind() == RingKind::polynomial ? base() : node_->children[1].base();
      std::vector<Value> f;
      for (auto& c : v.parts()) f.push_back(coeff.canonical(std::move(c)));
      trim(f, coeff);
      return Value(std::move(f));
    }
    case RingKind::product:
    case RingKind::trivial: {
      if (!std::holds_alternative<std::vector<Value>>(v.data)) throw ParseError("expected a tuple");
      const std::size_t n = kind() == RingKind::product ? factors().size() : 2;
      if (v.parts().size() != n) throw ParseError("tuple has the wrong number of components");
      std::vector<Value> parts;
      for (std::size_t i = 0; i < n; ++i) {
        const Ring& r = kind() == RingKind::product ? factors()[i] : base();
        parts.push_back(r.canonical(std::move(v.parts()[i])));
      }
      return Value(std::move(parts));
    }
    case RingKind::quotient: {
      const Value b = base().canonical(std::move(v));
      return node_->reps[node_->rep_of[base().index_of(b)]];
    }
  }
  return v;
}

bool Ring::is_zero(const Value& a) const {
  switch (kind()) {
    case RingKind::integers: return a.integer() == 0;
    case RingKind::modular:
    case RingKind::prime_field: return a.residue() == 0;
    case RingKind::polynomial:
    case RingKind::bivariate: return a.parts().empty();
    default: return a == zero_value();
  }
}

// -------------------------------------------------------------- arithmetic

namespace {

Value poly_add(const Ring& b, const Value& f, const Value& g, bool subtract) {
  const auto& x = f.parts();
  const auto& y = g.parts();
  std::vector<Value> r(std::max(x.size(), y.size()), b.zero_value());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < x.size() && i < y.size()) r[i] = subtract ? b.sub(x[i], y[i]) : b.add(x[i], y[i]);
    else if (i < x.size()) r[i] = x[i];
    else r[i] = subtract ? b.neg(y[i]) : y[i];
  }
  trim(r, b);
  return Value(std::move(r));
}

Value poly_mul(const Ring& b, const Value& f, const Value& g) {
  const auto& x = f.parts();
  const auto& y = g.parts();
  if (x.empty() || y.empty()) return Value(std::vector<Value>{});
  std::vector<Value> r(x.size() + y.size() - 1, b.zero_value());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (b.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = b.add(r[i + j], b.mul(x[i], y[j]));
  }
  trim(r, b);
  return Value(std::move(r));
}

}  // namespace

Value Ring::add(const Value& a, const Value& b) const {
  switch (kind()) {
    case RingKind::integers: return Value(Integer(a.integer() + b.integer()));
    case RingKind::modular:
    case RingKind::prime_field: {
      const std::int64_t n = node_->modulus;
      const std::int64_t s = a.residue() - (n - b.residue());
      return Value(s < 0 ? s + n : s);
    }
    case RingKind::polynomial: return poly_add(base(), a, b, false);
    case RingKind::bivariate: return node_->children[1].add(a, b);
    case RingKind::product: {
      std::vector<Value> r;
      for (std::size_t i = 0; i < factors().size(); ++i)
        r.push_back(factors()[i].add(a.parts()[i], b.parts()[i]));
      return Value(std::move(r));
    }
    case RingKind::trivial:
      return Value(std::vector<Value>{base().add(a.parts()[0], b.parts()[0]),
                                      base().add(a.parts()[1], b.parts()[1])});
    case RingKind::quotient: return canonical(base().add(a, b));
  }
  return Value();
}

Value Ring::neg(const Value& a) const {
  switch (kind()) {
    case RingKind::integers: return Value(Integer(-a.integer()));
    case RingKind::modular:
    case RingKind::prime_field: return Value(a.residue() == 0 ? 0 : node_->modulus - a.residue());
    case RingKind::polynomial: {
      std::vector<Value> r;
      for (const auto& c : a.parts()) r.push_back(base().neg(c));
      return Value(std::move(r));
    }
    case RingKind::bivariate: return node_->children[1].neg(a);
    case RingKind::product: {
      std::vector<Value> r;
      for (std::size_t i = 0; i < factors().size(); ++i) r.push_back(factors()[i].neg(a.parts()[i]));
      return Value(std::move(r));
    }
    case RingKind::trivial:
      return Value(std::vector<Value>{base().neg(a.parts()[0]), base().neg(a.parts()[1])});
    case RingKind::quotient: return canonical(base().neg(a));
  }
  return Value();
}

Value Ring::sub(const Value& a, const Value& b) const {
  if (kind() == RingKind::polynomial) return poly_add(base(), a, b, true);
  if (kind() == RingKind::integers) return Value(Integer(a.integer() - b.integer()));
  return add(a, neg(b));
}

Value Ring::mul(const Value& a, const Value& b) const {
  switch (kind()) {
    case RingKind::integers: return Value(Integer(a.integer() * b.integer()));
    case RingKind::modular:
    case RingKind::prime_field: return Value(mod_mul(a.residue(), b.residue(), node_->modulus));
    case RingKind::polynomial: return poly_mul(base(), a, b);
    case RingKind::bivariate: return node_->children[1].mul(a, b);
    case RingKind::product: {
      std::vector<Value> r;
      for (std::size_t i = 0; i < factors().size(); ++i)
        r.push_back(factors()[i].mul(a.parts()[i], b.parts()[i]));
      return Value(std::move(r));
    }
    case RingKind::trivial: {
      const Ring& r = base();
      const auto& x = a.parts();
      const auto& y = b.parts();
      // (r1, m1)(r2, m2) = (r1 r2, r1 m2 + m1 r2)
      return Value(std::vector<Value>{r.mul(x[0], y[0]), r.add(r.mul(x[0], y[1]), r.mul(x[1], y[0]))});
    }
    case RingKind::quotient: return canonical(base().mul(a, b));
  }
  return Value();
}

Value Ring::pow(const Value& a, std::uint64_t e) const {
  Value result = one_value();
  Value square = a;
  while (e) {
    if (e & 1) result = mul(result, square);
    e >>= 1;
    if (e) square = mul(square, square);
  }
  return result;
}

// -------------------------------------------------------- Euclidean domain

Integer Ring::euclidean_size(const Value& a) const {
  if (kind() == RingKind::integers) return abs(a.integer());
  if (is_euclidean()) return Integer(poly_degree(a));
  throw UnsupportedDescriptor(name() + " is not Euclidean");
}

std::pair<Value, Value> Ring::divmod(const Value& a, const Value& b) const {
  if (is_zero(b)) throw PreconditionViolated("division by zero");
  if (kind() == RingKind::integers) {
    // Truncating division keeps |r| < |b|.
    return {Value(Integer(a.integer() / b.integer())), Value(Integer(a.integer() % b.integer()))};
  }
  if (!is_euclidean()) throw UnsupportedDescriptor(name() + " is not Euclidean");
  const Ring& f = base();
  const std::int64_t p = f.modulus();
  std::vector<Value> rem = a.parts();
  const auto& div = b.parts();
  const int db = static_cast<int>(div.size()) - 1;
  const std::int64_t lead_inv = mod_inverse(div.back().residue(), p);
  std::vector<Value> quot(rem.size() > div.size() ? rem.size() - div.size() + 1 : 1, f.zero_value());
  while (static_cast<int>(rem.size()) - 1 >= db && !rem.empty()) {
    const int shift = static_cast<int>(rem.size()) - 1 - db;
    const Value c(mod_mul(rem.back().residue(), lead_inv, p));
    quot[shift] = c;
    for (int i = 0; i <= db; ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(c, div[i]));
    trim(rem, f);
  }
  trim(quot, f);
  return {Value(std::move(quot)), Value(std::move(rem))};
}

Value Ring::normalizing_unit(const Value& a) const {
  if (kind() == RingKind::integers) return Value(Integer(a.integer() < 0 ? -1 : 1));
  if (!is_euclidean()) throw UnsupportedDescriptor(name() + " is not Euclidean");
  if (a.parts().empty()) return one_value();
  return Value(std::vector<Value>{Value(mod_inverse(a.parts().back().residue(), base().modulus()))});
}

// -------------------------------------------------------------- enumeration

std::optional<std::size_t> Ring::cardinality() const {
  switch (kind()) {
    case RingKind::modular:
    case RingKind::prime_field: return static_cast<std::size_t>(node_->modulus);
    case RingKind::product: {
      std::size_t n = 1;
      for (const auto& f : factors()) {
        const auto c = f.cardinality();
        if (!c) return std::nullopt;
        n = saturating_mul(n, *c);
      }
      return n;
    }
    case RingKind::trivial: {
      const auto c = base().cardinality();
      if (!c) return std::nullopt;
      return saturating_mul(*c, *c);
    }
    case RingKind::quotient: return node_->reps.size();
    default: return std::nullopt;
  }
}

std::size_t Ring::finite_size(const Budget& budget) const {
  const auto c = cardinality();
  if (!c) throw InfiniteRing(name() + " is infinite");
  budget.require_cardinality(*c, name());
  return *c;
}

Value Ring::value_at(std::size_t index) const {
  switch (kind()) {
    case RingKind::modular:
    case RingKind::prime_field: return Value(static_cast<std::int64_t>(index));
    case RingKind::product: {
      std::vector<Value> parts(factors().size());
      for (std::size_t i = factors().size(); i-- > 0;) {
        const std::size_t n = *factors()[i].cardinality();
        parts[i] = factors()[i].value_at(index % n);
        index /= n;
      }
      return Value(std::move(parts));
    }
    case RingKind::trivial: {
      const std::size_t n = *base().cardinality();
      return Value(std::vector<Value>{base().value_at(index / n), base().value_at(index % n)});
    }
    case RingKind::quotient: return node_->reps.at(index);
    default: throw InfiniteRing(name() + " is infinite");
  }
}

std::size_t Ring::index_of(const Value& v) const {
  switch (kind()) {
    case RingKind::modular:
    case RingKind::prime_field: return static_cast<std::size_t>(v.residue());
    case RingKind::product: {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < factors().size(); ++i)
        idx = idx * *factors()[i].cardinality() + factors()[i].index_of(v.parts()[i]);
      return idx;
    }
    case RingKind::trivial:
      return base().index_of(v.parts()[0]) * *base().cardinality() + base().index_of(v.parts()[1]);
    case RingKind::quotient: {
      const std::size_t b = base().index_of(v);
      return node_->rep_of[b];
    }
    default: throw InfiniteRing(name() + " is infinite");
  }
}

std::vector<Element> Ring::elements(const Budget& budget) const {
  const std::size_t n = finite_size(budget);
  std::vector<Element> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(*this, value_at(i));
  return out;
}

// ----------------------------------------------------------------- quotient

RingHomomorphism Ring::quotient(const Ring& base, std::span<const Element> ideal) {
  const std::size_t n = base.finite_size();
  std::vector<bool> member(n, false);
  for (const auto& e : ideal) {
    require_same_ring(e.ring(), base, "quotient");
    member[base.index_of(e.value())] = true;
  }
  std::vector<std::size_t> ideal_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (member[i]) ideal_idx.push_back(i);
  if (ideal_idx.empty() || !member[base.index_of(base.zero_value())])
    throw PreconditionViolated("an ideal must contain zero");
  for (std::size_t i : ideal_idx) {
    const Value a = base.value_at(i);
    for (std::size_t j : ideal_idx)
      if (!member[base.index_of(base.add(a, base.value_at(j)))])
        throw PreconditionViolated("element set is not closed under addition");
    for (std::size_t r = 0; r < n; ++r)
      if (!member[base.index_of(base.mul(a, base.value_at(r)))])
        throw PreconditionViolated("element set is not closed under multiplication by R");
  }

  if (ideal_idx.size() == 1) {
    return RingHomomorphism{base, base, [](const Value& v) { return v; }};
  }
  if ((base.kind() == RingKind::modular || base.kind() == RingKind::prime_field) && ideal_idx.size() < n) {
    // I = gℤ/n with g the least positive element; R / I = ℤ/g.
    const auto g = static_cast<std::int64_t>(ideal_idx[1]);
    Ring target = modular(g);
    return RingHomomorphism{base, target, [g](const Value& v) { return Value(v.residue() % g); }};
  }
  if (base.kind() == RingKind::product && ideal_idx.size() < n) {
    // Ideals of a product are products of ideals of the factors.
    const auto& fs = base.factors();
    std::vector<std::vector<bool>> seen(fs.size());
    std::vector<std::vector<Element>> parts(fs.size());
    for (std::size_t k = 0; k < fs.size(); ++k) seen[k].assign(fs[k].finite_size(), false);
    for (std::size_t i : ideal_idx) {
      const Value v = base.value_at(i);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::size_t c = fs[k].index_of(v.parts()[k]);
        if (!seen[k][c]) {
          seen[k][c] = true;
          parts[k].emplace_back(fs[k], v.parts()[k]);
        }
      }
    }
    std::size_t product_size = 1;
    for (const auto& p : parts) product_size *= p.size();
    if (product_size == ideal_idx.size()) {
      std::vector<RingHomomorphism> maps;
      std::vector<Ring> targets;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        maps.push_back(quotient(fs[k], parts[k]));
        targets.push_back(maps.back().target);
      }
      Ring target = product(targets);
      return RingHomomorphism{base, target, [maps](const Value& v) {
                                std::vector<Value> out;
                                for (std::size_t k = 0; k < maps.size(); ++k)
                                  out.push_back(maps[k].map(v.parts()[k]));
                                return Value(std::move(out));
                              }};
    }
  }

  auto node = new_node(RingKind::quotient);
  node->rep_of.assign(n, 0);
  std::vector<bool> assigned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    const Value rep = base.value_at(i);
    const std::size_t pos = node->reps.size();
    node->reps.push_back(rep);
    for (std::size_t j : ideal_idx) {
      const std::size_t k = base.index_of(base.add(rep, base.value_at(j)));
      assigned[k] = true;
      node->rep_of[k] = pos;
    }
  }
  node->name = "quotient(" + base.name() + ", ideal=[";
  for (std::size_t i = 0; i < ideal_idx.size(); ++i) {
    if (i) node->name += ",";
    node->name += base.format(base.value_at(ideal_idx[i]));
  }
  node->name += "])";
  node->children = {base};
  Ring target(node);
  return RingHomomorphism{base, target, [target](const Value& v) { return target.canonical(v); }};
}

// ------------------------------------------------------------ text payloads

std::string Ring::format(const Value& a) const {
  switch (kind()) {
    case RingKind::integers: return a.integer().str();
    case RingKind::modular:
    case RingKind::prime_field: return std::to_string(a.residue());
    case RingKind::polynomial: {
      if (is_scalar(base().kind())) {
        std::map<std::pair<unsigned, unsigned>, std::string> terms;
        for (std::size_t i = 0; i < a.parts().size(); ++i)
          if (!base().is_zero(a.parts()[i])) terms[{static_cast<unsigned>(i), 0}] = base().format(a.parts()[i]);
        return format_expression(terms);
      }
      std::string out = "[";
      for (std::size_t i = 0; i < a.parts().size(); ++i) {
        if (i) out += ", ";
        out += base().format(a.parts()[i]);
      }
      return out + "]";
    }
    case RingKind::bivariate: {
      std::map<std::pair<unsigned, unsigned>, std::string> terms;
      for (std::size_t j = 0; j < a.parts().size(); ++j) {
        const auto& inner = a.parts()[j].parts();
        for (std::size_t i = 0; i < inner.size(); ++i)
          if (inner[i].residue() != 0)
            terms[{static_cast<unsigned>(i), static_cast<unsigned>(j)}] = std::to_string(inner[i].residue());
      }
      return format_expression(terms);
    }
    case RingKind::product:
    case RingKind::trivial: {
      std::string out = "(";
      for (std::size_t i = 0; i < a.parts().size(); ++i) {
        if (i) out += ", ";
        out += (kind() == RingKind::product ? factors()[i] : base()).format(a.parts()[i]);
      }
      return out + ")";
    }
    case RingKind::quotient: return base().format(a);
  }
  return "?";
}

namespace {

Value parse_value(const Ring& r, std::string_view text);

Value parse_tuple(const Ring& r, Scanner& s, std::size_t n, const std::function<const Ring&(std::size_t)>& ring_at) {
  s.expect('(');
  std::vector<Value> parts;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s.expect(',');
    parts.push_back(parse_value(ring_at(i), s.balanced()));
  }
  s.expect(')');
  if (!s.done()) s.fail("trailing characters");
  (void)r;
  return Value(std::move(parts));
}

Value parse_value(const Ring& r, std::string_view text) {
  Scanner s(text);
  switch (r.kind()) {
    case RingKind::integers:
    case RingKind::modular:
    case RingKind::prime_field: {
      const Integer z = s.integer();
      if (!s.done()) s.fail("trailing characters");
      return r.from_integer_value(z);
    }
    case RingKind::polynomial: {
      if (s.peek() == '[') {
        s.expect('[');
        std::vector<Value> coeffs;
        if (!s.accept(']')) {
          do {
            coeffs.push_back(parse_value(r.base(), s.balanced()));
          } while (s.accept(','));
          s.expect(']');
        }
        if (!s.done()) s.fail("trailing characters");
        return r.canonical(Value(std::move(coeffs)));
      }
      if (!is_scalar(r.base().kind())) s.fail("use [c0, c1, ...] for polynomials over " + r.base().name());
      const auto terms = parse_expression(s, false);
      std::vector<Value> coeffs;
      for (const auto& [e, c] : terms) {
        if (coeffs.size() <= e.first) coeffs.resize(e.first + 1, r.base().zero_value());
        coeffs[e.first] = r.base().add(coeffs[e.first], r.base().from_integer_value(c));
      }
      return r.canonical(Value(std::move(coeffs)));
    }
    case RingKind::bivariate: {
      const auto terms = parse_expression(s, true);
      const Ring& f = r.base();
      std::vector<Value> outer;
      for (const auto& [e, c] : terms) {
        if (outer.size() <= e.second) outer.resize(e.second + 1, Value(std::vector<Value>{}));
        auto& inner = outer[e.second].parts();
        if (inner.size() <= e.first) inner.resize(e.first + 1, f.zero_value());
        inner[e.first] = f.add(inner[e.first], f.from_integer_value(c));
      }
      return r.canonical(Value(std::move(outer)));
    }
    case RingKind::product:
      return parse_tuple(r, s, r.factors().size(), [&](std::size_t i) -> const Ring& { return r.factors()[i]; });
    case RingKind::trivial:
      return parse_tuple(r, s, 2, [&](std::size_t) -> const Ring& { return r.base(); });
    case RingKind::quotient: return r.canonical(parse_value(r.base(), text));
  }
  s.fail("cannot parse element");
}

}  // namespace

Element Ring::parse_element(std::string_view text) const { return Element(*this, parse_value(*this, text)); }

// ----------------------------------------------------------------- Element

void require_same_ring(const Ring& a, const Ring& b, const char* what) {
  if (!(a == b)) throw DescriptorMismatch(std::string(what) + ": " + a.name() + " vs " + b.name());
}

Element Element::operator+(const Element& o) const {
  require_same_ring(ring_, o.ring_, "add");
  return Element(ring_, ring_.add(value_, o.value_));
}

Element Element::operator-(const Element& o) const {
  require_same_ring(ring_, o.ring_, "sub");
  return Element(ring_, ring_.sub(value_, o.value_));
}

Element Element::operator*(const Element& o) const {
  require_same_ring(ring_, o.ring_, "mul");
  return Element(ring_, ring_.mul(value_, o.value_));
}

Element Element::operator-() const { return Element(ring_, ring_.neg(value_)); }

Element Element::pow(std::uint64_t e) const { return Element(ring_, ring_.pow(value_, e)); }

bool Element::operator==(const Element& o) const {
  require_same_ring(ring_, o.ring_, "eq");
  return value_ == o.value_;
}

Element RingHomomorphism::operator()(const Element& a) const {
  require_same_ring(a.ring(), source, "homomorphism");
  return Element(target, map(a.value()));
}

}  // namespace refring
