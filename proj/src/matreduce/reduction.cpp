#include "refring/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "refring/errors.hpp"

namespace refring {

namespace {

bool is_residue_ring(const Ring& r) {
  return r.kind() == RingKind::modular || r.kind() == RingKind::prime_field;
}

// Tracks P, P^{-1}, Q, Q^{-1} alongside every elementary operation on A.
class Tracker {
 public:
  explicit Tracker(const Matrix& a)
      : a_(a),
        p_(Matrix::identity(a.ring(), a.rows())),
        p_inv_(p_),
        q_(Matrix::identity(a.ring(), a.cols())),
        q_inv_(q_) {}

  const Matrix& a() const { return a_; }
  const Ring& ring() const { return a_.ring(); }

  void swap_rows(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    p_.swap_rows(i, j);
    p_inv_.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    q_.swap_cols(i, j);
    q_inv_.swap_rows(i, j);
  }
  // row[t] += c row[s]
  void add_row(std::size_t t, std::size_t s, const Value& c) {
    a_.add_row_multiple(t, s, c);
    p_.add_row_multiple(t, s, c);
    p_inv_.add_col_multiple(s, t, ring().neg(c));
  }
  // col[t] += c col[s]
  void add_col(std::size_t t, std::size_t s, const Value& c) {
    a_.add_col_multiple(t, s, c);
    q_.add_col_multiple(t, s, c);
    q_inv_.add_row_multiple(s, t, ring().neg(c));
  }
  void scale_row(std::size_t r, const Value& unit, const Value& unit_inv) {
    a_.scale_row(r, unit);
    p_.scale_row(r, unit);
    p_inv_.scale_col(r, unit_inv);
  }

  DiagonalReduction result() && {
    return DiagonalReduction{std::move(p_), std::move(p_inv_), std::move(q_), std::move(q_inv_), std::move(a_)};
  }

 private:
  Matrix a_, p_, p_inv_, q_, q_inv_;
};

// Smallest nonzero entry of the trailing submatrix by Euclidean size; ties
// resolved row-major.
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const Matrix& a, std::size_t t) {
  const Ring& r = a.ring();
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_size;
  for (std::size_t i = t; i < a.rows(); ++i) {
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (r.is_zero(a.value(i, j))) continue;
      Integer s = r.euclidean_size(a.value(i, j));
      if (!best || s < best_size) {
        best = {i, j};
        best_size = std::move(s);
      }
    }
  }
  return best;
}

void reduce_position(Tracker& tr, std::size_t t) {
  const Ring& r = tr.ring();
  const std::size_t m = tr.a().rows(), n = tr.a().cols();
  for (;;) {
    const auto pivot = find_pivot(tr.a(), t);
    if (!pivot) return;
    tr.swap_rows(t, pivot->first);
    tr.swap_cols(t, pivot->second);

    bool remainder = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (r.is_zero(tr.a().value(i, t))) continue;
      auto [q, rem] = r.divmod(tr.a().value(i, t), tr.a().value(t, t));
      tr.add_row(i, t, r.neg(q));
      remainder = remainder || !r.is_zero(rem);
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (r.is_zero(tr.a().value(t, j))) continue;
      auto [q, rem] = r.divmod(tr.a().value(t, j), tr.a().value(t, t));
      tr.add_col(j, t, r.neg(q));
      remainder = remainder || !r.is_zero(rem);
    }
    if (remainder) continue;  // a smaller entry now exists; re-pivot

    // Row and column are clear. The pivot must divide the rest.
    bool all_divisible = true;
    for (std::size_t i = t + 1; i < m && all_divisible; ++i) {
      for (std::size_t j = t + 1; j < n; ++j) {
        const Value& x = tr.a().value(i, j);
        if (r.is_zero(x)) continue;
        if (!r.is_zero(r.divmod(x, tr.a().value(t, t)).second)) {
          tr.add_row(t, i, r.one_value());
          all_divisible = false;
          break;
        }
      }
    }
    if (!all_divisible) continue;

    const Value u = r.normalizing_unit(tr.a().value(t, t));
    if (!(u == r.one_value())) {
      // The normalizing unit of ℤ is self-inverse; over F_p[X] it is a
      // nonzero constant.
      Value u_inv = r.kind() == RingKind::integers ? u : r.normalizing_unit(u);
      tr.scale_row(t, u, u_inv);
    }
    return;
  }
}

Matrix lift_to_integers(const Matrix& a) {
  std::vector<Value> v;
  v.reserve(a.values().size());
  for (const auto& x : a.values()) v.emplace_back(Integer(x.residue()));
  return Matrix(Ring::integers(), a.rows(), a.cols(), std::move(v));
}

Matrix reduce_mod(const Ring& target, const Matrix& z) {
  std::vector<Value> v;
  v.reserve(z.values().size());
  for (const auto& x : z.values()) v.push_back(target.from_integer_value(x.integer()));
  return Matrix(target, z.rows(), z.cols(), std::move(v));
}

Matrix component(const Matrix& a, std::size_t k) {
  const Ring& f = a.ring().factors()[k];
  std::vector<Value> v;
  v.reserve(a.values().size());
  for (const auto& x : a.values()) v.push_back(x.parts()[k]);
  return Matrix(f, a.rows(), a.cols(), std::move(v));
}

Matrix join(const Ring& product, const std::vector<Matrix>& parts) {
  const std::size_t m = parts.front().rows(), n = parts.front().cols();
  std::vector<Value> v;
  v.reserve(m * n);
  for (std::size_t i = 0; i < m * n; ++i) {
    std::vector<Value> tuple;
    for (const auto& p : parts) tuple.push_back(p.values()[i]);
    v.emplace_back(std::move(tuple));
  }
  return Matrix(product, m, n, std::move(v));
}

void require_verified(const Matrix& a, const DiagonalReduction& red, const char* what) {
  if (!verify_reduction(a, red)) throw std::logic_error(std::string(what) + ": reduction failed to verify");
}

DiagonalReduction lift_reduce(const Matrix& a, DiagonalReduction (*integer_route)(const Matrix&)) {
  const Ring& r = a.ring();
  const DiagonalReduction z = integer_route(lift_to_integers(a));
  return DiagonalReduction{reduce_mod(r, z.P), reduce_mod(r, z.P_inv), reduce_mod(r, z.Q),
                           reduce_mod(r, z.Q_inv), reduce_mod(r, z.D)};
}

}  // namespace

DiagonalReduction smith_normal_form(const Matrix& a) {
  if (!a.ring().is_euclidean())
    throw UnsupportedDescriptor("smith_normal_form needs a Euclidean ring, got " + a.ring().name());
  Tracker tr(a);
  const std::size_t steps = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < steps; ++t) reduce_position(tr, t);
  DiagonalReduction red = std::move(tr).result();
  require_verified(a, red, "smith_normal_form");
  return red;
}

bool supports_diagonal_reduction(const Ring& ring) {
  if (ring.is_euclidean() || is_residue_ring(ring)) return true;
  if (ring.kind() == RingKind::product)
    return std::all_of(ring.factors().begin(), ring.factors().end(), supports_diagonal_reduction);
  return false;
}

DiagonalReduction diagonal_reduction(const Matrix& a) {
  const Ring& r = a.ring();
  if (r.is_euclidean()) return smith_normal_form(a);
  if (is_residue_ring(r)) {
    DiagonalReduction red = lift_reduce(a, smith_normal_form);
    require_verified(a, red, "diagonal_reduction");
    return red;
  }
  if (r.kind() == RingKind::product && supports_diagonal_reduction(r)) {
    std::vector<Matrix> ps, pis, qs, qis, ds;
    for (std::size_t k = 0; k < r.factors().size(); ++k) {
      DiagonalReduction c = diagonal_reduction(component(a, k));
      ps.push_back(std::move(c.P));
      pis.push_back(std::move(c.P_inv));
      qs.push_back(std::move(c.Q));
      qis.push_back(std::move(c.Q_inv));
      ds.push_back(std::move(c.D));
    }
    DiagonalReduction red{join(r, ps), join(r, pis), join(r, qs), join(r, qis), join(r, ds)};
    require_verified(a, red, "diagonal_reduction");
    return red;
  }
  throw UnsupportedDescriptor("no diagonal reduction algorithm for " + r.name());
}

DiagonalReduction hermite_reduce(const Matrix& v) {
  const bool row = v.rows() == 1 && v.cols() == 2;
  const bool col = v.rows() == 2 && v.cols() == 1;
  if (!row && !col) throw PreconditionViolated("hermite_reduce expects a 1x2 or 2x1 matrix");
  const Ring& r = v.ring();
  if (is_residue_ring(r)) {
    DiagonalReduction red = lift_reduce(v, hermite_reduce);
    require_verified(v, red, "hermite_reduce");
    return red;
  }
  if (!r.is_euclidean()) throw UnsupportedDescriptor("hermite_reduce needs a Euclidean or residue ring");

  const Element a = v.at(0, 0);
  const Element b = row ? v.at(0, 1) : v.at(1, 0);
  const Bezout bz = bezout_gcd(a, b);
  Matrix one = Matrix::identity(r, 1);
  Matrix two = Matrix::identity(r, 2);
  if (bz.d.is_zero()) return DiagonalReduction{one, one, two, two, v};

  auto exact = [&](const Element& x) {
    auto [q, rem] = r.divmod(x.value(), bz.d.value());
    if (!r.is_zero(rem)) throw std::logic_error("gcd does not divide its argument");
    return Element(r, q);
  };
  const Element a1 = exact(a), b1 = exact(b);
  // s a1 + t b1 = 1, so both matrices below have determinant 1.
  Matrix m = Matrix::from_elements(r, 2, 2, {bz.s, -b1, bz.t, a1});
  Matrix m_inv = Matrix::from_elements(r, 2, 2, {a1, b1, -bz.t, bz.s});
  DiagonalReduction red = row ? DiagonalReduction{one, one, m, m_inv, Matrix::from_elements(r, 1, 2, {bz.d, r.zero()})}
                              : DiagonalReduction{m.transpose(), m_inv.transpose(), one, one,
                                                  Matrix::from_elements(r, 2, 1, {bz.d, r.zero()})};
  require_verified(v, red, "hermite_reduce");
  return red;
}

bool verify_reduction(const Matrix& a, const DiagonalReduction& red) {
  const std::size_t m = a.rows(), n = a.cols();
  auto square = [](const Matrix& x, std::size_t k) { return x.rows() == k && x.cols() == k; };
  if (!square(red.P, m) || !square(red.P_inv, m) || !square(red.Q, n) || !square(red.Q_inv, n) ||
      red.D.rows() != m || red.D.cols() != n)
    throw PreconditionViolated("reduction witness shapes do not match the matrix");
  const Ring& r = a.ring();
  for (const Matrix* x : {&red.P, &red.P_inv, &red.Q, &red.Q_inv, &red.D})
    require_same_ring(x->ring(), r, "verify_reduction");
  const Matrix im = Matrix::identity(r, m), in = Matrix::identity(r, n);
  return red.D.is_diagonal() && red.P * a * red.Q == red.D && red.P * red.P_inv == im &&
         red.P_inv * red.P == im && red.Q * red.Q_inv == in && red.Q_inv * red.Q == in;
}

bool is_total_divisor(const Element& a, const Element& b, const Budget& budget) {
  require_same_ring(a.ring(), b.ring(), "is_total_divisor");
  const Ring& r = a.ring();
  if (a.is_one() || b.is_zero()) return true;
  const auto card = r.cardinality();
  if (card && *card <= budget.cardinality) {
    for (std::size_t i = 0; i < *card; ++i)
      if (r.mul(a.value(), r.value_at(i)) == b.value()) return true;
    return false;
  }
  if (r.is_euclidean()) {
    if (a.is_zero()) return false;
    return r.is_zero(r.divmod(b.value(), a.value()).second);
  }
  if (r.kind() == RingKind::product) {
    for (std::size_t k = 0; k < r.factors().size(); ++k) {
      const Ring& f = r.factors()[k];
      if (!is_total_divisor(Element(f, a.value().parts()[k]), Element(f, b.value().parts()[k]), budget))
        return false;
    }
    return true;
  }
  throw UnsupportedDescriptor("is_total_divisor is not available over " + r.name());
}

bool elementary_divisor_chain_check(const DiagonalReduction& red, const Budget& budget) {
  const auto d = red.D.diagonal_entries();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!is_total_divisor(d[i], d[i + 1], budget)) return false;
  return true;
}

namespace {

bool structural_elements(const Ring& r) {
  switch (r.kind()) {
    case RingKind::integers:
    case RingKind::modular:
    case RingKind::prime_field: return true;
    case RingKind::polynomial: return r.base().is_field();
    case RingKind::product: return std::all_of(r.factors().begin(), r.factors().end(), structural_elements);
    default: return false;
  }
}

std::optional<Matrix> regular_structural(const Matrix& f, const Budget& budget) {
  const Ring& r = f.ring();
  if (!supports_diagonal_reduction(r) || !structural_elements(r))
    throw UnsupportedDescriptor("no structural regularity test for matrices over " + r.name());
  const DiagonalReduction red = diagonal_reduction(f);
  Matrix g(r, f.cols(), f.rows());
  const auto diag = red.D.diagonal_entries();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const auto w = regular_witness(diag[i], RegularityMethod::structural, budget);
    if (!w) return std::nullopt;
    g.set(i, i, w->value());
  }
  return red.Q * g * red.P;
}

std::optional<Matrix> regular_brute_force(const Matrix& f, const Budget& budget) {
  const Ring& r = f.ring();
  const std::size_t q = r.finite_size(budget);
  const std::size_t cells = f.rows() * f.cols();
  budget.require_search(saturating_pow(q, cells), "regular_matrix_witness");
  std::vector<Value> elems;
  for (std::size_t i = 0; i < q; ++i) elems.push_back(r.value_at(i));
  std::vector<std::size_t> digit(cells, 0);
  for (;;) {
    std::vector<Value> entries;
    entries.reserve(cells);
    for (std::size_t d : digit) entries.push_back(elems[d]);
    Matrix g(r, f.cols(), f.rows(), std::move(entries));
    if (f * g * f == f) return g;
    std::size_t k = cells;
    while (k > 0 && digit[k - 1] + 1 == q) digit[--k] = 0;
    if (k == 0) return std::nullopt;
    ++digit[k - 1];
  }
}

}  // namespace

std::optional<Matrix> regular_matrix_witness(const Matrix& f, RegularityMethod method, const Budget& budget) {
  std::optional<Matrix> g;
  switch (method) {
    case RegularityMethod::structural: g = regular_structural(f, budget); break;
    case RegularityMethod::brute_force: g = regular_brute_force(f, budget); break;
    case RegularityMethod::automatic:
      g = supports_diagonal_reduction(f.ring()) && structural_elements(f.ring()) ? regular_structural(f, budget)
                                                                                   : regular_brute_force(f, budget);
      break;
  }
  if (g && !(f * *g * f == f)) throw std::logic_error("matrix regularity witness failed to verify");
  return g;
}

}  // namespace refring
