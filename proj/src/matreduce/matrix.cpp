#include "refring/matrix.hpp"

#include <sstream>

#include "refring/errors.hpp"

namespace refring {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, ring_.zero_value()) {}

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Value> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw PreconditionViolated("matrix expects " + std::to_string(rows_ * cols_) + " entries, got " +
                               std::to_string(entries_.size()));
}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, ring.one_value());
  return m;
}

Matrix Matrix::from_elements(const Ring& ring, std::size_t rows, std::size_t cols,
                             const std::vector<Element>& entries) {
  std::vector<Value> values;
  values.reserve(entries.size());
  for (const auto& e : entries) {
    require_same_ring(e.ring(), ring, "matrix entry");
    values.push_back(e.value());
  }
  return Matrix(ring, rows, cols, std::move(values));
}

Matrix Matrix::parse(const Ring& ring, std::size_t rows, std::size_t cols,
                     const std::vector<std::string>& entries) {
  std::vector<Value> values;
  values.reserve(entries.size());
  for (const auto& s : entries) values.push_back(ring.parse_element(s).value());
  return Matrix(ring, rows, cols, std::move(values));
}

Matrix Matrix::diagonal(const Ring& ring, std::size_t rows, std::size_t cols,
                        const std::vector<Element>& diag) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m.set(i, i, diag[i]);
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, const Element& e) {
  require_same_ring(e.ring(), ring_, "matrix entry");
  set(i, j, e.value());
}

Matrix Matrix::operator*(const Matrix& other) const {
  require_same_ring(ring_, other.ring_, "matrix product");
  if (cols_ != other.rows_) throw PreconditionViolated("matrix product shape mismatch");
  Matrix out(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Value& a = value(i, k);
      if (ring_.is_zero(a)) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out.entries_[i * out.cols_ + j] = ring_.add(out.value(i, j), ring_.mul(a, other.value(k, j)));
    }
  }
  return out;
}

bool Matrix::operator==(const Matrix& other) const {
  return ring_ == other.ring_ && rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !ring_.is_zero(value(i, j))) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& v : entries_)
    if (!ring_.is_zero(v)) return false;
  return true;
}

std::vector<Element> Matrix::diagonal_entries() const {
  std::vector<Element> d;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) d.push_back(at(i, i));
  return d;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, value(i, j));
  return t;
}

Matrix Matrix::mapped(const RingHomomorphism& hom) const {
  require_same_ring(ring_, hom.source, "mapped");
  std::vector<Value> out;
  out.reserve(entries_.size());
  for (const auto& v : entries_) out.push_back(hom.map(v));
  return Matrix(hom.target, rows_, cols_, std::move(out));
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(entries_[a * cols_ + j], entries_[b * cols_ + j]);
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(entries_[i * cols_ + a], entries_[i * cols_ + b]);
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const Value& c) {
  if (ring_.is_zero(c)) return;
  for (std::size_t j = 0; j < cols_; ++j)
    entries_[target * cols_ + j] = ring_.add(value(target, j), ring_.mul(c, value(source, j)));
}

void Matrix::add_col_multiple(std::size_t target, std::size_t source, const Value& c) {
  if (ring_.is_zero(c)) return;
  for (std::size_t i = 0; i < rows_; ++i)
    entries_[i * cols_ + target] = ring_.add(value(i, target), ring_.mul(value(i, source), c));
}

void Matrix::scale_row(std::size_t r, const Value& c) {
  for (std::size_t j = 0; j < cols_; ++j) entries_[r * cols_ + j] = ring_.mul(c, value(r, j));
}

void Matrix::scale_col(std::size_t c, const Value& v) {
  for (std::size_t i = 0; i < rows_; ++i) entries_[i * cols_ + c] = ring_.mul(value(i, c), v);
}

std::vector<std::string> Matrix::entry_strings() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& v : entries_) out.push_back(ring_.format(v));
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ", ";
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ", ";
      out << ring_.format(value(i, j));
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

std::vector<Matrix> all_matrices(const Ring& ring, std::size_t rows, std::size_t cols, const Budget& budget) {
  const std::size_t q = ring.finite_size(budget);
  const std::size_t cells = rows * cols;
  budget.require_search(saturating_pow(q, cells), "all_matrices");
  std::vector<Value> elems;
  for (std::size_t i = 0; i < q; ++i) elems.push_back(ring.value_at(i));
  std::vector<Matrix> out;
  std::vector<std::size_t> digit(cells, 0);
  for (;;) {
    std::vector<Value> entries;
    entries.reserve(cells);
    for (std::size_t d : digit) entries.push_back(elems[d]);
    out.emplace_back(ring, rows, cols, std::move(entries));
    std::size_t k = cells;
    while (k > 0 && digit[k - 1] + 1 == q) digit[--k] = 0;
    if (k == 0) break;
    ++digit[k - 1];
  }
  return out;
}

}  // namespace refring
