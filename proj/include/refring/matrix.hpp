#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "refring/budget.hpp"
#include "refring/ring.hpp"

namespace refring {

/// Dense row-major matrix over a Ring, entries canonical.
class Matrix {
 public:
  Matrix(Ring ring, std::size_t rows, std::size_t cols);
  Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Value> entries);
  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix from_elements(const Ring& ring, std::size_t rows, std::size_t cols,
                              const std::vector<Element>& entries);
  /// Entries parsed with the ring's element syntax, row-major.
  static Matrix parse(const Ring& ring, std::size_t rows, std::size_t cols,
                      const std::vector<std::string>& entries);
  static Matrix diagonal(const Ring& ring, std::size_t rows, std::size_t cols,
                         const std::vector<Element>& diag);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Value& value(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Element at(std::size_t i, std::size_t j) const { return Element(ring_, value(i, j)); }
  void set(std::size_t i, std::size_t j, Value v) { entries_[i * cols_ + j] = std::move(v); }
  void set(std::size_t i, std::size_t j, const Element& e);
  const std::vector<Value>& values() const { return entries_; }

  Matrix operator*(const Matrix& other) const;
  bool operator==(const Matrix& other) const;

  bool is_diagonal() const;
  bool is_zero() const;
  std::vector<Element> diagonal_entries() const;
  Matrix transpose() const;
  /// Entrywise image under a ring map (target ring of `hom`).
  Matrix mapped(const RingHomomorphism& hom) const;

  // Elementary operations, in place.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += c * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Value& c);
  /// col[target] += c * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Value& c);
  void scale_row(std::size_t r, const Value& c);
  void scale_col(std::size_t c, const Value& v);

  /// `[[a, b], [c, d]]` using element text.
  std::string to_string() const;
  std::vector<std::string> entry_strings() const;

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Value> entries_;
};

/// Every rows x cols matrix over a finite ring, enumerated with the last
/// entry fastest. Throws BudgetExceeded beyond `budget.search` matrices.
std::vector<Matrix> all_matrices(const Ring& ring, std::size_t rows, std::size_t cols,
                                 const Budget& budget);

}  // namespace refring
