#pragma once

// Exact dense linear algebra over Q (default) or a prime field F_p.
//
// Entries are stored as GMP rationals. In F_p mode every stored entry is the
// canonical integer representative in [0, p); all Matrix operations keep that
// invariant, so equality and zero tests are plain comparisons.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace towerkit {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string name() const;

  Rational normalize(const Rational& x) const;
  Rational inverse(const Rational& x) const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = {});

  static Matrix identity(std::size_t n, Field field = {});
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols,
                          Field field = {});
  static Matrix column_vector(const std::vector<Rational>& v, Field field = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& value);
  void add_to(std::size_t i, std::size_t j, const Rational& value);

  bool is_zero() const;
  Matrix transpose() const;
  Matrix column(std::size_t j) const;
  Matrix select_columns(const std::vector<std::size_t>& which) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  std::vector<Rational> column_values(std::size_t j) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, const Matrix& m);

  bool operator==(const Matrix& other) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<Rational> data_;
};

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row

  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form; pivots are the leftmost nonzero entries.
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Columns form a basis of { x : m x = 0 }, one per free column in rref order.
Matrix kernel(const Matrix& m);

/// Pivot columns of m, i.e. a basis of its column space taken from m itself.
Matrix column_basis(const Matrix& m);

/// Unit vectors of k^ambient that complete the columns of `span` to a basis.
Matrix complement_basis(const Matrix& span, std::size_t ambient);

std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

/// True when every column of `vectors` lies in the column span of `span`.
bool in_span(const Matrix& span, const Matrix& vectors);

}  // namespace towerkit
