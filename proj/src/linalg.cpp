#include "towerkit/linalg.hpp"

#include <sstream>

#include "towerkit/error.hpp"

namespace towerkit {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  std::size_t start = (s.front() == '-') ? 1 : 0;
  bool saw_digit = false;
  bool saw_slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      saw_digit = true;
    } else if (c == '/' && !saw_slash && saw_digit && i + 1 < s.size()) {
      saw_slash = true;
    } else {
      throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
    }
  }
  if (!saw_digit) throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Field Field::prime(std::uint64_t p) {
  mpz_class z(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
    throw Error(ErrorCode::FieldCharacteristic, "modulus " + std::to_string(p) + " is not prime");
  }
  return Field(p);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

Rational Field::normalize(const Rational& x) const {
  if (p_ == 0) return x;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den == 0) {
    throw Error(ErrorCode::FieldCharacteristic,
                "denominator of " + x.get_str() + " vanishes in " + name());
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * inv) % p;
  return Rational(r);
}

Rational Field::inverse(const Rational& x) const {
  if (x == 0) throw Error(ErrorCode::Internal, "inverse of zero");
  if (p_ == 0) return 1 / x;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class v = x.get_num();
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return Rational(inv);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols,
                         Field field) {
  Matrix m(rows.size(), cols, field);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::Parse, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column_vector(const std::vector<Rational>& v, Field field) {
  Matrix m(v.size(), 1, field);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, const Rational& value) {
  data_[i * cols_ + j] = field_.normalize(value);
}

void Matrix::add_to(std::size_t i, std::size_t j, const Rational& value) {
  Rational& slot = data_[i * cols_ + j];
  slot = field_.normalize(slot + value);
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

Matrix Matrix::column(std::size_t j) const { return block(0, j, rows_, 1); }

Matrix Matrix::select_columns(const std::vector<std::size_t>& which) const {
  Matrix m(rows_, which.size(), field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < which.size(); ++k) m.data_[i * which.size() + k] = (*this)(i, which[k]);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::Internal, "block out of range");
  Matrix m(nr, nc, field_);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m.data_[i * nc + j] = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw Error(ErrorCode::Internal, "set_block out of range");
  if (!(m.field_ == field_)) throw Error(ErrorCode::Internal, "set_block across fields");
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = m(i, j);
}

std::vector<Rational> Matrix::column_values(std::size_t j) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_ || !(field_ == other.field_))
    throw Error(ErrorCode::Internal, "matrix sum shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (other.data_[k] != 0) data_[k] = field_.normalize(data_[k] + other.data_[k]);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_ || !(field_ == other.field_))
    throw Error(ErrorCode::Internal, "matrix difference shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (other.data_[k] != 0) data_[k] = field_.normalize(data_[k] - other.data_[k]);
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_ || !(a.field_ == b.field_))
    throw Error(ErrorCode::Internal, "matrix product shape mismatch " + std::to_string(a.rows_) + "x" +
                                         std::to_string(a.cols_) + " * " + std::to_string(b.rows_) +
                                         "x" + std::to_string(b.cols_));
  Matrix c(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (bkj != 0) c.data_[i * c.cols_ + j] += aik * bkj;
      }
    }
  }
  if (!a.field_.is_rational())
    for (auto& x : c.data_) x = a.field_.normalize(x);
  return c;
}

Matrix operator*(const Rational& s, const Matrix& m) {
  Matrix r(m.rows_, m.cols_, m.field_);
  Rational sn = m.field_.normalize(s);
  if (sn == 0) return r;
  for (std::size_t k = 0; k < m.data_.size(); ++k)
    if (m.data_[k] != 0) r.data_[k] = m.field_.normalize(sn * m.data_[k]);
  return r;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && field_ == other.field_ && data_ == other.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j).get_str();
    out << "]";
  }
  out << "]";
  return out.str();
}

Echelon rref(const Matrix& m) {
  const Field f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = f.inverse(a[r][c]);
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (a[r][j] != 0) {
        a[r][j] = f.normalize(a[r][j] * inv);
        support.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational factor = a[i][c];
      for (std::size_t j : support) a[i][j] = f.normalize(a[i][j] - factor * a[r][j]);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(rows, cols, f);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0) reduced.set(i, j, a[i][j]);
  return Echelon{std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rref(m).rank();
}

Matrix kernel(const Matrix& m) {
  const std::size_t n = m.cols();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix k(n, free_cols.size(), m.field());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::size_t fcol = free_cols[t];
    k.set(fcol, t, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const Rational& v = e.reduced(r, fcol);
      if (v != 0) k.set(e.pivots[r], t, -v);
    }
  }
  return k;
}

Matrix column_basis(const Matrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0, m.field());
  return m.select_columns(rref(m).pivots);
}

Matrix complement_basis(const Matrix& span, std::size_t ambient) {
  if (span.rows() != ambient) throw Error(ErrorCode::Internal, "complement_basis: ambient mismatch");
  // Pivots of rref([span | I]) beyond the span columns select the unit vectors.
  Matrix joined = hstack(span, Matrix::identity(ambient, span.field()));
  Echelon e = rref(joined);
  std::vector<std::size_t> chosen;
  for (auto p : e.pivots)
    if (p >= span.cols()) chosen.push_back(p - span.cols());
  Matrix c(ambient, chosen.size(), span.field());
  for (std::size_t t = 0; t < chosen.size(); ++t) c.set(chosen[t], t, 1);
  return c;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::Internal, "solve: row mismatch");
  const std::size_t n = a.cols();
  Matrix x(n, b.cols(), a.field());
  if (a.rows() == 0) return x;
  Echelon e = rref(hstack(a, b));
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    if (e.pivots[r] >= n) return std::nullopt;
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(e.pivots[r], j, e.reduced(r, n + j));
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix::identity(m.rows(), m.field()));
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::Internal, "hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols(), a.field());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::Internal, "vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols(), a.field());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

bool in_span(const Matrix& span, const Matrix& vectors) {
  if (vectors.cols() == 0) return true;
  return rank(hstack(span, vectors)) == rank(span);
}

}  // namespace towerkit
