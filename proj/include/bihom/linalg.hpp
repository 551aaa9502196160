#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bihom/scalar.hpp"

namespace bihom {

/// Coefficient vector with respect to the basis e_1..e_n (stored 0-based).
using Vector = std::vector<Scalar>;

inline Vector zero_vector(std::size_t n) { return Vector(n); }

inline Vector basis_vector(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("basis index out of range");
  Vector v(n);
  v[i] = 1;
  return v;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Scalar& c) { return sgn(c) == 0; });
}

/// acc += c * v
inline void add_scaled(Vector& acc, const Scalar& c, const Vector& v) {
  if (acc.size() != v.size()) throw std::invalid_argument("dimension mismatch");
  if (sgn(c) == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) acc[i] += c * v[i];
}

inline Vector operator+(Vector a, const Vector& b) {
  add_scaled(a, 1, b);
  return a;
}

inline Vector operator-(Vector a, const Vector& b) {
  add_scaled(a, -1, b);
  return a;
}

inline Vector operator*(const Scalar& c, Vector v) {
  for (auto& x : v) x *= c;
  return v;
}

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_)
        throw std::invalid_argument("ragged matrix rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& cols,
                             std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows)
        throw std::invalid_argument("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vector row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Vector operator*(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
    Vector out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(v[c]) == 0) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Scalar& a = (*this)(r, c);
        if (sgn(a) != 0) out[r] += a * v[c];
      }
    }
    return out;
  }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = (*this)(r, k);
        if (sgn(a) == 0) continue;
        for (std::size_t c = 0; c < other.cols_; ++c)
          if (sgn(other(k, c)) != 0) out(r, c) += a * other(k, c);
      }
    return out;
  }

  Matrix operator+(const Matrix& other) const {
    check_same_shape(other);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& other) const {
    check_same_shape(other);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
  }

  friend Matrix operator*(const Scalar& c, Matrix m) {
    for (auto& x : m.data_) x *= c;
    return m;
  }

  bool is_zero() const { return bihom::is_zero(data_); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw std::invalid_argument("dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

namespace detail {

// Fraction-free row echelon form of an integer matrix (Bareiss). Every
// division is exact because intermediate entries are minors of the input.
struct EchelonForm {
  std::vector<std::vector<mpz_class>> rows;
  std::vector<std::size_t> pivot_columns;
};

inline std::vector<mpz_class> integer_row(const Matrix& a, std::size_t r,
                                          std::size_t extra_cols = 0,
                                          const Vector* extra = nullptr) {
  const std::size_t n = a.cols() + extra_cols;
  mpz_class lcm = 1;
  for (std::size_t c = 0; c < a.cols(); ++c)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(r, c).get_den_mpz_t());
  if (extra) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), (*extra)[r].get_den_mpz_t());
  std::vector<mpz_class> out(n);
  for (std::size_t c = 0; c < a.cols(); ++c)
    out[c] = a(r, c).get_num() * (lcm / a(r, c).get_den());
  if (extra) out[a.cols()] = (*extra)[r].get_num() * (lcm / (*extra)[r].get_den());
  return out;
}

inline EchelonForm fraction_free_echelon(std::vector<std::vector<mpz_class>> m,
                                         std::size_t cols) {
  EchelonForm ef;
  mpz_class previous = 1;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < m.size(); ++c) {
    std::size_t p = pivot_row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[pivot_row]);
    const mpz_class pivot = m[pivot_row][c];
    for (std::size_t r = pivot_row + 1; r < m.size(); ++r) {
      const mpz_class lead = m[r][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = pivot * m[r][j] - lead * m[pivot_row][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
        m[r][j] = std::move(t);
      }
      m[r][c] = 0;
    }
    // Rows above the pivot row keep their scale; only rows below are updated.
    previous = pivot;
    ef.pivot_columns.push_back(c);
    ++pivot_row;
  }
  m.resize(pivot_row);
  ef.rows = std::move(m);
  return ef;
}

// Back substitution on an echelon form, with the free variables fixed.
inline Vector back_substitute(const EchelonForm& ef, std::size_t unknowns,
                              Vector x, const std::vector<mpz_class>* rhs) {
  for (std::size_t k = ef.pivot_columns.size(); k-- > 0;) {
    const auto& row = ef.rows[k];
    const std::size_t pc = ef.pivot_columns[k];
    Scalar sum = rhs ? Scalar((*rhs)[k]) : Scalar(0);
    for (std::size_t j = pc + 1; j < unknowns; ++j)
      if (row[j] != 0 && sgn(x[j]) != 0) sum -= Scalar(row[j]) * x[j];
    x[pc] = sum / Scalar(row[pc]);
  }
  return x;
}

}  // namespace detail

/// Exact basis of {v : A v = 0}. One vector per free column, with that free
/// variable set to 1 and the other free variables set to 0.
inline std::vector<Vector> kernel_basis(const Matrix& a) {
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(detail::integer_row(a, r));
  const auto ef = detail::fraction_free_echelon(std::move(rows), a.cols());

  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ef.pivot_columns) is_pivot[c] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector x(a.cols());
    x[free] = 1;
    basis.push_back(detail::back_substitute(ef, a.cols(), std::move(x), nullptr));
  }
  return basis;
}

inline std::size_t rank(const Matrix& a) {
  return a.cols() - kernel_basis(a).size();
}

/// Some solution of A x = b (free variables set to 0), or nullopt when the
/// system is inconsistent.
inline std::optional<Vector> solve_affine(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("dimension mismatch");
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    rows.push_back(detail::integer_row(a, r, 1, &b));
  const auto ef = detail::fraction_free_echelon(std::move(rows), a.cols() + 1);
  if (!ef.pivot_columns.empty() && ef.pivot_columns.back() == a.cols())
    return std::nullopt;

  std::vector<mpz_class> rhs;
  rhs.reserve(ef.rows.size());
  for (const auto& row : ef.rows) rhs.push_back(row[a.cols()]);
  return detail::back_substitute(ef, a.cols(), Vector(a.cols()), &rhs);
}

/// Exact inverse by Gauss-Jordan elimination; nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
  const std::size_t n = a.rows();
  Matrix m = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Scalar scale = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m(r, c)) == 0) continue;
      const Scalar f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace bihom
