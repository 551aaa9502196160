#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bihom/linalg.hpp"
#include "bihom/scalar.hpp"

namespace bihom {

/// Finite-dimensional Z2-graded space g = g_0 + g_1 given by the parities of
/// its basis e_1..e_n.
class SuperSpace {
 public:
  explicit SuperSpace(std::vector<Parity> parities)
      : parities_(std::move(parities)) {
    if (parities_.empty())
      throw std::invalid_argument("super space must have dimension >= 1");
  }

  std::size_t dim() const { return parities_.size(); }
  Parity parity(std::size_t i) const { return parities_.at(i); }
  const std::vector<Parity>& parities() const { return parities_; }

  /// Parity of a homogeneous vector; nullopt when the support mixes
  /// parities. The zero vector is reported as even.
  std::optional<Parity> parity_of(const Vector& v) const {
    check_dim(v.size());
    std::optional<Parity> found;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) == 0) continue;
      if (found && *found != parities_[i]) return std::nullopt;
      found = parities_[i];
    }
    return found.value_or(Parity::even);
  }

  void check_dim(std::size_t n) const {
    if (n != dim())
      throw std::invalid_argument("dimension mismatch: expected " +
                                  std::to_string(dim()) + ", got " +
                                  std::to_string(n));
  }

  friend bool operator==(const SuperSpace&, const SuperSpace&) = default;

 private:
  std::vector<Parity> parities_;
};

/// Homogeneous linear endomorphism; column i of the matrix is the image of
/// e_i. Entry (k, i) may be nonzero only if |e_k| = |e_i| + parity.
class GradedMap {
 public:
  GradedMap(SuperSpace space, Matrix matrix, Parity parity)
      : space_(std::move(space)), matrix_(std::move(matrix)), parity_(parity) {
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim())
      throw std::invalid_argument("map matrix must be dim x dim");
    for (std::size_t k = 0; k < space_.dim(); ++k)
      for (std::size_t i = 0; i < space_.dim(); ++i)
        if (sgn(matrix_(k, i)) != 0 &&
            space_.parity(k) != space_.parity(i) + parity_)
          throw std::invalid_argument(
              "map entry (" + std::to_string(k + 1) + "," +
              std::to_string(i + 1) + ") violates the declared parity");
  }

  static GradedMap identity(const SuperSpace& space) {
    return {space, Matrix::identity(space.dim()), Parity::even};
  }
  static GradedMap zero(const SuperSpace& space, Parity parity = Parity::even) {
    return {space, Matrix(space.dim(), space.dim()), parity};
  }
  static GradedMap scalar(const SuperSpace& space, const Scalar& c) {
    return {space, c * Matrix::identity(space.dim()), Parity::even};
  }
  static GradedMap diagonal(const SuperSpace& space, const Vector& entries) {
    space.check_dim(entries.size());
    Matrix m(space.dim(), space.dim());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return {space, std::move(m), Parity::even};
  }

  const SuperSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  Parity parity() const { return parity_; }
  std::size_t dim() const { return space_.dim(); }

  Vector apply(const Vector& v) const {
    space_.check_dim(v.size());
    return matrix_ * v;
  }
  Vector image(std::size_t i) const { return matrix_.column(i); }

  /// (*this) o other
  GradedMap compose(const GradedMap& other) const {
    check_same_space(other);
    return {space_, matrix_ * other.matrix_, parity_ + other.parity_};
  }

  GradedMap power(unsigned n) const {
    GradedMap out = identity(space_);
    for (unsigned k = 0; k < n; ++k) out = compose(out);
    return out;
  }

  bool commutes_with(const GradedMap& other) const {
    check_same_space(other);
    return matrix_ * other.matrix_ == other.matrix_ * matrix_;
  }

  std::optional<GradedMap> inverse() const {
    auto inv = bihom::inverse(matrix_);
    if (!inv) return std::nullopt;
    return GradedMap(space_, std::move(*inv), parity_);
  }

  bool is_idempotent() const { return matrix_ * matrix_ == matrix_; }

  GradedMap operator+(const GradedMap& other) const {
    check_same_space(other);
    if (parity_ != other.parity_)
      throw std::invalid_argument("sum of maps of different parity");
    return {space_, matrix_ + other.matrix_, parity_};
  }
  GradedMap operator-(const GradedMap& other) const {
    check_same_space(other);
    if (parity_ != other.parity_)
      throw std::invalid_argument("difference of maps of different parity");
    return {space_, matrix_ - other.matrix_, parity_};
  }
  friend GradedMap operator*(const Scalar& c, const GradedMap& m) {
    return {m.space_, c * m.matrix_, m.parity_};
  }

  void check_same_space(const GradedMap& other) const {
    if (!(space_ == other.space_))
      throw std::invalid_argument("maps act on different spaces");
  }

  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.space_ == b.space_ && a.parity_ == b.parity_ &&
           a.matrix_ == b.matrix_;
  }

 private:
  SuperSpace space_;
  Matrix matrix_;
  Parity parity_;
};

/// Splits an arbitrary endomorphism into its even and odd parts.
inline std::pair<GradedMap, GradedMap> split_homogeneous(const SuperSpace& space,
                                                         const Matrix& m) {
  Matrix even(space.dim(), space.dim());
  Matrix odd(space.dim(), space.dim());
  for (std::size_t k = 0; k < space.dim(); ++k)
    for (std::size_t i = 0; i < space.dim(); ++i)
      (space.parity(k) == space.parity(i) ? even : odd)(k, i) = m(k, i);
  return {GradedMap(space, std::move(even), Parity::even),
          GradedMap(space, std::move(odd), Parity::odd)};
}

/// Commutation check M o M2 == M2 o M.
inline bool commute(const GradedMap& m, const GradedMap& m2) {
  return m.commutes_with(m2);
}

inline Vector apply(const GradedMap& m, const Vector& v) { return m.apply(v); }

/// Linear form tau: g -> K. Must vanish on the odd part.
class LinearForm {
 public:
  LinearForm(SuperSpace space, Vector coefficients)
      : space_(std::move(space)), coefficients_(std::move(coefficients)) {
    space_.check_dim(coefficients_.size());
    for (std::size_t i = 0; i < coefficients_.size(); ++i)
      if (is_odd(space_.parity(i)) && sgn(coefficients_[i]) != 0)
        throw std::invalid_argument("linear form must vanish on odd basis vector e_" +
                                    std::to_string(i + 1));
  }

  static LinearForm zero(const SuperSpace& space) {
    return {space, Vector(space.dim())};
  }

  const SuperSpace& space() const { return space_; }
  const Vector& coefficients() const { return coefficients_; }
  const Scalar& operator[](std::size_t i) const { return coefficients_.at(i); }

  Scalar operator()(const Vector& v) const {
    space_.check_dim(v.size());
    Scalar out = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(coefficients_[i]) != 0) out += coefficients_[i] * v[i];
    return out;
  }

  /// Row of tau o m as plain coefficients.
  Vector after(const GradedMap& m) const {
    Vector out(space_.dim());
    for (std::size_t i = 0; i < space_.dim(); ++i) out[i] = (*this)(m.image(i));
    return out;
  }

  LinearForm scaled(const Scalar& c) const { return {space_, c * coefficients_}; }

  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.space_ == b.space_ && a.coefficients_ == b.coefficients_;
  }

 private:
  SuperSpace space_;
  Vector coefficients_;
};

}  // namespace bihom
