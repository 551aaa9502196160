#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bihom/graded.hpp"
#include "bihom/linalg.hpp"

namespace bihom {

namespace detail {

inline std::string index_list(const std::size_t* idx, std::size_t n) {
  std::string s = "(";
  for (std::size_t k = 0; k < n; ++k) {
    if (k) s += ",";
    s += std::to_string(idx[k] + 1);
  }
  return s + ")";
}

}  // namespace detail

/// Sparse even multilinear map g^Arity -> g stored as structure constants.
/// A key (i_1, ..., i_Arity, k) maps to c with
/// [e_{i_1}, ..., e_{i_Arity}] = sum_k c e_k. Keys are kept in lexicographic
/// order and zero constants are never stored.
template <std::size_t Arity>
class StructureTensor {
 public:
  using Key = std::array<std::size_t, Arity + 1>;
  using Args = std::array<std::size_t, Arity>;

  explicit StructureTensor(SuperSpace space) : space_(std::move(space)) {}

  StructureTensor(SuperSpace space, const std::map<Key, Scalar>& entries)
      : space_(std::move(space)) {
    for (const auto& [key, value] : entries) set(key, value);
  }

  /// Builds the tensor from its values on basis tuples.
  static StructureTensor from_basis(
      const SuperSpace& space, const std::function<Vector(const Args&)>& value) {
    StructureTensor t(space);
    Args args{};
    const std::size_t n = space.dim();
    std::size_t total = 1;
    for (std::size_t k = 0; k < Arity; ++k) total *= n;
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      for (std::size_t k = Arity; k-- > 0;) {
        args[k] = rest % n;
        rest /= n;
      }
      const Vector v = value(args);
      space.check_dim(v.size());
      for (std::size_t out = 0; out < n; ++out) {
        if (sgn(v[out]) == 0) continue;
        Key key{};
        for (std::size_t k = 0; k < Arity; ++k) key[k] = args[k];
        key[Arity] = out;
        t.set(key, v[out]);
      }
    }
    return t;
  }

  const SuperSpace& space() const { return space_; }
  const std::map<Key, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Scalar coefficient(const Key& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  /// Value on basis elements e_{args[0]}, ..., e_{args[Arity-1]}.
  Vector eval(const Args& args) const {
    for (auto i : args)
      if (i >= space_.dim()) throw std::out_of_range("basis index out of range");
    Vector out(space_.dim());
    Key lo{};
    for (std::size_t k = 0; k < Arity; ++k) lo[k] = args[k];
    lo[Arity] = 0;
    for (auto it = entries_.lower_bound(lo); it != entries_.end(); ++it) {
      bool same = true;
      for (std::size_t k = 0; k < Arity; ++k) same = same && it->first[k] == args[k];
      if (!same) break;
      out[it->first[Arity]] = it->second;
    }
    return out;
  }

  /// Multilinear extension to coefficient vectors.
  Vector eval(const std::array<const Vector*, Arity>& args) const {
    for (auto* v : args) space_.check_dim(v->size());
    Vector out(space_.dim());
    Scalar coeff;
    for (const auto& [key, c] : entries_) {
      coeff = c;
      bool zero = false;
      for (std::size_t k = 0; k < Arity && !zero; ++k) {
        const Scalar& a = (*args[k])[key[k]];
        if (sgn(a) == 0) zero = true;
        else coeff *= a;
      }
      if (!zero) out[key[Arity]] += coeff;
    }
    return out;
  }

  StructureTensor operator+(const StructureTensor& other) const {
    check_same_space(other);
    StructureTensor out = *this;
    for (const auto& [key, value] : other.entries_) out.add(key, value);
    return out;
  }
  StructureTensor operator-(const StructureTensor& other) const {
    return *this + Scalar(-1) * other;
  }
  friend StructureTensor operator*(const Scalar& c, const StructureTensor& t) {
    StructureTensor out(t.space_);
    if (sgn(c) == 0) return out;
    for (const auto& [key, value] : t.entries_) out.entries_.emplace(key, c * value);
    return out;
  }

  friend bool operator==(const StructureTensor& a, const StructureTensor& b) {
    return a.space_ == b.space_ && a.entries_ == b.entries_;
  }

  void check_same_space(const StructureTensor& other) const {
    if (!(space_ == other.space_))
      throw std::invalid_argument("tensors live on different spaces");
  }

 private:
  void check_key(const Key& key) const {
    Parity expected = Parity::even;
    for (std::size_t k = 0; k <= Arity; ++k)
      if (key[k] >= space_.dim())
        throw std::out_of_range("structure constant index " +
                                detail::index_list(key.data(), Arity + 1) +
                                " out of range");
    for (std::size_t k = 0; k < Arity; ++k) expected = expected + space_.parity(key[k]);
    if (space_.parity(key[Arity]) != expected)
      throw std::invalid_argument("structure constant " +
                                  detail::index_list(key.data(), Arity + 1) +
                                  " violates parity additivity");
  }

  void set(const Key& key, const Scalar& value) {
    if (sgn(value) == 0) {
      entries_.erase(key);
      return;
    }
    check_key(key);
    entries_[key] = value;
  }

  void add(const Key& key, const Scalar& value) {
    Scalar sum = coefficient(key) + value;
    set(key, sum);
  }

  SuperSpace space_;
  std::map<Key, Scalar> entries_;
};

using StructureTensor2 = StructureTensor<2>;
using StructureTensor3 = StructureTensor<3>;

inline Vector eval2(const StructureTensor2& t, std::size_t i, std::size_t j) {
  return t.eval({i, j});
}
inline Vector eval2(const StructureTensor2& t, const Vector& u, const Vector& v) {
  return t.eval(std::array<const Vector*, 2>{&u, &v});
}
inline Vector eval3(const StructureTensor3& t, std::size_t i, std::size_t j,
                    std::size_t l) {
  return t.eval({i, j, l});
}
inline Vector eval3(const StructureTensor3& t, const Vector& u, const Vector& v,
                    const Vector& w) {
  return t.eval(std::array<const Vector*, 3>{&u, &v, &w});
}

/// x_1 ^ x_2 with homogeneous components. Tensors are evaluated on it
/// slot-wise: w(X, z) = w(x_1, x_2, z).
struct WedgePair {
  Vector first;
  Vector second;
  Parity first_parity = Parity::even;
  Parity second_parity = Parity::even;

  static WedgePair make(const SuperSpace& space, Vector a, Vector b) {
    auto pa = space.parity_of(a);
    auto pb = space.parity_of(b);
    if (!pa || !pb)
      throw std::invalid_argument("wedge components must be homogeneous");
    return {std::move(a), std::move(b), *pa, *pb};
  }
  static WedgePair basis(const SuperSpace& space, std::size_t i, std::size_t j) {
    return {basis_vector(space.dim(), i), basis_vector(space.dim(), j),
            space.parity(i), space.parity(j)};
  }

  Parity parity() const { return first_parity + second_parity; }

  WedgePair swapped() const {
    return {second, first, second_parity, first_parity};
  }

  /// Applies an even map to both components.
  WedgePair mapped(const GradedMap& m) const {
    return {m.apply(first), m.apply(second), first_parity + m.parity(),
            second_parity + m.parity()};
  }
};

/// w(X, z) for a ternary tensor.
inline Vector eval_wedge(const StructureTensor3& t, const WedgePair& x,
                         const Vector& z) {
  return eval3(t, x.first, x.second, z);
}

}  // namespace bihom
