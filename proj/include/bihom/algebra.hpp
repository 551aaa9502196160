#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bihom/graded.hpp"
#include "bihom/report.hpp"
#include "bihom/tensor.hpp"

namespace bihom {

/// (g, bracket, alpha, beta) with an Arity-ary even bracket and two even
/// twisting maps. `multiplicative` is only a claim; the verifiers never read it.
template <std::size_t Arity>
class BiHomAlgebra {
 public:
  BiHomAlgebra(StructureTensor<Arity> bracket, GradedMap alpha, GradedMap beta,
               bool multiplicative = false)
      : bracket_(std::move(bracket)),
        alpha_(std::move(alpha)),
        beta_(std::move(beta)),
        multiplicative_(multiplicative) {
    if (!(alpha_.space() == bracket_.space()) || !(beta_.space() == bracket_.space()))
      throw std::invalid_argument("twisting maps and bracket must share a space");
    if (alpha_.parity() != Parity::even || beta_.parity() != Parity::even)
      throw std::invalid_argument("twisting maps must be even");
  }

  /// Untwisted algebra (alpha = beta = Id).
  static BiHomAlgebra untwisted(StructureTensor<Arity> bracket) {
    auto id = GradedMap::identity(bracket.space());
    return BiHomAlgebra(std::move(bracket), id, id, true);
  }

  const SuperSpace& space() const { return bracket_.space(); }
  std::size_t dim() const { return bracket_.space().dim(); }
  const StructureTensor<Arity>& bracket() const { return bracket_; }
  const GradedMap& alpha() const { return alpha_; }
  const GradedMap& beta() const { return beta_; }
  bool multiplicative() const { return multiplicative_; }

  bool is_untwisted() const {
    auto id = GradedMap::identity(space());
    return alpha_ == id && beta_ == id;
  }

 private:
  StructureTensor<Arity> bracket_;
  GradedMap alpha_;
  GradedMap beta_;
  bool multiplicative_;
};

using BiHomLieSuperalgebra = BiHomAlgebra<2>;
using ThreeBiHomLieSuperalgebra = BiHomAlgebra<3>;

/// Images of the basis vectors under a map, i.e. its columns.
inline std::vector<Vector> basis_images(const GradedMap& m) {
  std::vector<Vector> out;
  out.reserve(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) out.push_back(m.image(i));
  return out;
}

// [beta(x), alpha(y)] = -(-1)^{|x||y|} [beta(y), alpha(x)].
inline VerificationReport verify_bihom_skewsymmetry(const BiHomLieSuperalgebra& a,
                                                    const VerifyOptions& opts = {}) {
  const auto al = basis_images(a.alpha());
  const auto be = basis_images(a.beta());
  const auto& sp = a.space();
  return check_all_tuples(
      "BiHom super skew-symmetry", a.dim(), 2,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const std::size_t x = t[0], y = t[1];
        Vector r = eval2(a.bracket(), be[x], al[y]);
        add_scaled(r, koszul_sign(sp.parity(x), sp.parity(y)),
                   eval2(a.bracket(), be[y], al[x]));
        expect_zero(failures, "skew", std::move(r));
      },
      opts);
}

/// Cyclic sum over (x,y,z) of (-1)^{|x||z|} [beta^2(x), [beta(y), alpha(z)]].
inline VerificationReport verify_bihom_jacobi(const BiHomLieSuperalgebra& a,
                                              const VerifyOptions& opts = {}) {
  const auto al = basis_images(a.alpha());
  const auto be = basis_images(a.beta());
  const auto be2 = basis_images(a.beta().power(2));
  const auto& sp = a.space();
  const auto& br = a.bracket();
  return check_all_tuples(
      "BiHom super Jacobi identity", a.dim(), 3,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        Vector r(a.dim());
        for (int rot = 0; rot < 3; ++rot) {
          const std::size_t x = t[rot % 3], y = t[(rot + 1) % 3], z = t[(rot + 2) % 3];
          add_scaled(r, koszul_sign(sp.parity(x), sp.parity(z)),
                     eval2(br, be2[x], eval2(br, be[y], al[z])));
        }
        expect_zero(failures, "cyclic sum", std::move(r));
      },
      opts);
}

/// alpha o beta = beta o alpha, and alpha, beta are morphisms of the bracket.
template <std::size_t Arity>
VerificationReport verify_multiplicativity(const BiHomAlgebra<Arity>& a,
                                           const VerifyOptions& opts = {}) {
  const auto al = basis_images(a.alpha());
  const auto be = basis_images(a.beta());
  const GradedMap ab = a.alpha().compose(a.beta());
  const GradedMap ba = a.beta().compose(a.alpha());

  VerificationReport report = check_all_tuples(
      "multiplicativity", a.dim(), 1,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        expect_zero(failures, "alpha o beta = beta o alpha",
                    ab.image(t[0]) - ba.image(t[0]));
      },
      opts);
  if (opts.fail_fast && !report.holds()) return report;

  auto morphism = [&](const GradedMap& m, const std::vector<Vector>& images,
                      const std::string& clause) {
    return check_all_tuples(
        "multiplicativity", a.dim(), Arity,
        [&](const std::vector<std::size_t>& t, auto& failures) {
          typename StructureTensor<Arity>::Args args{};
          std::array<const Vector*, Arity> mapped{};
          for (std::size_t k = 0; k < Arity; ++k) {
            args[k] = t[k];
            mapped[k] = &images[t[k]];
          }
          expect_zero(failures, clause,
                      m.apply(a.bracket().eval(args)) - a.bracket().eval(mapped));
        },
        opts);
  };
  report.merge(morphism(a.alpha(), al, "alpha is a bracket morphism"));
  if (opts.fail_fast && !report.holds()) return report;
  report.merge(morphism(a.beta(), be, "beta is a bracket morphism"));
  return report;
}

inline VerificationReport verify_multiplicativity2(const BiHomLieSuperalgebra& a,
                                                   const VerifyOptions& opts = {}) {
  return verify_multiplicativity(a, opts);
}

inline VerificationReport verify_multiplicativity3(
    const ThreeBiHomLieSuperalgebra& a, const VerifyOptions& opts = {}) {
  return verify_multiplicativity(a, opts);
}

/// The two twisted swap conditions of a ternary bracket:
///   [b(x), b(y), a(z)] = -(-1)^{|x||y|} [b(y), b(x), a(z)]
///   [b(x), b(y), a(z)] = -(-1)^{|y||z|} [b(x), b(z), a(y)]
/// The second exponent is printed |y||y| in some sources; |y||z| is the
/// graded-antisymmetry reading.
inline VerificationReport verify_3bihom_skewsymmetry(
    const ThreeBiHomLieSuperalgebra& a, const VerifyOptions& opts = {}) {
  const auto al = basis_images(a.alpha());
  const auto be = basis_images(a.beta());
  const auto& sp = a.space();
  const auto& br = a.bracket();
  auto report = check_all_tuples(
      "3-BiHom super skew-symmetry", a.dim(), 3,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const std::size_t x = t[0], y = t[1], z = t[2];
        const Vector base = eval3(br, be[x], be[y], al[z]);
        Vector r12 = base;
        add_scaled(r12, koszul_sign(sp.parity(x), sp.parity(y)),
                   eval3(br, be[y], be[x], al[z]));
        expect_zero(failures, "swap x<->y", std::move(r12));
        Vector r23 = base;
        add_scaled(r23, koszul_sign(sp.parity(y), sp.parity(z)),
                   eval3(br, be[x], be[z], al[y]));
        expect_zero(failures, "swap y<->z (exponent |y||z|)", std::move(r23));
      },
      opts);
  return report;
}

namespace detail {

// Shared data for 5-argument identities: beta, beta^2, alpha images and the
// inner brackets [beta(p), beta(q), alpha(r)] for every basis triple.
struct JacobiContext {
  std::vector<Vector> al, be, be2;
  std::vector<Vector> inner;
  std::size_t n;

  explicit JacobiContext(const ThreeBiHomLieSuperalgebra& a)
      : al(basis_images(a.alpha())),
        be(basis_images(a.beta())),
        be2(basis_images(a.beta().power(2))),
        n(a.dim()) {
    inner.reserve(n * n * n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r)
          inner.push_back(eval3(a.bracket(), be[p], be[q], al[r]));
  }

  const Vector& in(std::size_t p, std::size_t q, std::size_t r) const {
    return inner[(p * n + q) * n + r];
  }
};

}  // namespace detail

/// 3-BiHom super Jacobi identity, LHS - RHS for every basis 5-tuple:
///   [b2 x, b2 y, [b z, b u, a v]]
///   = (-1)^{(|u|+|v|)(|x|+|y|+|z|)} [b2 u, b2 v, [b x, b y, a z]]
///   - (-1)^{(|z|+|v|)(|x|+|y|)+|u||v|} [b2 z, b2 v, [b x, b y, a u]]
///   + (-1)^{(|z|+|u|)(|x|+|y|)} [b2 z, b2 u, [b x, b y, a v]]
inline VerificationReport verify_3bihom_jacobi(const ThreeBiHomLieSuperalgebra& a,
                                               const VerifyOptions& opts = {}) {
  const detail::JacobiContext c(a);
  const auto& sp = a.space();
  const auto& br = a.bracket();
  return check_all_tuples(
      "3-BiHom super Jacobi identity", a.dim(), 5,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const std::size_t x = t[0], y = t[1], z = t[2], u = t[3], v = t[4];
        const Parity px = sp.parity(x), py = sp.parity(y), pz = sp.parity(z),
                     pu = sp.parity(u), pv = sp.parity(v);
        const Parity pxy = px + py;
        Vector r = eval3(br, c.be2[x], c.be2[y], c.in(z, u, v));
        add_scaled(r, -koszul_sign(pu + pv, pxy + pz),
                   eval3(br, c.be2[u], c.be2[v], c.in(x, y, z)));
        add_scaled(r, koszul_sign(pz + pv, pxy) * koszul_sign(pu, pv),
                   eval3(br, c.be2[z], c.be2[v], c.in(x, y, u)));
        add_scaled(r, -koszul_sign(pz + pu, pxy),
                   eval3(br, c.be2[z], c.be2[u], c.in(x, y, v)));
        expect_zero(failures, "LHS - RHS", std::move(r));
      },
      opts);
}

/// Cyclic reformulation over (u, v, z):
///   [b2 x, b2 y, [b z, b u, a v]]
///   = (-1)^{|z||v|} cyc_{u,v,z} (-1)^{(|u|+|v|)(|x|+|y|)+|z||u|}
///       [b2 u, b2 v, [b x, b y, a z]]
inline VerificationReport verify_3bihom_jacobi_cyclic(
    const ThreeBiHomLieSuperalgebra& a, const VerifyOptions& opts = {}) {
  const detail::JacobiContext c(a);
  const auto& sp = a.space();
  const auto& br = a.bracket();
  return check_all_tuples(
      "3-BiHom super Jacobi identity (cyclic form)", a.dim(), 5,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const std::size_t x = t[0], y = t[1], z = t[2], u = t[3], v = t[4];
        const Parity pxy = sp.parity(x) + sp.parity(y);
        const int outer = koszul_sign(sp.parity(z), sp.parity(v));
        Vector r = eval3(br, c.be2[x], c.be2[y], c.in(z, u, v));
        const std::size_t cyc[3][3] = {{u, v, z}, {v, z, u}, {z, u, v}};
        for (const auto& [cu, cv, cz] : cyc) {
          const int sign = outer *
                           koszul_sign(sp.parity(cu) + sp.parity(cv), pxy) *
                           koszul_sign(sp.parity(cz), sp.parity(cu));
          add_scaled(r, -sign, eval3(br, c.be2[cu], c.be2[cv], c.in(x, y, cz)));
        }
        expect_zero(failures, "LHS - cyclic RHS", std::move(r));
      },
      opts);
}

/// Skew-symmetry plus Jacobi, and multiplicativity when claimed.
inline std::vector<VerificationReport> verify_axioms(const BiHomLieSuperalgebra& a,
                                                     const VerifyOptions& opts = {}) {
  std::vector<VerificationReport> out{verify_bihom_skewsymmetry(a, opts),
                                      verify_bihom_jacobi(a, opts)};
  if (a.multiplicative()) out.push_back(verify_multiplicativity2(a, opts));
  return out;
}

inline std::vector<VerificationReport> verify_axioms(
    const ThreeBiHomLieSuperalgebra& a, const VerifyOptions& opts = {}) {
  std::vector<VerificationReport> out{verify_3bihom_skewsymmetry(a, opts),
                                      verify_3bihom_jacobi(a, opts)};
  if (a.multiplicative()) out.push_back(verify_multiplicativity3(a, opts));
  return out;
}

inline bool all_hold(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.holds()) return false;
  return true;
}

namespace detail {

template <std::size_t Arity>
void require_untwisted_and_valid(const BiHomAlgebra<Arity>& l, const GradedMap& alpha,
                                 const GradedMap& beta, const char* what) {
  if (!l.is_untwisted())
    throw precondition_error(std::string(what) + ": input must have alpha = beta = Id");
  std::vector<VerificationReport> reports = verify_axioms(l);
  if (!all_hold(reports))
    throw precondition_error(std::string(what) + ": input bracket fails its axioms",
                             std::move(reports));
  BiHomAlgebra<Arity> probe(l.bracket(), alpha, beta);
  auto mult = verify_multiplicativity(probe);
  if (!mult.holds())
    throw precondition_error(
        std::string(what) + ": twisting maps must be commuting even morphisms",
        {std::move(mult)});
}

}  // namespace detail

/// Twist of a 3-Lie superalgebra by commuting morphisms:
/// [x, y, z]' = [alpha(x), alpha(y), beta(z)].
inline ThreeBiHomLieSuperalgebra make_twist_3(const ThreeBiHomLieSuperalgebra& l,
                                              const GradedMap& alpha,
                                              const GradedMap& beta) {
  detail::require_untwisted_and_valid(l, alpha, beta, "make_twist_3");
  const auto al = basis_images(alpha);
  const auto be = basis_images(beta);
  auto twisted = StructureTensor3::from_basis(l.space(), [&](const auto& t) {
    return eval3(l.bracket(), al[t[0]], al[t[1]], be[t[2]]);
  });
  return {std::move(twisted), alpha, beta, true};
}

/// Binary analogue: [x, y]' = [alpha(x), beta(y)]. The result is verified
/// before it is returned.
inline BiHomLieSuperalgebra make_yau_twist_2(const BiHomLieSuperalgebra& l,
                                             const GradedMap& alpha,
                                             const GradedMap& beta) {
  detail::require_untwisted_and_valid(l, alpha, beta, "make_yau_twist_2");
  const auto al = basis_images(alpha);
  const auto be = basis_images(beta);
  auto twisted = StructureTensor2::from_basis(l.space(), [&](const auto& t) {
    return eval2(l.bracket(), al[t[0]], be[t[1]]);
  });
  BiHomLieSuperalgebra out(std::move(twisted), alpha, beta, true);
  auto reports = verify_axioms(out);
  if (!all_hold(reports))
    throw precondition_error("make_yau_twist_2: twisted bracket fails verification",
                             std::move(reports));
  return out;
}

}  // namespace bihom
