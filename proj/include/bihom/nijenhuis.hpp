#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bihom/algebra.hpp"
#include "bihom/derivations.hpp"
#include "bihom/rota_baxter.hpp"
#include "bihom/tau.hpp"

namespace bihom {

namespace detail {

inline void require_even(const GradedMap& n, const char* what) {
  if (n.parity() != Parity::even)
    throw std::invalid_argument(std::string(what) + ": operator must be even");
}

// [Nx1,x2,x3] + [x1,Nx2,x3] + [x1,x2,Nx3] - N[x1,x2,x3]
inline StructureTensor3 n_bracket_1(const StructureTensor3& br, const GradedMap& n) {
  const auto ni = basis_images(n);
  const std::size_t d = br.space().dim();
  return StructureTensor3::from_basis(br.space(), [&](const auto& t) {
    const Vector e0 = basis_vector(d, t[0]), e1 = basis_vector(d, t[1]),
                 e2 = basis_vector(d, t[2]);
    Vector out = eval3(br, ni[t[0]], e1, e2) + eval3(br, e0, ni[t[1]], e2) +
                 eval3(br, e0, e1, ni[t[2]]);
    return out - n.apply(br.eval({t[0], t[1], t[2]}));
  });
}

// [Nx1,Nx2,x3] + [Nx1,x2,Nx3] + [x1,Nx2,Nx3] - N[x1,x2,x3]^1_N
inline StructureTensor3 n_bracket_2(const StructureTensor3& br, const GradedMap& n) {
  const auto ni = basis_images(n);
  const std::size_t d = br.space().dim();
  const StructureTensor3 first = n_bracket_1(br, n);
  return StructureTensor3::from_basis(br.space(), [&](const auto& t) {
    const Vector e0 = basis_vector(d, t[0]), e1 = basis_vector(d, t[1]),
                 e2 = basis_vector(d, t[2]);
    Vector out = eval3(br, ni[t[0]], ni[t[1]], e2) + eval3(br, ni[t[0]], e1, ni[t[2]]) +
                 eval3(br, e0, ni[t[1]], ni[t[2]]);
    return out - n.apply(first.eval({t[0], t[1], t[2]}));
  });
}

}  // namespace detail

/// [x1,x2,x3]^1_N; N must be even and commute with alpha and beta.
inline StructureTensor3 make_n_bracket_1(const ThreeBiHomLieSuperalgebra& a,
                                         const GradedMap& n) {
  detail::require_even(n, "make_n_bracket_1");
  detail::require_commuting(a, n, "make_n_bracket_1");
  return detail::n_bracket_1(a.bracket(), n);
}

/// [x1,x2,x3]^2_N, defined through [.,.,.]^1_N.
inline StructureTensor3 make_n_bracket_2(const ThreeBiHomLieSuperalgebra& a,
                                         const GradedMap& n) {
  detail::require_even(n, "make_n_bracket_2");
  detail::require_commuting(a, n, "make_n_bracket_2");
  return detail::n_bracket_2(a.bracket(), n);
}

/// sum over nonempty I of (-1)^{|I|-1} N^{|I|} [N~x1, N~x2, N~x3], with
/// N~(x_i) = x_i for i in I and N(x_i) otherwise.
inline Vector nijenhuis_subset_value(const StructureTensor3& br, const GradedMap& n,
                                     std::size_t x1, std::size_t x2, std::size_t x3) {
  const std::size_t d = br.space().dim();
  const std::array<std::size_t, 3> idx{x1, x2, x3};
  const std::array<Vector, 3> plain{basis_vector(d, x1), basis_vector(d, x2),
                                    basis_vector(d, x3)};
  const std::array<Vector, 3> mapped{n.image(x1), n.image(x2), n.image(x3)};
  Vector out(d);
  for (unsigned mask : kNonemptySubsets3) {
    const int size = subset_size(mask);
    std::array<const Vector*, 3> args{};
    for (std::size_t k = 0; k < 3; ++k) args[k] = (mask >> k) & 1u ? &plain[k] : &mapped[k];
    (void)idx;
    Vector v = br.eval(args);
    for (int p = 0; p < size; ++p) v = n.apply(v);
    add_scaled(out, size % 2 == 1 ? 1 : -1, v);
  }
  return out;
}

/// Agreement of N([.,.,.]^2_N) with the subset expansion on every basis
/// triple. Holds for any even N; no commutation hypothesis is needed.
inline VerificationReport check_nijenhuis_forms(const ThreeBiHomLieSuperalgebra& a,
                                                const GradedMap& n,
                                                const VerifyOptions& opts = {}) {
  detail::require_even(n, "check_nijenhuis_forms");
  const StructureTensor3 second = detail::n_bracket_2(a.bracket(), n);
  return check_all_tuples(
      "Nijenhuis inductive form = subset form", a.dim(), 3,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        expect_zero(failures, "N([.]^2_N) - subset sum",
                    n.apply(second.eval({t[0], t[1], t[2]})) -
                        nijenhuis_subset_value(a.bracket(), n, t[0], t[1], t[2]));
      },
      opts);
}

/// [N x1, N x2, N x3] = N([x1,x2,x3]^2_N) on basis triples. The subset
/// expansion is evaluated too and any disagreement is reported as an
/// internal-consistency violation.
inline VerificationReport is_nijenhuis_3(const ThreeBiHomLieSuperalgebra& a,
                                         const GradedMap& n,
                                         const VerifyOptions& opts = {}) {
  detail::require_even(n, "is_nijenhuis_3");
  detail::require_commuting(a, n, "is_nijenhuis_3");
  const auto ni = basis_images(n);
  const StructureTensor3 second = detail::n_bracket_2(a.bracket(), n);
  return check_all_tuples(
      "Nijenhuis identity (ternary)", a.dim(), 3,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const Vector lhs = eval3(a.bracket(), ni[t[0]], ni[t[1]], ni[t[2]]);
        const Vector rhs = n.apply(second.eval({t[0], t[1], t[2]}));
        expect_zero(failures, "[Nx,Ny,Nz] = N([x,y,z]^2_N)", lhs - rhs);
        expect_zero(failures, "internal consistency: subset form",
                    rhs - nijenhuis_subset_value(a.bracket(), n, t[0], t[1], t[2]));
      },
      opts);
}

/// [N x, N y] = N([N x, y] + [x, N y] - N[x, y]) on basis pairs.
inline VerificationReport is_nijenhuis_2(const BiHomLieSuperalgebra& a,
                                         const GradedMap& n,
                                         const VerifyOptions& opts = {}) {
  detail::require_even(n, "is_nijenhuis_2");
  detail::require_commuting(a, n, "is_nijenhuis_2");
  const auto ni = basis_images(n);
  const std::size_t d = a.dim();
  return check_all_tuples(
      "Nijenhuis identity (binary)", d, 2,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const std::size_t x = t[0], y = t[1];
        Vector inside = eval2(a.bracket(), ni[x], basis_vector(d, y)) +
                        eval2(a.bracket(), basis_vector(d, x), ni[y]) -
                        n.apply(eval2(a.bracket(), x, y));
        expect_zero(failures, "[Nx,Ny] = N(...)",
                    eval2(a.bracket(), ni[x], ni[y]) - n.apply(inside));
      },
      opts);
}

/// Nijenhuis on a binary algebra carries over to its tau-induced algebra.
inline TransferCheck check_induced_nijenhuis(const BiHomLieSuperalgebra& a, const LinearForm& tau,
                                  const GradedMap& n) {
  auto nij = is_nijenhuis_2(a, n);
  if (!nij.holds())
    throw precondition_error("Nijenhuis transfer: N is not Nijenhuis on the binary algebra",
                             {std::move(nij)});
  detail::require_tau(a, tau, "Nijenhuis transfer");
  TransferCheck out;
  out.hypotheses_hold = true;
  out.conclusion = is_nijenhuis_3(induce_tau(a, tau), n);
  return out;
}

/// Nijenhuis N commuting with a Rota-Baxter R stays Nijenhuis on [.,.,.]_R.
inline TransferCheck check_rb_nijenhuis(const ThreeBiHomLieSuperalgebra& a, const GradedMap& n,
                                  const RotaBaxterOperator& rb) {
  auto nij = is_nijenhuis_3(a, n);
  if (!nij.holds())
    throw precondition_error("Nijenhuis/Rota-Baxter: N is not Nijenhuis", {std::move(nij)});
  auto rbc = is_rb3(a, rb);
  if (!rbc.holds())
    throw precondition_error("Nijenhuis/Rota-Baxter: R is not Rota-Baxter", {std::move(rbc)});
  if (!commute(n, rb.map()))
    throw precondition_error("Nijenhuis/Rota-Baxter: N and R must commute");
  TransferCheck out;
  out.hypotheses_hold = true;
  out.conclusion = is_nijenhuis_3(make_rb_bracket(a, rb), n);
  return out;
}

struct DerivationNijenhuisResult {
  bool nijenhuis = false;
  bool rota_baxter_weight_zero = false;
  bool agree() const { return nijenhuis == rota_baxter_weight_zero; }
};

/// For an even (s = r = 0) derivation N: Nijenhuis iff Rota-Baxter of weight 0.
inline DerivationNijenhuisResult check_derivation_nijenhuis(const ThreeBiHomLieSuperalgebra& a, const GradedMap& n) {
  detail::require_even(n, "check_derivation_nijenhuis");
  auto der = is_derivation_3(a, n, 0, 0);
  if (!der.holds())
    throw precondition_error("check_derivation_nijenhuis: N is not an even derivation", {std::move(der)});
  DerivationNijenhuisResult out;
  out.nijenhuis = is_nijenhuis_3(a, n, {.fail_fast = true}).holds();
  out.rota_baxter_weight_zero = is_rb3(a, RotaBaxterOperator(n, 0), {.fail_fast = true}).holds();
  return out;
}

/// omega_1, omega_2 of a candidate deformation [.]_t = [.] + t w1 + t^2 w2.
struct DeformationPair {
  StructureTensor3 omega1;
  StructureTensor3 omega2;

  /// Validates that both tensors obey the ambient twisted skew-symmetry.
  static DeformationPair make(const ThreeBiHomLieSuperalgebra& a, StructureTensor3 w1,
                              StructureTensor3 w2) {
    if (!(w1.space() == a.space()) || !(w2.space() == a.space()))
      throw std::invalid_argument("deformation tensors live on a different space");
    std::vector<VerificationReport> bad;
    for (const auto* w : {&w1, &w2}) {
      auto skew = verify_3bihom_skewsymmetry(
          ThreeBiHomLieSuperalgebra(*w, a.alpha(), a.beta()));
      if (!skew.holds()) bad.push_back(std::move(skew));
    }
    if (!bad.empty())
      throw precondition_error("deformation tensors must be twisted skew-symmetric",
                               std::move(bad));
    return {std::move(w1), std::move(w2)};
  }
};

/// w_i o_{alpha,beta} w_j (X, Y, z) for X = x1^x2, Y = y1^y2:
///   w_i(w_j(X,.) * Y, b^2 z) - w_i(b~^2 X, w_j(b~ Y, a z))
///   + (-1)^{|X||Y|} w_i(b~^2 Y, w_j(b~ X, a z)),
/// where w_j(X,.) * Y = w_j(b~ X, a y1) ^ b^2 y2 + (-1)^{|y1||X|} b^2 y1 ^ w_j(b~ X, a y2).
inline Vector omega_compose(const ThreeBiHomLieSuperalgebra& a, const StructureTensor3& wi,
                            const StructureTensor3& wj, const WedgePair& x,
                            const WedgePair& y, const Vector& z) {
  const GradedMap& al = a.alpha();
  const GradedMap& be = a.beta();
  const GradedMap be2 = be.power(2);
  const WedgePair bx = x.mapped(be), by = y.mapped(be);
  const WedgePair b2x = x.mapped(be2), b2y = y.mapped(be2);
  const Vector b2z = be2.apply(z), az = al.apply(z);

  Vector out = eval3(wi, eval_wedge(wj, bx, al.apply(y.first)), b2y.second, b2z);
  add_scaled(out, koszul_sign(y.first_parity, x.parity()),
             eval3(wi, b2y.first, eval_wedge(wj, bx, al.apply(y.second)), b2z));
  add_scaled(out, -1, eval3(wi, b2x.first, b2x.second, eval_wedge(wj, by, az)));
  add_scaled(out, koszul_sign(x.parity(), y.parity()),
             eval3(wi, b2y.first, b2y.second, eval_wedge(wj, bx, az)));
  return out;
}

namespace detail {

// Basis-tuple evaluation of sum_k w_{i_k} o w_{j_k} with cached images.
class CompositionEvaluator {
 public:
  CompositionEvaluator(const ThreeBiHomLieSuperalgebra& a,
                       std::vector<const StructureTensor3*> tensors)
      : a_(a),
        tensors_(std::move(tensors)),
        al_(basis_images(a.alpha())),
        be_(basis_images(a.beta())),
        be2_(basis_images(a.beta().power(2))),
        n_(a.dim()) {
    for (const auto* w : tensors_) {
      std::vector<Vector> inner;
      inner.reserve(n_ * n_ * n_);
      for (std::size_t p = 0; p < n_; ++p)
        for (std::size_t q = 0; q < n_; ++q)
          for (std::size_t r = 0; r < n_; ++r)
            inner.push_back(eval3(*w, be_[p], be_[q], al_[r]));
      inner_.push_back(std::move(inner));
    }
  }

  // w_i o w_j on basis (x1, x2, y1, y2, z), accumulated into out.
  void add(Vector& out, std::size_t i, std::size_t j, const std::vector<std::size_t>& t) const {
    const auto& sp = a_.space();
    const std::size_t x1 = t[0], x2 = t[1], y1 = t[2], y2 = t[3], z = t[4];
    const Parity px = sp.parity(x1) + sp.parity(x2);
    const Parity py = sp.parity(y1) + sp.parity(y2);
    const StructureTensor3& wi = *tensors_[i];
    out = out + eval3(wi, in(j, x1, x2, y1), be2_[y2], be2_[z]);
    add_scaled(out, koszul_sign(sp.parity(y1), px),
               eval3(wi, be2_[y1], in(j, x1, x2, y2), be2_[z]));
    add_scaled(out, -1, eval3(wi, be2_[x1], be2_[x2], in(j, y1, y2, z)));
    add_scaled(out, koszul_sign(px, py), eval3(wi, be2_[y1], be2_[y2], in(j, x1, x2, z)));
  }

 private:
  const Vector& in(std::size_t w, std::size_t p, std::size_t q, std::size_t r) const {
    return inner_[w][(p * n_ + q) * n_ + r];
  }

  const ThreeBiHomLieSuperalgebra& a_;
  std::vector<const StructureTensor3*> tensors_;
  std::vector<Vector> al_, be_, be2_;
  std::vector<std::vector<Vector>> inner_;
  std::size_t n_;
};

// Sum over i + j = l of w_i o w_j on every raw basis 5-tuple, with
// w_0 = ambient bracket and w_i = 0 for i > 2.
inline VerificationReport composition_sum_report(const ThreeBiHomLieSuperalgebra& a,
                                                 const StructureTensor3& w1,
                                                 const StructureTensor3& w2, int l,
                                                 const VerifyOptions& opts) {
  const CompositionEvaluator ev(a, {&a.bracket(), &w1, &w2});
  std::vector<std::pair<std::size_t, std::size_t>> terms;
  for (int i = 0; i <= 2; ++i)
    if (int j = l - i; j >= 0 && j <= 2) terms.emplace_back(i, j);
  return check_all_tuples(
      "sum_{i+j=" + std::to_string(l) + "} w_i o w_j = 0", a.dim(), 5,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        Vector r(a.dim());
        for (auto [i, j] : terms) ev.add(r, i, j, t);
        expect_zero(failures, "l = " + std::to_string(l), std::move(r));
      },
      opts);
}

// w o alpha^{x3} = alpha o w and w o beta^{x3} = beta o w
inline VerificationReport twist_compatibility_report(const ThreeBiHomLieSuperalgebra& a,
                                                     const StructureTensor3& w,
                                                     const std::string& name,
                                                     const VerifyOptions& opts) {
  const auto al = basis_images(a.alpha());
  const auto be = basis_images(a.beta());
  return check_all_tuples(
      name + " commutes with alpha and beta", a.dim(), 3,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const Vector value = w.eval({t[0], t[1], t[2]});
        expect_zero(failures, name + " o alpha^3 = alpha o " + name,
                    eval3(w, al[t[0]], al[t[1]], al[t[2]]) - a.alpha().apply(value));
        expect_zero(failures, name + " o beta^3 = beta o " + name,
                    eval3(w, be[t[0]], be[t[1]], be[t[2]]) - a.beta().apply(value));
      },
      opts);
}

}  // namespace detail

/// Compatibility of w1, w2 with alpha and beta plus the composition sums for
/// l = 1..4, all on raw basis tuples.
inline VerificationReport check_deformation(const ThreeBiHomLieSuperalgebra& a,
                                            const DeformationPair& d,
                                            const VerifyOptions& opts = {}) {
  VerificationReport report;
  report.identity = "second-order deformation";
  report.merge(detail::twist_compatibility_report(a, d.omega1, "w1", opts));
  report.merge(detail::twist_compatibility_report(a, d.omega2, "w2", opts));
  for (int l = 1; l <= 4; ++l) {
    if (opts.fail_fast && !report.holds()) break;
    report.merge(detail::composition_sum_report(a, d.omega1, d.omega2, l, opts));
  }
  return report;
}

/// w0 o w1 + w1 o w0 = 0
inline VerificationReport check_2cocycle(const ThreeBiHomLieSuperalgebra& a,
                                         const StructureTensor3& w1,
                                         const VerifyOptions& opts = {}) {
  auto report = detail::composition_sum_report(a, w1, StructureTensor3(a.space()), 1, opts);
  report.identity = "2-cocycle: w0 o w1 + w1 o w0 = 0";
  return report;
}

/// w0 o w0 on every raw basis 5-tuple.
inline VerificationReport check_self_composition(const ThreeBiHomLieSuperalgebra& a,
                                                 const VerifyOptions& opts = {}) {
  const detail::CompositionEvaluator ev(a, {&a.bracket()});
  return check_all_tuples(
      "w0 o w0 = 0", a.dim(), 5,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        Vector r(a.dim());
        ev.add(r, 0, 0, t);
        expect_zero(failures, "composition", std::move(r));
      },
      opts);
}

/// w1 = [.]^1_N and w2 = [.]^2_N for a Nijenhuis N; checks N w2 = [Nx,Ny,Nz].
inline DeformationPair build_trivial_deformation(const ThreeBiHomLieSuperalgebra& a,
                                                 const GradedMap& n) {
  auto nij = is_nijenhuis_3(a, n);
  if (!nij.holds())
    throw precondition_error("build_trivial_deformation: N is not Nijenhuis",
                             {std::move(nij)});
  StructureTensor3 w1 = detail::n_bracket_1(a.bracket(), n);
  StructureTensor3 w2 = detail::n_bracket_2(a.bracket(), n);
  const auto ni = basis_images(n);
  auto top = check_all_tuples(
      "N w2(x,y,z) = [Nx,Ny,Nz]", a.dim(), 3,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        expect_zero(failures, "cubic term",
                    n.apply(w2.eval({t[0], t[1], t[2]})) -
                        eval3(a.bracket(), ni[t[0]], ni[t[1]], ni[t[2]]));
      });
  if (!top.holds())
    throw precondition_error("build_trivial_deformation: cubic term does not vanish",
                             {std::move(top)});
  return DeformationPair::make(a, std::move(w1), std::move(w2));
}

}  // namespace bihom
