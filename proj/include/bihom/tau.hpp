#pragma once

#include <string>
#include <utility>

#include "bihom/algebra.hpp"

namespace bihom {

/// Reports for the three hypotheses on tau:
///   tau([x, y]) = 0
///   tau(x) tau(beta(y)) = tau(y) tau(beta(x))
///   tau(alpha(x)) beta(y) = tau(beta(x)) alpha(y)   (vector identity)
struct TauWitness {
  LinearForm tau;
  VerificationReport bracket_annihilation;
  VerificationReport beta_symmetry;
  VerificationReport twist_compatibility;

  bool holds() const {
    return bracket_annihilation.holds() && beta_symmetry.holds() &&
           twist_compatibility.holds();
  }
  std::vector<VerificationReport> reports() const {
    return {bracket_annihilation, beta_symmetry, twist_compatibility};
  }
};

inline TauWitness check_tau_conditions(const BiHomLieSuperalgebra& a,
                                       const LinearForm& tau,
                                       const VerifyOptions& opts = {}) {
  if (!(tau.space() == a.space()))
    throw std::invalid_argument("tau lives on a different space");
  const auto al = basis_images(a.alpha());
  const auto be = basis_images(a.beta());
  const Vector tau_beta = tau.after(a.beta());
  const Vector tau_alpha = tau.after(a.alpha());

  TauWitness w{tau, {}, {}, {}};
  w.bracket_annihilation = check_all_tuples(
      "tau([x,y]) = 0", a.dim(), 2,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        expect_zero(failures, "tau o bracket", Vector{tau(eval2(a.bracket(), t[0], t[1]))});
      },
      opts);
  w.beta_symmetry = check_all_tuples(
      "tau(x) tau(beta(y)) = tau(y) tau(beta(x))", a.dim(), 2,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const std::size_t x = t[0], y = t[1];
        expect_zero(failures, "symmetry",
                    Vector{tau[x] * tau_beta[y] - tau[y] * tau_beta[x]});
      },
      opts);
  w.twist_compatibility = check_all_tuples(
      "tau(alpha(x)) beta(y) = tau(beta(x)) alpha(y)", a.dim(), 2,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        const std::size_t x = t[0], y = t[1];
        Vector r = tau_alpha[x] * be[y];
        add_scaled(r, -tau_beta[x], al[y]);
        expect_zero(failures, "componentwise", std::move(r));
      },
      opts);
  return w;
}

/// [x1, x2, x3]_tau = tau(x1)[x2, x3] - (-1)^{|x1||x2|} tau(x2)[x1, x3]
///                    + (-1)^{|x3|(|x1|+|x2|)} tau(x3)[x1, x2]
/// on basis elements.
inline Vector tau_bracket(const BiHomLieSuperalgebra& a, const LinearForm& tau,
                          std::size_t x1, std::size_t x2, std::size_t x3) {
  const auto& sp = a.space();
  const Parity p1 = sp.parity(x1), p2 = sp.parity(x2), p3 = sp.parity(x3);
  Vector out(a.dim());
  add_scaled(out, tau[x1], eval2(a.bracket(), x2, x3));
  add_scaled(out, -koszul_sign(p1, p2) * tau[x2], eval2(a.bracket(), x1, x3));
  add_scaled(out, koszul_sign(p3, p1 + p2) * tau[x3], eval2(a.bracket(), x1, x2));
  return out;
}

/// The induced ternary algebra (g, [.,.,.]_tau, alpha, beta). Throws
/// precondition_error when tau fails its hypotheses, unless `override_conditions`
/// is set, in which case the bracket is built but not guaranteed to satisfy
/// any axiom.
inline ThreeBiHomLieSuperalgebra induce_tau(const BiHomLieSuperalgebra& a,
                                            const LinearForm& tau,
                                            bool override_conditions = false) {
  if (!override_conditions) {
    auto w = check_tau_conditions(a, tau);
    if (!w.holds())
      throw precondition_error("induce_tau: tau fails the induction conditions",
                               w.reports());
  }
  auto bracket = StructureTensor3::from_basis(a.space(), [&](const auto& t) {
    return tau_bracket(a, tau, t[0], t[1], t[2]);
  });
  return {std::move(bracket), a.alpha(), a.beta(), false};
}

}  // namespace bihom
