#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bihom/algebra.hpp"
#include "bihom/tau.hpp"

namespace bihom {

struct DerivationQuery {
  unsigned s = 0;
  unsigned r = 0;
  Parity parity = Parity::even;
};

/// Basis of Der_{(alpha^s, beta^r)} restricted to one parity.
struct DerivationSpace {
  DerivationQuery query;
  std::vector<GradedMap> basis;
  std::size_t dimension() const { return basis.size(); }
};

/// alpha^s beta^r
template <std::size_t Arity>
GradedMap twist_power(const BiHomAlgebra<Arity>& a, unsigned s, unsigned r) {
  return a.alpha().power(s).compose(a.beta().power(r));
}

/// [D, D'] = D D' - (-1)^{|D||D'|} D' D
inline GradedMap supercommutator(const GradedMap& d, const GradedMap& d2) {
  d.check_same_space(d2);
  const Parity p = d.parity() + d2.parity();
  Matrix m = d.matrix() * d2.matrix() -
             Scalar(koszul_sign(d.parity(), d2.parity())) * (d2.matrix() * d.matrix());
  return {d.space(), std::move(m), p};
}

/// Elementary maps E_{k,i} (e_i -> e_k) allowed for the given parity, in
/// column-major order of (i, k).
inline std::vector<GradedMap> elementary_maps(const SuperSpace& space, Parity p) {
  std::vector<GradedMap> out;
  for (std::size_t i = 0; i < space.dim(); ++i)
    for (std::size_t k = 0; k < space.dim(); ++k) {
      if (space.parity(k) != space.parity(i) + p) continue;
      Matrix m(space.dim(), space.dim());
      m(k, i) = 1;
      out.emplace_back(space, std::move(m), p);
    }
  return out;
}

using MapResidual = std::function<Vector(const GradedMap&)>;

/// All maps D of parity p with residual(D) = 0, for a residual that is linear
/// in D. Returns an exact basis.
inline std::vector<GradedMap> solve_linear_maps(const SuperSpace& space, Parity p,
                                                const MapResidual& residual) {
  const auto units = elementary_maps(space, p);
  if (units.empty()) return {};
  std::vector<Vector> columns;
  columns.reserve(units.size());
  for (const auto& e : units) columns.push_back(residual(e));
  const Matrix system = Matrix::from_columns(columns, columns.front().size());
  std::vector<GradedMap> out;
  for (const auto& v : kernel_basis(system)) {
    Matrix m(space.dim(), space.dim());
    for (std::size_t u = 0; u < units.size(); ++u) m = m + v[u] * units[u].matrix();
    out.emplace_back(space, std::move(m), p);
  }
  return out;
}

/// Some map D of parity p with residual(D) = 0 for an affine residual, or
/// nullopt. Free unknowns are fixed at 0 in elimination order.
inline std::optional<GradedMap> solve_affine_map(const SuperSpace& space, Parity p,
                                                 const MapResidual& residual) {
  const auto units = elementary_maps(space, p);
  const Vector offset = residual(GradedMap::zero(space, p));
  if (units.empty()) {
    if (is_zero(offset)) return GradedMap::zero(space, p);
    return std::nullopt;
  }
  std::vector<Vector> columns;
  for (const auto& e : units) columns.push_back(residual(e) - offset);
  const Matrix system = Matrix::from_columns(columns, offset.size());
  auto x = solve_affine(system, Scalar(-1) * offset);
  if (!x) return std::nullopt;
  Matrix m(space.dim(), space.dim());
  for (std::size_t u = 0; u < units.size(); ++u) m = m + (*x)[u] * units[u].matrix();
  return GradedMap(space, std::move(m), p);
}

namespace detail {

template <std::size_t Arity>
void require_same_space(const BiHomAlgebra<Arity>& a, const GradedMap& d) {
  if (!(d.space() == a.space()))
    throw std::invalid_argument("map lives on a different space");
}

// (D alpha - alpha D) e_i and (D beta - beta D) e_i
template <std::size_t Arity>
void commutation_residuals(const BiHomAlgebra<Arity>& a, const GradedMap& d,
                           std::size_t i,
                           std::vector<std::pair<std::string, Vector>>& failures) {
  expect_zero(failures, "D o alpha = alpha o D",
              d.apply(a.alpha().image(i)) - a.alpha().apply(d.image(i)));
  expect_zero(failures, "D o beta = beta o D",
              d.apply(a.beta().image(i)) - a.beta().apply(d.image(i)));
}

template <std::size_t Arity>
VerificationReport commutation_report(const BiHomAlgebra<Arity>& a, const GradedMap& d,
                                      const std::string& name,
                                      const VerifyOptions& opts) {
  return check_all_tuples(
      name, a.dim(), 1,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        commutation_residuals(a, d, t[0], failures);
      },
      opts);
}

// sum over slots k of sign_k [g x_1, ..., D x_k, ..., g x_n], where slot k
// carries (-1)^{|D|(|x_1|+...+|x_{k-1}|)}.
template <std::size_t Arity>
Vector leibniz_rhs(const BiHomAlgebra<Arity>& a, const GradedMap& d,
                   const std::vector<Vector>& gamma,
                   const std::array<std::size_t, Arity>& x) {
  const auto& sp = a.space();
  Vector out(a.dim());
  Parity before = Parity::even;
  std::array<Vector, Arity> dx;
  for (std::size_t k = 0; k < Arity; ++k) {
    dx[k] = d.image(x[k]);
    std::array<const Vector*, Arity> args{};
    for (std::size_t m = 0; m < Arity; ++m) args[m] = (m == k) ? &dx[k] : &gamma[x[m]];
    add_scaled(out, koszul_sign(d.parity(), before), a.bracket().eval(args));
    before = before + sp.parity(x[k]);
  }
  return out;
}

// Full linear residual of the derivation conditions, concatenated.
template <std::size_t Arity>
Vector derivation_residual(const BiHomAlgebra<Arity>& a, const GradedMap& d,
                           const std::vector<Vector>& gamma,
                           const GradedMap* lhs_map = nullptr) {
  const std::size_t n = a.dim();
  const GradedMap& left = lhs_map ? *lhs_map : d;
  Vector out;
  auto append = [&](const Vector& v) { out.insert(out.end(), v.begin(), v.end()); };
  for (std::size_t i = 0; i < n; ++i) {
    append(left.apply(a.alpha().image(i)) - a.alpha().apply(left.image(i)));
    append(left.apply(a.beta().image(i)) - a.beta().apply(left.image(i)));
  }
  std::size_t total = 1;
  for (std::size_t k = 0; k < Arity; ++k) total *= n;
  std::array<std::size_t, Arity> x{};
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = Arity; k-- > 0;) {
      x[k] = rest % n;
      rest /= n;
    }
    append(left.apply(a.bracket().eval(x)) - leibniz_rhs(a, d, gamma, x));
  }
  return out;
}

}  // namespace detail

/// Checks D o alpha = alpha o D, D o beta = beta o D and the twisted Leibniz
/// rule D[x_1,...,x_n] = sum_k (-1)^{|D|(|x_1|+..+|x_{k-1}|)}
///   [a^s b^r x_1, ..., D x_k, ..., a^s b^r x_n].
template <std::size_t Arity>
VerificationReport is_derivation(const BiHomAlgebra<Arity>& a, const GradedMap& d,
                                 unsigned s, unsigned r,
                                 const VerifyOptions& opts = {}) {
  detail::require_same_space(a, d);
  const auto gamma = basis_images(twist_power(a, s, r));
  const std::string name = "(alpha^" + std::to_string(s) + ",beta^" +
                           std::to_string(r) + ")-derivation";
  VerificationReport report = detail::commutation_report(a, d, name, opts);
  if (opts.fail_fast && !report.holds()) return report;
  report.merge(check_all_tuples(
      name, a.dim(), Arity,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        std::array<std::size_t, Arity> x{};
        for (std::size_t k = 0; k < Arity; ++k) x[k] = t[k];
        expect_zero(failures, "Leibniz rule",
                    d.apply(a.bracket().eval(x)) - detail::leibniz_rhs(a, d, gamma, x));
      },
      opts));
  return report;
}

inline VerificationReport is_derivation_3(const ThreeBiHomLieSuperalgebra& a,
                                          const GradedMap& d, unsigned s, unsigned r,
                                          const VerifyOptions& opts = {}) {
  return is_derivation(a, d, s, r, opts);
}

inline VerificationReport is_derivation_2(const BiHomLieSuperalgebra& a,
                                          const GradedMap& d, unsigned s, unsigned r,
                                          const VerifyOptions& opts = {}) {
  return is_derivation(a, d, s, r, opts);
}

template <std::size_t Arity>
DerivationSpace solve_derivation_space(const BiHomAlgebra<Arity>& a,
                                       const DerivationQuery& q) {
  const auto gamma = basis_images(twist_power(a, q.s, q.r));
  return {q, solve_linear_maps(a.space(), q.parity, [&](const GradedMap& d) {
            return detail::derivation_residual(a, d, gamma);
          })};
}

struct QuasiderivationResult {
  bool is_quasiderivation = false;
  std::optional<GradedMap> witness;  // D' with D'[x,..] = Leibniz sum of D
  explicit operator bool() const { return is_quasiderivation; }
};

/// Looks for D' (same parity as D, commuting with alpha and beta) such that
/// D'[x_1,...,x_n] equals the twisted Leibniz sum of D.
template <std::size_t Arity>
QuasiderivationResult is_quasiderivation(const BiHomAlgebra<Arity>& a,
                                         const GradedMap& d, unsigned s, unsigned r) {
  detail::require_same_space(a, d);
  auto comm = detail::commutation_report(a, d, "quasiderivation hypothesis", {});
  if (!comm.holds())
    throw precondition_error("is_quasiderivation: D must commute with alpha and beta",
                             {std::move(comm)});
  const auto gamma = basis_images(twist_power(a, s, r));
  auto witness = solve_affine_map(a.space(), d.parity(), [&](const GradedMap& dp) {
    return detail::derivation_residual(a, d, gamma, &dp);
  });
  QuasiderivationResult out;
  out.is_quasiderivation = witness.has_value();
  out.witness = std::move(witness);
  return out;
}

inline QuasiderivationResult is_quasiderivation_3(const ThreeBiHomLieSuperalgebra& a,
                                                  const GradedMap& d, unsigned s,
                                                  unsigned r) {
  return is_quasiderivation(a, d, s, r);
}

/// Checks that D' witnesses D as a quasiderivation (substitution check).
template <std::size_t Arity>
VerificationReport verify_quasiderivation_witness(const BiHomAlgebra<Arity>& a,
                                                  const GradedMap& d,
                                                  const GradedMap& witness,
                                                  unsigned s, unsigned r) {
  const auto gamma = basis_images(twist_power(a, s, r));
  VerificationReport report =
      detail::commutation_report(a, witness, "quasiderivation witness", {});
  report.merge(check_all_tuples(
      "quasiderivation witness", a.dim(), Arity,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        std::array<std::size_t, Arity> x{};
        for (std::size_t k = 0; k < Arity; ++k) x[k] = t[k];
        expect_zero(failures, "D'[...] = Leibniz sum of D",
                    witness.apply(a.bracket().eval(x)) -
                        detail::leibniz_rhs(a, d, gamma, x));
      }));
  return report;
}

/// Outcome of a "hypotheses imply conclusion" transfer check.
struct TransferCheck {
  bool hypotheses_hold = false;
  std::vector<VerificationReport> hypotheses;
  std::optional<VerificationReport> conclusion;  // checked only when hypotheses hold
  std::vector<std::string> notes;

  /// The hypotheses hold but the conclusion fails.
  bool contradiction() const {
    return hypotheses_hold && conclusion && !conclusion->holds();
  }
  bool holds() const { return hypotheses_hold && conclusion && conclusion->holds(); }
};

namespace detail {

// cyc_{x,y,z} (-1)^{|x||z|} tau(D x)[y, z]  and  tau o alpha^s beta^r = tau
inline std::vector<VerificationReport> transfer_hypotheses(
    const BiHomLieSuperalgebra& a, const LinearForm& tau, const GradedMap& d,
    unsigned s, unsigned r) {
  const auto& sp = a.space();
  const Vector tau_d = tau.after(d);
  const Vector tau_gamma = tau.after(twist_power(a, s, r));
  auto cyclic = check_all_tuples(
      "cyc (-1)^{|x||z|} tau(D x)[y,z] = 0", a.dim(), 3,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        Vector v(a.dim());
        for (int rot = 0; rot < 3; ++rot) {
          const std::size_t x = t[rot % 3], y = t[(rot + 1) % 3], z = t[(rot + 2) % 3];
          add_scaled(v, koszul_sign(sp.parity(x), sp.parity(z)) * tau_d[x],
                     eval2(a.bracket(), y, z));
        }
        expect_zero(failures, "cyclic sum", std::move(v));
      });
  auto invariance = check_all_tuples(
      "tau o alpha^s beta^r = tau", a.dim(), 1,
      [&](const std::vector<std::size_t>& t, auto& failures) {
        expect_zero(failures, "invariance", Vector{tau_gamma[t[0]] - tau[t[0]]});
      });
  return {std::move(cyclic), std::move(invariance)};
}

inline void require_tau(const BiHomLieSuperalgebra& a, const LinearForm& tau,
                        const char* what) {
  auto w = check_tau_conditions(a, tau);
  if (!w.holds())
    throw precondition_error(std::string(what) + ": tau fails the induction conditions",
                             w.reports());
}

}  // namespace detail

/// If D is a binary (alpha^s, beta^r)-derivation and the transfer hypotheses
/// hold, D must be an (alpha^s, beta^r)-derivation of the tau-induced algebra.
inline TransferCheck check_derivation_transfer(const BiHomLieSuperalgebra& a,
                                           const LinearForm& tau, const GradedMap& d,
                                           unsigned s, unsigned r) {
  auto der = is_derivation_2(a, d, s, r);
  if (!der.holds())
    throw precondition_error("derivation transfer: D is not a derivation of the binary algebra",
                             {std::move(der)});
  detail::require_tau(a, tau, "derivation transfer");

  TransferCheck out;
  out.hypotheses = detail::transfer_hypotheses(a, tau, d, s, r);
  out.hypotheses_hold = all_hold(out.hypotheses);
  if (out.hypotheses_hold) out.conclusion = is_derivation_3(induce_tau(a, tau), d, s, r);
  return out;
}

/// Quasiderivation analogue of check_derivation_transfer. The implication is
/// asserted in the literature without proof; the check is purely empirical.
inline TransferCheck check_quasiderivation_transfer(const BiHomLieSuperalgebra& a,
                                           const LinearForm& tau, const GradedMap& d,
                                           unsigned s, unsigned r) {
  auto quasi = is_quasiderivation(a, d, s, r);
  if (!quasi)
    throw precondition_error(
        "quasiderivation transfer: D is not a quasiderivation of the binary algebra");
  detail::require_tau(a, tau, "quasiderivation transfer");

  TransferCheck out;
  out.notes.push_back("statement given without proof; checked empirically");
  out.hypotheses = detail::transfer_hypotheses(a, tau, d, s, r);
  out.hypotheses_hold = all_hold(out.hypotheses);
  if (out.hypotheses_hold) {
    const auto induced = induce_tau(a, tau);
    auto result = is_quasiderivation_3(induced, d, s, r);
    VerificationReport conclusion;
    conclusion.identity = "quasiderivation of the induced algebra";
    conclusion.tuples_checked = 1;
    if (!result) conclusion.violations.push_back({{}, "no witness D' exists", {}});
    out.conclusion = std::move(conclusion);
  }
  return out;
}

}  // namespace bihom
