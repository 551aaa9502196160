#pragma once

#include <array>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bihom/bihom.hpp"

namespace fixtures {

using namespace bihom;

// "0011" -> even, even, odd, odd
inline SuperSpace space(const std::string& parities) {
  std::vector<Parity> ps;
  for (char c : parities) ps.push_back(c == '1' ? Parity::odd : Parity::even);
  return SuperSpace(ps);
}

inline Scalar q(const std::string& s) { return parse_scalar(s); }

inline Vector vec(const std::vector<std::string>& cs) {
  Vector v;
  for (const auto& c : cs) v.push_back(q(c));
  return v;
}

struct Entry2 {
  std::size_t i, j, k;
  std::string c;
};
struct Entry3 {
  std::size_t i, j, l, k;
  std::string c;
};

// 1-based entries, taken literally.
inline StructureTensor2 tensor2(const SuperSpace& sp, const std::vector<Entry2>& es) {
  std::map<StructureTensor2::Key, Scalar> m;
  for (const auto& e : es) m[{e.i - 1, e.j - 1, e.k - 1}] += q(e.c);
  return StructureTensor2(sp, m);
}

// [e_i, e_j] = c e_k together with [e_j, e_i] = -(-1)^{|i||j|} c e_k.
inline StructureTensor2 lie2(const SuperSpace& sp, const std::vector<Entry2>& es) {
  std::map<StructureTensor2::Key, Scalar> m;
  for (const auto& e : es) {
    const Scalar c = q(e.c);
    m[{e.i - 1, e.j - 1, e.k - 1}] += c;
    if (e.i != e.j)
      m[{e.j - 1, e.i - 1, e.k - 1}] -=
          koszul_sign(sp.parity(e.i - 1), sp.parity(e.j - 1)) * c;
  }
  return StructureTensor2(sp, m);
}

inline StructureTensor3 tensor3(const SuperSpace& sp, const std::vector<Entry3>& es) {
  std::map<StructureTensor3::Key, Scalar> m;
  for (const auto& e : es) m[{e.i - 1, e.j - 1, e.l - 1, e.k - 1}] += q(e.c);
  return StructureTensor3(sp, m);
}

inline GradedMap diag(const SuperSpace& sp, const std::vector<std::string>& d) {
  return GradedMap::diagonal(sp, vec(d));
}

// Rows given top to bottom; column i is the image of e_i.
inline GradedMap mat(const SuperSpace& sp, const std::vector<std::vector<std::string>>& rows,
                     Parity p = Parity::even) {
  std::vector<Vector> rs;
  for (const auto& r : rows) rs.push_back(vec(r));
  return GradedMap(sp, Matrix::from_rows(rs), p);
}

inline LinearForm form(const SuperSpace& sp, const std::vector<std::string>& cs) {
  return LinearForm(sp, vec(cs));
}

// ---------------------------------------------------------------------------
// Binary Lie superalgebras with candidate forms and automorphisms.

struct LieSeed {
  std::string name;
  StructureTensor2 bracket;
  std::vector<LinearForm> taus;
  std::vector<GradedMap> automorphisms;
};

inline std::vector<LieSeed> lie_seeds() {
  std::vector<LieSeed> out;
  {
    auto sp = space("00");
    out.push_back({"aff2", lie2(sp, {{1, 2, 2, "1"}}),
                   {form(sp, {"1", "0"}), form(sp, {"3/2", "0"})},
                   {diag(sp, {"1", "2"}), mat(sp, {{"1", "0"}, {"1", "1"}})}});
  }
  {
    auto sp = space("01");
    out.push_back({"aff1|1", lie2(sp, {{1, 2, 2, "1"}}),
                   {form(sp, {"1", "0"}), form(sp, {"-2", "0"})},
                   {diag(sp, {"1", "3"}), diag(sp, {"1", "-1/2"})}});
  }
  {
    auto sp = space("000");
    out.push_back({"heisenberg3", lie2(sp, {{1, 2, 3, "1"}}),
                   {form(sp, {"1", "0", "0"}), form(sp, {"1", "2", "0"})},
                   {diag(sp, {"2", "3", "6"}), diag(sp, {"2", "2", "4"})}});
  }
  {
    auto sp = space("001");
    out.push_back({"super2|1",
                   lie2(sp, {{2, 3, 3, "1"}, {3, 3, 1, "1"}, {2, 1, 1, "2"}}),
                   {form(sp, {"0", "1", "0"}), form(sp, {"0", "-3", "0"})},
                   {diag(sp, {"4", "1", "2"}), diag(sp, {"1/9", "1", "-1/3"})}});
  }
  {
    auto sp = space("001");
    out.push_back({"diag2|1", lie2(sp, {{1, 2, 2, "1"}, {1, 3, 3, "1/2"}}),
                   {form(sp, {"1", "0", "0"})},
                   {diag(sp, {"1", "2", "3"})}});
  }
  {
    auto sp = space("0011");
    // gl(1|1): E11, E22 | E12, E21
    out.push_back({"gl1|1",
                   lie2(sp, {{3, 4, 1, "1"},
                             {3, 4, 2, "1"},
                             {1, 3, 3, "1"},
                             {1, 4, 4, "-1"},
                             {2, 3, 3, "-1"},
                             {2, 4, 4, "1"}}),
                   {form(sp, {"1", "-1", "0", "0"})},
                   {diag(sp, {"1", "1", "2", "1/2"}), diag(sp, {"1", "1", "-3", "-1/3"})}});
  }
  {
    auto sp = space("0000");
    out.push_back({"aff2+aff2", lie2(sp, {{1, 2, 2, "1"}, {3, 4, 4, "1"}}),
                   {form(sp, {"1", "0", "1", "0"}), form(sp, {"1", "0", "-2", "0"})},
                   {diag(sp, {"1", "2", "1", "3"})}});
  }
  {
    auto sp = space("011");
    out.push_back({"abelian1|2", StructureTensor2(sp),
                   {form(sp, {"2", "0", "0"})},
                   {diag(sp, {"3", "1", "2"}), diag(sp, {"1", "5", "7"})}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// (A, tau) pairs: untwisted, Yau twists with alpha = beta, and the
// nonmultiplicative (g, [.,.], Id, c Id). Only pairs passing every axiom and
// every tau condition are kept.

struct TauFixture {
  std::string name;
  BiHomLieSuperalgebra algebra;
  LinearForm tau;
};

inline bool valid_pair(const BiHomLieSuperalgebra& a, const LinearForm& tau) {
  return all_hold(verify_axioms(a)) && check_tau_conditions(a, tau).holds();
}

inline std::vector<TauFixture> tau_fixtures() {
  std::vector<TauFixture> out;
  auto keep = [&](std::string name, BiHomLieSuperalgebra a, const LinearForm& tau) {
    if (valid_pair(a, tau)) out.push_back({std::move(name), std::move(a), tau});
  };
  for (const auto& seed : lie_seeds()) {
    const auto& sp = seed.bracket.space();
    for (std::size_t t = 0; t < seed.taus.size(); ++t) {
      const auto& tau = seed.taus[t];
      const std::string base = seed.name + "/tau" + std::to_string(t);
      keep(base, BiHomLieSuperalgebra::untwisted(seed.bracket), tau);
      for (std::size_t k = 0; k < seed.automorphisms.size(); ++k) {
        const auto& aut = seed.automorphisms[k];
        try {
          keep(base + "/yau" + std::to_string(k),
               make_yau_twist_2(BiHomLieSuperalgebra::untwisted(seed.bracket), aut, aut), tau);
        } catch (const precondition_error&) {
        }
      }
      for (const char* c : {"2", "-1/2"})
        keep(base + "/beta=" + c,
             BiHomLieSuperalgebra(seed.bracket, GradedMap::identity(sp),
                                  GradedMap::scalar(sp, q(c))),
             tau);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ternary fixtures.

struct TernaryFixture {
  std::string name;
  ThreeBiHomLieSuperalgebra algebra;
};

// The simple 4-dimensional 3-Lie algebra: [e_i, e_j, e_k] = eps_{ijkl} e_l.
inline StructureTensor3 a4_bracket() {
  auto sp = space("0000");
  std::map<StructureTensor3::Key, Scalar> m;
  std::array<std::size_t, 4> p{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inversions;
    m[{p[0], p[1], p[2], p[3]}] = inversions % 2 == 0 ? 1 : -1;
  } while (std::next_permutation(p.begin(), p.end()));
  return StructureTensor3(sp, m);
}

inline std::vector<TernaryFixture> ternary_fixtures() {
  std::vector<TernaryFixture> out;
  auto keep = [&](std::string name, ThreeBiHomLieSuperalgebra a) {
    if (all_hold(verify_axioms(a))) out.push_back({std::move(name), std::move(a)});
  };
  {
    auto sp = space("0000");
    auto a4 = ThreeBiHomLieSuperalgebra::untwisted(a4_bracket());
    keep("A4", a4);
    keep("A4/twist(1,1,-1,-1)",
         make_twist_3(a4, diag(sp, {"1", "1", "-1", "-1"}), diag(sp, {"-1", "-1", "-1", "-1"})));
  }
  {
    auto sp = space("011");
    keep("zero1|2", ThreeBiHomLieSuperalgebra(StructureTensor3(sp), diag(sp, {"2", "1", "3"}),
                                              diag(sp, {"1", "1/2", "3"}), true));
  }
  for (const auto& f : tau_fixtures()) {
    try {
      keep(f.name + "/induced", induce_tau(f.algebra, f.tau));
    } catch (const precondition_error&) {
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operators. Searches run over diagonal maps with entries in a small set,
// on distinct ternary fixtures with nonzero bracket and diagonal twists.

inline bool is_diagonal(const GradedMap& m) {
  for (std::size_t k = 0; k < m.dim(); ++k)
    for (std::size_t i = 0; i < m.dim(); ++i)
      if (k != i && sgn(m.matrix()(k, i)) != 0) return false;
  return true;
}

inline std::vector<TernaryFixture> distinct_nonzero_ternary(std::size_t cap) {
  std::vector<TernaryFixture> out;
  for (auto& f : ternary_fixtures()) {
    const auto& a = f.algebra;
    if (a.bracket().is_zero() || !is_diagonal(a.alpha()) || !is_diagonal(a.beta())) continue;
    bool seen = false;
    for (const auto& g : out)
      if (g.algebra.bracket() == a.bracket() && g.algebra.alpha() == a.alpha() &&
          g.algebra.beta() == a.beta())
        seen = true;
    if (!seen) out.push_back(std::move(f));
    if (out.size() == cap) break;
  }
  return out;
}

// Every diagonal map with entries from `values`.
inline std::vector<GradedMap> diagonal_maps(const SuperSpace& sp, const std::vector<Scalar>& values) {
  std::vector<GradedMap> out;
  std::vector<std::size_t> idx(sp.dim(), 0);
  while (true) {
    Vector d;
    for (auto i : idx) d.push_back(values[i]);
    out.push_back(GradedMap::diagonal(sp, d));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == values.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

inline bool is_scalar_map(const GradedMap& m) {
  return is_diagonal(m) && m == GradedMap::scalar(m.space(), m.matrix()(0, 0));
}

struct RbFixture {
  std::string name;
  ThreeBiHomLieSuperalgebra algebra;
  RotaBaxterOperator rb;
};

inline const std::vector<Scalar>& rb_weights() {
  static const std::vector<Scalar> w{0, 1, -1, Scalar(1, 2)};
  return w;
}

// (A, R, lambda) passing is_rb3: the scalar solutions R = -lambda Id and
// R = -lambda/2 Id, plus non-scalar diagonal ones found by search.
inline std::vector<RbFixture> rb_fixtures(std::size_t per_case = 2) {
  std::vector<RbFixture> out;
  const std::vector<Scalar> entries{0, 1, -1, Scalar(1, 2), Scalar(-1, 2)};
  for (const auto& f : distinct_nonzero_ternary(8)) {
    const auto& sp = f.algebra.space();
    for (const auto& lam : rb_weights()) {
      for (const Scalar& c : {Scalar(-lam), Scalar(-lam / 2)}) {
        if (sgn(c) == 0) continue;
        out.push_back({f.name + "/R=" + c.get_str() + "Id/l=" + lam.get_str(), f.algebra,
                       RotaBaxterOperator(GradedMap::scalar(sp, c), lam)});
      }
      std::size_t found = 0;
      for (const auto& m : diagonal_maps(sp, entries)) {
        if (found == per_case) break;
        if (is_scalar_map(m)) continue;
        RotaBaxterOperator rb(m, lam);
        if (!is_rb3(f.algebra, rb, {.fail_fast = true}).holds()) continue;
        std::string name = f.name + "/R=diag(";
        for (std::size_t i = 0; i < sp.dim(); ++i)
          name += (i ? "," : "") + m.matrix()(i, i).get_str();
        out.push_back({name + ")/l=" + lam.get_str(), f.algebra, rb});
        ++found;
      }
    }
  }
  return out;
}

struct KernelFixture {
  std::string name;
  BiHomLieSuperalgebra algebra;
  LinearForm tau;
  RotaBaxterOperator rb;
};

// (A, tau, R) with R Rota-Baxter on the binary algebra. Includes a pair on
// aff2+aff2 whose transfer fails.
inline std::vector<KernelFixture> kernel_fixtures(std::size_t per_case = 2) {
  std::vector<KernelFixture> out;
  const std::vector<Scalar> entries{0, 1, -1, Scalar(1, 2)};
  for (const auto& f : tau_fixtures()) {
    const auto& a = f.algebra;
    if (a.bracket().is_zero() || !is_diagonal(a.alpha()) || !is_diagonal(a.beta())) continue;
    if (induce_tau(a, f.tau).bracket().is_zero()) continue;
    for (const auto& lam : rb_weights()) {
      std::size_t found = 0;
      for (const auto& m : diagonal_maps(a.space(), entries)) {
        if (found == per_case) break;
        RotaBaxterOperator rb(m, lam);
        if (!is_rb2(a, rb, {.fail_fast = true}).holds()) continue;
        out.push_back({f.name + "/l=" + lam.get_str() + "/#" + std::to_string(found), a, f.tau, rb});
        ++found;
      }
    }
  }
  auto sp = space("0000");
  auto sum = BiHomLieSuperalgebra::untwisted(lie2(sp, {{1, 2, 2, "1"}, {3, 4, 4, "1"}}));
  auto tau = form(sp, {"1", "0", "1", "0"});
  // R e3 = e1, R e4 = e2
  auto shift = mat(sp, {{"0", "0", "1", "0"}, {"0", "0", "0", "1"}, {"0", "0", "0", "0"}, {"0", "0", "0", "0"}});
  for (const char* lam : {"1", "0", "-1"})
    if (is_rb2(sum, RotaBaxterOperator(shift, q(lam))).holds())
      out.push_back({std::string("aff2+aff2/shift/l=") + lam, sum, tau,
                     RotaBaxterOperator(shift, q(lam))});
  return out;
}

}  // namespace fixtures
