#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bihom;
using fixtures::diag;
using fixtures::space;

namespace {

// ad_{x,y}(z) = [x, y, z]
GradedMap ad(const ThreeBiHomLieSuperalgebra& a, std::size_t x, std::size_t y) {
  std::vector<Vector> cols;
  for (std::size_t z = 0; z < a.dim(); ++z) cols.push_back(eval3(a.bracket(), x, y, z));
  return {a.space(), Matrix::from_columns(cols, a.dim()), a.space().parity(x) + a.space().parity(y)};
}

std::vector<BiHomLieSuperalgebra> binary_algebras() {
  std::vector<BiHomLieSuperalgebra> out;
  for (const auto& f : fixtures::tau_fixtures()) out.push_back(f.algebra);
  return out;
}

bool diagonal(const GradedMap& m) {
  for (std::size_t k = 0; k < m.dim(); ++k)
    for (std::size_t i = 0; i < m.dim(); ++i)
      if (k != i && m.matrix()(k, i) != 0) return false;
  return true;
}

}  // namespace

TEST(IsDerivation, ZeroMapAlways) {
  for (const auto& f : fixtures::ternary_fixtures())
    for (unsigned s = 0; s <= 2; ++s)
      for (unsigned r = 0; r <= 2; ++r) {
        EXPECT_TRUE(is_derivation_3(f.algebra, GradedMap::zero(f.algebra.space()), s, r).holds());
        EXPECT_TRUE(
            is_derivation_3(f.algebra, GradedMap::zero(f.algebra.space(), Parity::odd), s, r)
                .holds());
      }
}

TEST(IsDerivation, ZeroBracketNeedsOnlyCommutation) {
  auto sp = space("001");
  ThreeBiHomLieSuperalgebra a(StructureTensor3(sp), diag(sp, {"1", "2", "3"}),
                              diag(sp, {"2", "2", "1"}));
  EXPECT_TRUE(is_derivation_3(a, diag(sp, {"5", "-1", "7"}), 1, 1).holds());
  EXPECT_FALSE(is_derivation_3(a, fixtures::mat(sp, {{"0", "1", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}), 0, 0)
                   .holds());
}

TEST(IsDerivation, InnerMapsOfUntwistedAlgebras) {
  int checked = 0;
  for (const auto& f : fixtures::ternary_fixtures()) {
    if (!f.algebra.is_untwisted()) continue;
    for (std::size_t x = 0; x < f.algebra.dim(); ++x)
      for (std::size_t y = 0; y < f.algebra.dim(); ++y) {
        EXPECT_TRUE(is_derivation_3(f.algebra, ad(f.algebra, x, y), 0, 0).holds())
            << f.name << " ad(" << x << "," << y << ")";
        ++checked;
      }
  }
  EXPECT_GT(checked, 50);
}

TEST(IsDerivation, OddMapsNeedSigns) {
  // super2|1 induced from tau = (0,1,0): odd inner maps exist and must pass
  for (const auto& f : fixtures::ternary_fixtures()) {
    if (f.name != "super2|1/tau0/induced") continue;
    auto d = ad(f.algebra, 1, 2);
    ASSERT_EQ(d.parity(), Parity::odd);
    EXPECT_TRUE(is_derivation_3(f.algebra, d, 0, 0).holds());
    // the same matrix declared even would be rejected at construction
    EXPECT_THROW(GradedMap(d.space(), d.matrix(), Parity::even), std::invalid_argument);
  }
}

TEST(SolveDerivationSpace, ZeroBracketUntwisted) {
  auto sp = space("011");
  auto a = ThreeBiHomLieSuperalgebra::untwisted(StructureTensor3(sp));
  EXPECT_EQ(solve_derivation_space(a, {0, 0, Parity::even}).dimension(), 5u);
  EXPECT_EQ(solve_derivation_space(a, {0, 0, Parity::odd}).dimension(), 4u);
}

TEST(SolveDerivationSpace, CommutantOfDistinctDiagonal) {
  auto sp = space("000");
  ThreeBiHomLieSuperalgebra a(StructureTensor3(sp), diag(sp, {"1", "2", "3"}),
                              GradedMap::identity(sp));
  auto space_ = solve_derivation_space(a, {1, 0, Parity::even});
  EXPECT_EQ(space_.dimension(), 3u);
  for (const auto& d : space_.basis) EXPECT_TRUE(diagonal(d));
}

TEST(SolveDerivationSpace, MatchesDenseOracleTernary) {
  for (const auto& f : fixtures::ternary_fixtures()) {
    const auto g = oracle::from(f.algebra);
    for (unsigned s = 0; s <= 1; ++s)
      for (unsigned r = 0; r <= 1; ++r)
        for (Parity p : {Parity::even, Parity::odd}) {
          auto sol = solve_derivation_space(f.algebra, {s, r, p});
          EXPECT_EQ(sol.dimension(), oracle::derivation_nullity(g, s, r, to_int(p)))
              << f.name << " s=" << s << " r=" << r << " p=" << to_int(p);
          for (const auto& d : sol.basis) {
            EXPECT_EQ(d.parity(), p);
            EXPECT_TRUE(is_derivation_3(f.algebra, d, s, r).holds()) << f.name;
          }
          EXPECT_EQ(rank(Matrix::from_columns(
                        [&] {
                          std::vector<Vector> flat;
                          for (const auto& d : sol.basis) {
                            Vector v;
                            for (std::size_t k = 0; k < d.dim(); ++k)
                              for (std::size_t i = 0; i < d.dim(); ++i)
                                v.push_back(d.matrix()(k, i));
                            flat.push_back(v);
                          }
                          return flat;
                        }(),
                        f.algebra.dim() * f.algebra.dim())),
                    sol.dimension());
        }
  }
}

TEST(SolveDerivationSpace, MatchesDenseOracleBinary) {
  for (const auto& a : binary_algebras()) {
    const auto g = oracle::from(a);
    for (unsigned s = 0; s <= 2; ++s)
      for (unsigned r = 0; r <= 2; ++r)
        for (Parity p : {Parity::even, Parity::odd}) {
          auto sol = solve_derivation_space(a, {s, r, p});
          ASSERT_EQ(sol.dimension(), oracle::derivation_nullity(g, s, r, to_int(p)));
          for (const auto& d : sol.basis) EXPECT_TRUE(is_derivation_2(a, d, s, r).holds());
        }
  }
}

TEST(Supercommutator, TrivialAndOdd) {
  auto sp = space("01");
  auto d = diag(sp, {"2", "-3"});
  EXPECT_EQ(supercommutator(d, d), GradedMap::zero(sp));
  EXPECT_EQ(supercommutator(d, GradedMap::identity(sp)), GradedMap::zero(sp));
  auto o1 = fixtures::mat(sp, {{"0", "2"}, {"1", "0"}}, Parity::odd);
  auto o2 = fixtures::mat(sp, {{"0", "-1"}, {"3", "0"}}, Parity::odd);
  auto c = supercommutator(o1, o2);
  EXPECT_EQ(c.parity(), Parity::even);
  EXPECT_EQ(c.matrix(), o1.matrix() * o2.matrix() + o2.matrix() * o1.matrix());
}

TEST(Supercommutator, ClosureOfDerivationSpaces) {
  std::size_t pairs = 0;
  for (const auto& f : fixtures::ternary_fixtures()) {
    std::vector<std::pair<DerivationQuery, GradedMap>> all;
    for (unsigned s = 0; s <= 1; ++s)
      for (unsigned r = 0; r <= 1; ++r)
        for (Parity p : {Parity::even, Parity::odd})
          for (auto& d : solve_derivation_space(f.algebra, {s, r, p}).basis)
            all.emplace_back(DerivationQuery{s, r, p}, d);
    for (const auto& [q1, d1] : all)
      for (const auto& [q2, d2] : all) {
        auto c = supercommutator(d1, d2);
        EXPECT_TRUE(is_derivation_3(f.algebra, c, q1.s + q2.s, q1.r + q2.r,
                                    {.fail_fast = true})
                        .holds())
            << f.name;
        ++pairs;
      }
  }
  EXPECT_GT(pairs, 100u);
}

TEST(Quasiderivation, DerivationsAreQuasi) {
  for (const auto& f : fixtures::ternary_fixtures())
    for (Parity p : {Parity::even, Parity::odd})
      for (const auto& d : solve_derivation_space(f.algebra, {0, 1, p}).basis) {
        auto res = is_quasiderivation_3(f.algebra, d, 0, 1);
        ASSERT_TRUE(res) << f.name;
        EXPECT_EQ(res.witness->parity(), p);
        EXPECT_TRUE(verify_quasiderivation_witness(f.algebra, d, *res.witness, 0, 1).holds());
        EXPECT_TRUE(verify_quasiderivation_witness(f.algebra, d, d, 0, 1).holds());
      }
}

TEST(Quasiderivation, ZeroBracketWitnessIsZero) {
  auto sp = space("001");
  ThreeBiHomLieSuperalgebra a(StructureTensor3(sp), diag(sp, {"1", "2", "2"}),
                              GradedMap::identity(sp));
  auto d = diag(sp, {"3", "1", "-1"});
  auto res = is_quasiderivation_3(a, d, 1, 0);
  ASSERT_TRUE(res);
  EXPECT_EQ(*res.witness, GradedMap::zero(sp));
}

TEST(Quasiderivation, QuasiButNotDerivationOnDim2) {
  auto sp = space("00");
  auto a = BiHomLieSuperalgebra::untwisted(fixtures::lie2(sp, {{1, 2, 2, "1"}}));
  auto d = diag(sp, {"1", "0"});
  EXPECT_FALSE(is_derivation_2(a, d, 0, 0).holds());
  auto res = is_quasiderivation(a, d, 0, 0);
  ASSERT_TRUE(res);
  EXPECT_TRUE(verify_quasiderivation_witness(a, d, *res.witness, 0, 0).holds());
  // D'(e2) = [D e1, e2] + [e1, D e2] = e2
  EXPECT_EQ(res.witness->apply(basis_vector(2, 1)), basis_vector(2, 1));
}

TEST(Quasiderivation, NoWitnessDetected) {
  // Only the linear system matters here, so the bracket need not be skew.
  auto sp = space("00");
  auto b = BiHomLieSuperalgebra::untwisted(fixtures::tensor2(sp, {{1, 1, 2, "1"}}));
  // D = E_12: at (e1, e2) the bracket is 0 but [D e1, e2] + [e1, D e2] = [e1, e1] = e2.
  auto d = fixtures::mat(sp, {{"0", "1"}, {"0", "0"}});
  EXPECT_FALSE(is_quasiderivation(b, d, 0, 0));
}

TEST(Quasiderivation, RequiresCommutation) {
  auto sp = space("00");
  BiHomLieSuperalgebra a(StructureTensor2(sp), diag(sp, {"1", "2"}), GradedMap::identity(sp));
  EXPECT_THROW(is_quasiderivation(a, fixtures::mat(sp, {{"0", "1"}, {"0", "0"}}), 0, 0),
               precondition_error);
}

TEST(DerivationTransfer, TrivialCases) {
  for (const auto& f : fixtures::tau_fixtures()) {
    auto zero = GradedMap::zero(f.algebra.space());
    auto t = check_derivation_transfer(f.algebra, f.tau, zero, 0, 0);
    EXPECT_TRUE(t.hypotheses_hold) << f.name;
    EXPECT_TRUE(t.holds()) << f.name;
    for (const auto& d : solve_derivation_space(f.algebra, {0, 0, Parity::even}).basis) {
      auto z = check_derivation_transfer(f.algebra, LinearForm::zero(f.algebra.space()), d, 0, 0);
      EXPECT_TRUE(z.holds()) << f.name;
    }
  }
}

TEST(DerivationTransfer, NeverContradicted) {
  int concluded = 0, nonzero_bracket = 0, annihilated = 0;
  for (const auto& f : fixtures::tau_fixtures())
    for (unsigned s = 0; s <= 1; ++s)
      for (unsigned r = 0; r <= 1; ++r)
        for (Parity p : {Parity::even, Parity::odd})
          for (const auto& d : solve_derivation_space(f.algebra, {s, r, p}).basis) {
            auto t = check_derivation_transfer(f.algebra, f.tau, d, s, r);
            EXPECT_FALSE(t.contradiction()) << f.name;
            if (!t.hypotheses_hold) continue;
            ++concluded;
            if (!induce_tau(f.algebra, f.tau).bracket().is_zero()) ++nonzero_bracket;
            if (is_zero(f.tau.after(d))) ++annihilated;
          }
  EXPECT_GT(concluded, 20);
  EXPECT_GT(nonzero_bracket, 0);
  EXPECT_GT(annihilated, 0);
}

TEST(DerivationTransfer, PreconditionsEnforced) {
  auto sp = space("00");
  auto a = BiHomLieSuperalgebra::untwisted(fixtures::lie2(sp, {{1, 2, 2, "1"}}));
  EXPECT_THROW(check_derivation_transfer(a, fixtures::form(sp, {"1", "0"}), diag(sp, {"1", "0"}), 0, 0),
               precondition_error);
  EXPECT_THROW(check_derivation_transfer(a, fixtures::form(sp, {"0", "1"}),
                                     GradedMap::zero(sp), 0, 0),
               precondition_error);
}

TEST(QuasiderivationTransfer, EmpiricalCheck) {
  int concluded = 0;
  for (const auto& f : fixtures::tau_fixtures()) {
    if (!diagonal(f.algebra.alpha()) || !diagonal(f.algebra.beta())) continue;
    std::vector<std::string> entries;
    for (std::size_t i = 0; i < f.algebra.dim(); ++i) entries.push_back(std::to_string(i + 1));
    auto d = diag(f.algebra.space(), entries);
    if (!is_quasiderivation(f.algebra, d, 0, 0)) continue;
    auto t = check_quasiderivation_transfer(f.algebra, f.tau, d, 0, 0);
    EXPECT_FALSE(t.contradiction()) << f.name;
    EXPECT_FALSE(t.notes.empty());
    if (t.hypotheses_hold) ++concluded;
  }
  EXPECT_GT(concluded, 0);
}
