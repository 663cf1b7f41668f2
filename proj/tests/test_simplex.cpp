#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "prodmod/simplex.hpp"
#include "prodmod/smt.hpp"
#include "support/fourier_motzkin.hpp"
#include "support/generators.hpp"

using namespace prodmod;

namespace {

LinearConstraint con(std::vector<std::pair<std::size_t, Rational>> terms, Rel rel, Rational rhs) {
  return LinearConstraint{std::move(terms), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("strict bounds need the infinitesimal") {
  LinearConstraintSystem sys{1, {con({{0, 1}}, Rel::Lt, 1), con({{0, -1}}, Rel::Lt, -Rational(1, 2))}};
  auto m = lra_feasible(sys);
  REQUIRE(m);
  CHECK(satisfies(sys, *m));
  CHECK((*m)[0] > Rational(1, 2));
  CHECK((*m)[0] < 1);

  LinearConstraintSystem tight{1, {con({{0, 1}}, Rel::Lt, 1), con({{0, -1}}, Rel::Le, -1)}};
  CHECK_FALSE(lra_feasible(tight));
  CHECK_FALSE(testing::fm_feasible(tight));
}

TEST_CASE("equalities and empty systems") {
  LinearConstraintSystem sys{2, {con({{0, 1}, {1, 1}}, Rel::Eq, 3), con({{0, 1}, {1, -1}}, Rel::Eq, 1)}};
  auto m = lra_feasible(sys);
  REQUIRE(m);
  CHECK((*m)[0] == 2);
  CHECK((*m)[1] == 1);
  CHECK(lra_feasible(LinearConstraintSystem{3, {}}));
}

TEST_CASE("simplex push and pop restore bounds") {
  Simplex s;
  int x = s.new_var(), y = s.new_var();
  int sum = s.new_row({{x, 1}, {y, 1}});
  CHECK(s.assert_lower(x, Rational(0), 0));
  CHECK(s.assert_lower(y, Rational(0), 1));
  CHECK(s.check());
  s.push();
  CHECK(s.assert_upper(sum, DeltaRational(0, -1), 2));
  CHECK_FALSE(s.check());
  std::vector<int> conflict = s.conflict();
  std::sort(conflict.begin(), conflict.end());
  CHECK(conflict == std::vector<int>{0, 1, 2});
  s.pop_to(0);
  CHECK(s.check());
  CHECK(s.assert_upper(sum, Rational(1), 3));
  CHECK(s.check());
}

TEST_CASE("smt solver on a small mixed problem") {
  // (x <= 1 or y <= 1), x + y >= 3, x, y >= 0, x <= 3/2; adding y <= 1 makes it unsatisfiable.
  for (bool extra : {false, true}) {
    smt::Solver s;
    int x = s.new_real(), y = s.new_real();
    s.axiom_ge(x, 0);
    s.axiom_ge(y, 0);
    int sum = s.linear({{x, 1}, {y, 1}});
    s.add_clause({smt::pos(s.atom_le(x, 1)), smt::pos(s.atom_le(y, 1))});
    s.add_clause({smt::pos(s.atom_ge(sum, 3))});
    s.add_clause({smt::pos(s.atom_le(x, Rational(3, 2)))});
    if (extra) {
      s.add_clause({smt::pos(s.atom_le(y, 1))});
      CHECK(s.solve({}) == smt::Result::Unsat);
      continue;
    }
    REQUIRE(s.solve({}) == smt::Result::Sat);
    CHECK(s.model_real(x) + s.model_real(y) >= 3);
    CHECK(s.model_real(x) <= Rational(3, 2));
    CHECK((s.model_real(x) <= 1 || s.model_real(y) <= 1));
  }
}

TEST_CASE("lra_feasible agrees with Fourier-Motzkin") {
  testing::Rng rng(2024);
  std::size_t sat = 0;
  for (int i = 0; i < 400; ++i) {
    LinearConstraintSystem sys = testing::random_system(rng, 5, 8);
    auto m = lra_feasible(sys);
    bool expected = testing::fm_feasible(sys);
    CHECK(m.has_value() == expected);
    if (m) {
      ++sat;
      CHECK(satisfies(sys, *m));
    }
  }
  CHECK(sat > 40);
  CHECK(sat < 360);
}
