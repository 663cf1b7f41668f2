#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "prodmod/errors.hpp"
#include "prodmod/reduction.hpp"
#include "support/generators.hpp"

using namespace prodmod;

namespace {

const ModalFormula bp = parse("[]p");
const ModalFormula p = parse("p");
const Sequence root;
const Sequence c = root.child(bp);
const Sequence cp = root.child(bp, true);

PropFormula V(const ExtVar& x) { return PropFormula::var(x); }

std::vector<PropFormula> family(const ReductionInstance& inst, Family f) {
  std::vector<PropFormula> out;
  for (const auto& t : inst.premises)
    if (t.family == f) out.push_back(t.formula);
  return out;
}

bool has(const ReductionInstance& inst, Family f, const PropFormula& g) {
  auto fs = family(inst, f);
  return std::find(fs.begin(), fs.end(), g) != fs.end();
}

}  // namespace

TEST_CASE("variables of the single-box instances") {
  Levels lv = levels(FormulaSet{bp});
  auto v2 = build_variables(lv, OmegaSet::from({root, c}, OmegaKind::Coherent), Pipeline::Crisp);
  CHECK(v2 == std::vector<ExtVar>{ExtVar::modal(bp, root), ExtVar::base("p", c)});
  auto v3 = build_variables(lv, OmegaSet::from({root, c, cp}, OmegaKind::Coherent), Pipeline::Crisp);
  CHECK(std::count(v3.begin(), v3.end(), ExtVar::alpha(cp, p)) == 1);
  CHECK(v3.size() == 4);
  auto v1 = build_variables(lv, OmegaSet::from({root}, OmegaKind::Coherent), Pipeline::Crisp);
  CHECK(v1 == std::vector<ExtVar>{ExtVar::modal(bp, root)});
  auto vv = build_variables(lv, OmegaSet::from({root, cp}, OmegaKind::Simple), Pipeline::Valued);
  CHECK(std::count(vv.begin(), vv.end(), ExtVar::rel(root, cp)) == 1);
}

TEST_CASE("crisp families for {[]p}") {
  PropFormula box0 = V(ExtVar::modal(bp, root)), pc = V(ExtVar::base("p", c)), pcp = V(ExtVar::base("p", cp));
  PropFormula alpha = V(ExtVar::alpha(cp, p));

  auto two = build_mod_crisp(FormulaSet{bp}, OmegaSet::from({root, c}, OmegaKind::Coherent));
  CHECK(family(two, Family::WBox) ==
        std::vector<PropFormula>{PropFormula::weak_and(PropFormula::iff(box0, pc), PropFormula::imp(box0, pc))});
  CHECK(two.side_disjunct == PropFormula::bot());
  CHECK(family(two, Family::UWBox).empty());

  auto three = build_mod_crisp(FormulaSet{bp}, OmegaSet::from({root, c, cp}, OmegaKind::Coherent));
  CHECK(has(three, Family::UWBox, PropFormula::neg(box0)));
  CHECK(has(three, Family::TwoV, PropFormula::iff(pcp, PropFormula::strong_and(pc, alpha))));
  CHECK(family(three, Family::WBox).empty());
  CHECK(three.side_disjunct == alpha);
}

TEST_CASE("leaf diamond is pinned to bottom in both pipelines") {
  ModalFormula dp = parse("<>p");
  PropFormula expected = PropFormula::iff(V(ExtVar::modal(dp, root)), PropFormula::bot());
  auto crisp = build_mod_crisp(FormulaSet{dp}, OmegaSet::from({root}, OmegaKind::Coherent));
  CHECK(family(crisp, Family::WDiamond) == std::vector<PropFormula>{expected});
  auto valued = build_mod_valued(FormulaSet{dp}, OmegaSet::from({root}, OmegaKind::Simple));
  CHECK(family(valued, Family::WDiamond) == std::vector<PropFormula>{expected});
}

TEST_CASE("valued families for {[]p}") {
  PropFormula box0 = V(ExtVar::modal(bp, root));
  auto w = build_mod_valued(FormulaSet{bp}, OmegaSet::from({root, c}, OmegaKind::Simple));
  PropFormula edge = PropFormula::imp(V(ExtVar::rel(root, c)), V(ExtVar::base("p", c)));
  CHECK(family(w, Family::WBox) ==
        std::vector<PropFormula>{PropFormula::weak_and(PropFormula::iff(box0, edge), PropFormula::imp(box0, edge))});

  auto u = build_mod_valued(FormulaSet{bp}, OmegaSet::from({root, cp}, OmegaKind::Simple));
  CHECK(has(u, Family::UWBox, PropFormula::neg(box0)));
  CHECK(u.side_disjunct == PropFormula::imp(V(ExtVar::rel(root, cp)), V(ExtVar::base("p", cp))));
}

TEST_CASE("invalid omega sets are rejected") {
  CHECK_THROWS_AS(build_mod_crisp(FormulaSet{bp}, OmegaSet::from({root, cp}, OmegaKind::Coherent)), IncoherentOmega);
  CHECK_THROWS_AS(build_mod_valued(FormulaSet{bp}, OmegaSet::from({root, c, cp}, OmegaKind::Simple)), NotSimpleOmega);
}

TEST_CASE("structural properties on random instances") {
  testing::Rng rng(3);
  std::size_t instances = 0;
  for (int i = 0; i < 60; ++i) {
    Problem pr = testing::random_problem(rng, 2, 2, 4, Logic::Crisp);
    FormulaSet ups = pr.upsilon();
    Levels lv = levels(ups);
    std::vector<OmegaSet> coh, simple;
    try {
      coh = enumerate_coherent(lv, 64);
      simple = enumerate_simple(lv, 64);
    } catch (const BudgetExceeded&) {
      continue;
    }
    for (const auto& om : coh) {
      ++instances;
      auto inst = build_mod_crisp(ups, om);
      std::set<ExtVar> declared(inst.variables.begin(), inst.variables.end());
      for (const auto& t : inst.premises) {
        for (const auto& x : ext_variables(t.formula)) CHECK(declared.count(x) == 1);
        if (t.formula.contains_delta()) CHECK(t.family == Family::Imp);
      }
      for (const auto& x : ext_variables(inst.side_disjunct)) CHECK(declared.count(x) == 1);
      auto again = build_mod_crisp(ups, om);
      CHECK(again.listing() == inst.listing());
    }
    for (const auto& om : simple) {
      ++instances;
      auto inst = build_mod_valued(ups, om);
      std::set<ExtVar> declared(inst.variables.begin(), inst.variables.end());
      for (const auto& t : inst.premises) {
        CHECK_FALSE(t.formula.contains_delta());
        for (const auto& x : ext_variables(t.formula)) CHECK(declared.count(x) == 1);
      }
      CHECK(build_mod_valued(ups, om).listing() == inst.listing());
    }
  }
  CHECK(instances > 100);
}
