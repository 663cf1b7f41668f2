#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "prodmod/errors.hpp"
#include "prodmod/omega.hpp"
#include "prodmod/sequence.hpp"

using namespace prodmod;

namespace {

Levels levels_of(const std::vector<const char*>& xs) {
  FormulaSet s;
  for (const char* x : xs) s.insert(parse(x));
  return levels(s);
}

std::vector<std::vector<Sequence>> brute_force(const Levels& lv, bool coherent) {
  auto universe = sigma_universe(lv);
  std::vector<std::vector<Sequence>> out;
  for (unsigned long mask = 0; mask < (1ul << universe.size()); ++mask) {
    std::vector<Sequence> sub;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if ((mask >> i) & 1) sub.push_back(universe[i]);
    if (coherent ? is_coherent(sub, lv) : is_simple(sub, lv)) out.push_back(sub);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Sequence>> members(const std::vector<OmegaSet>& sets) {
  std::vector<std::vector<Sequence>> out;
  for (const auto& s : sets) out.push_back(s.members);
  std::sort(out.begin(), out.end());
  return out;
}

const ModalFormula bp = parse("[]p");

}  // namespace

TEST_CASE("sequence operations") {
  Sequence s = Sequence().child(bp, true).child(parse("<>q")).child(bp, true);
  CHECK(s.print() == "<0, box p', dia q, box p'>");
  CHECK(s.prime_count() == 2);
  CHECK(s.sigma_minus() == Sequence().child(bp, true).child(parse("<>q")).child(bp));
  CHECK(s.underline() == Sequence().child(bp).child(parse("<>q")).child(bp));
  CHECK(s.parent().parent() == Sequence().child(bp, true));
  CHECK(init(s).size() == 2);
  CHECK(init(s)[1] == s.sigma_minus());
  CHECK(init(Sequence().child(bp)).empty());
  CHECK_THROWS(Sequence().parent());
}

TEST_CASE("world labels and prods") {
  Sequence s = Sequence().child(bp, true).child(parse("<>q")).child(bp, true);
  ProdsFamily fam = prods(s);
  CHECK(fam.parameter_positions == std::vector<std::size_t>{0, 2});
  WorldLabel w = fam.instantiate({3, 5});
  CHECK(w.tilde() == s);
  CHECK(w.underline() == s.underline());
  CHECK(w.theta() == 8);
  CHECK(w.mult() == 5);
  CHECK(w.minus().tilde() == s.sigma_minus());
  CHECK(w.init().size() == 2);
  CHECK(w.print() == "<0, (box p)_3, dia q, (box p)_5>");
  CHECK(prods(s.underline()).finite());
  CHECK_THROWS(fam.instantiate({1}));
}

TEST_CASE("universe of {[]p}") {
  Levels lv = levels_of({"[]p"});
  auto u = sigma_universe(lv);
  CHECK(u.size() == 3);
  auto coh = enumerate_coherent(lv);
  REQUIRE(coh.size() == 3);
  CHECK(coh[0].print() == "{<0>}");
  CHECK(coh[1].print() == "{<0>, <0, box p>}");
  CHECK(coh[2].print() == "{<0>, <0, box p>, <0, box p'>}");
  auto simple = enumerate_simple(lv);
  CHECK(simple.size() == 3);
  CHECK(is_simple({Sequence(), Sequence().child(bp, true)}, lv));
  CHECK_FALSE(is_coherent({Sequence(), Sequence().child(bp, true)}, lv));
  CHECK_FALSE(is_simple({Sequence(), Sequence().child(bp), Sequence().child(bp, true)}, lv));
}

TEST_CASE("coherence of the two-level example") {
  Levels lv = levels_of({"[](y \\/ []x)", "<><>y"});
  ModalFormula a = parse("<><>y"), b = parse("[](y \\/ []x)"), dy = parse("<>y"), bx = parse("[]x");
  Sequence r;
  std::vector<Sequence> omega = {
      r,
      r.child(a), r.child(b), r.child(b, true),
      r.child(a).child(dy), r.child(a).child(bx),
      r.child(b).child(dy), r.child(b).child(bx), r.child(b).child(bx, true),
      r.child(b, true).child(dy), r.child(b, true).child(bx), r.child(b, true).child(bx, true),
  };
  CHECK(is_coherent(omega, lv));
  auto without = omega;
  without.erase(without.begin() + 1);
  CHECK_FALSE(is_coherent(without, lv));
  // Condition 4: a primed grandchild under the primed copy needs its twin.
  auto broken = omega;
  broken.erase(std::find(broken.begin(), broken.end(), r.child(b).child(bx, true)));
  CHECK_FALSE(is_coherent(broken, lv));
}

TEST_CASE("enumerators agree with subset filtering") {
  std::vector<std::vector<const char*>> pool = {
      {"[]p"}, {"<>p"}, {"[]p", "<>q"}, {"[]p", "[]q"}, {"[][]p"}, {"<><>p"},
      {"[]<>p"}, {"<>[]p"}, {"[]p -> <>q"}, {"p & []q", "q"}, {"[](p \\/ <>q)"},
  };
  std::size_t checked = 0;
  for (const auto& ups : pool) {
    Levels lv = levels_of(ups);
    auto u = sigma_universe(lv);
    if (u.size() > 12) continue;
    ++checked;
    auto coh = enumerate_coherent(lv);
    auto simple = enumerate_simple(lv);
    CHECK(members(coh) == brute_force(lv, true));
    CHECK(members(simple) == brute_force(lv, false));
    CHECK(std::is_sorted(coh.begin(), coh.end(), omega_before));
    CHECK(std::is_sorted(simple.begin(), simple.end(), omega_before));
  }
  CHECK(checked >= 8);
}

TEST_CASE("enumeration cap") {
  Levels lv = levels_of({"[]p", "[]q", "<>r"});
  std::size_t n = enumerate_coherent(lv).size();
  CHECK(n > 2);
  CHECK_THROWS_AS(enumerate_coherent(lv, n - 1), BudgetExceeded);
  CHECK(enumerate_coherent(lv, n).size() == n);
}
