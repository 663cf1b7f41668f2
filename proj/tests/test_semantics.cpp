#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "prodmod/errors.hpp"
#include "prodmod/kripke.hpp"
#include "support/generators.hpp"

using namespace prodmod;

namespace {

Rational q(long a, long b) { return testing::frac(a, b); }

KripkeModel two_successors() {
  return parse_model(
      "worlds: r w1 w2\n"
      "rel: r w1 = 1\n"
      "rel: r w2 = 1\n"
      "val: w1 p = 1/2\n"
      "val: w2 p = 1/3\n");
}

KripkeModel random_model(testing::Rng& rng, bool crisp, bool boolean) {
  KripkeModel m(crisp);
  std::size_t n = 1 + testing::pick(rng, 4);
  for (std::size_t i = 0; i < n; ++i) m.add_world("w" + std::to_string(i));
  auto value = [&] { return boolean ? Rational(testing::pick(rng, 2)) : q(testing::pick(rng, 5), 4); };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (testing::pick(rng, 2)) continue;
      m.set_rel(a, b, crisp ? Rational(1) : value());
    }
    for (std::size_t v = 0; v < 3; ++v) m.set_val(a, testing::var_name(v), value());
  }
  return m;
}

// Two-valued reference semantics.
bool classical(const KripkeModel& m, std::size_t w, const ModalFormula& f) {
  switch (f.op()) {
    case Op::Var: return m.val(w, f.name()) == 1;
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::WeakAnd:
    case Op::StrongAnd: return classical(m, w, f.left()) && classical(m, w, f.right());
    case Op::WeakOr: return classical(m, w, f.left()) || classical(m, w, f.right());
    case Op::Imp: return !classical(m, w, f.left()) || classical(m, w, f.right());
    case Op::Box:
      for (auto u : m.successors(w))
        if (!classical(m, u, f.body())) return false;
      return true;
    case Op::Diamond:
      for (auto u : m.successors(w))
        if (classical(m, u, f.body())) return true;
      return false;
  }
  return false;
}

}  // namespace

TEST_CASE("product operations on rationals") {
  CHECK(prod_imp(q(1, 2), q(1, 3)) == q(2, 3));
  CHECK(prod_imp(q(1, 3), q(1, 2)) == 1);
  CHECK(prod_imp(0, 0) == 1);
  CHECK(prod_imp(q(1, 2), 0) == 0);
}

TEST_CASE("evaluation examples") {
  KripkeModel m = parse_model("worlds: r w\nrel: r w = 1\nval: w p = 1/2\n");
  CHECK(eval(m, "r", parse("[]p")) == q(1, 2));
  CHECK(eval(m, "w", parse("[]p")) == 1);
  CHECK(eval(m, "w", parse("<>p")) == 0);
  CHECK(eval(m, "r", parse("p")) == 0);
  CHECK(eval(m, "r", parse("~p")) == 1);
  CHECK(eval(m, "w", parse("p & p")) == q(1, 4));
  CHECK_THROWS_AS(eval(m, "x", parse("p")), UnknownWorld);

  KripkeModel v = parse_model("worlds: r w\ncrisp: false\nrel: r w = 1/2\nval: w p = 1/3\n");
  CHECK(eval(v, "r", parse("<>p")) == q(1, 6));
  CHECK(eval(v, "r", parse("[]p")) == q(2, 3));
  CHECK(eval_all(v, parse("[]p")) == std::vector<Rational>{q(2, 3), 1});
}

TEST_CASE("model files") {
  CHECK_THROWS_AS(parse_model("worlds: a\nrel: a b = 1\n"), UnknownWorld);
  CHECK_THROWS_AS(parse_model("worlds: a\nval: a p = 3/2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds: a b\nrel: a b = 1/2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds: a\nbogus line\n"), std::invalid_argument);
  KripkeModel m = parse_model("# comment\nworlds: a b\ncrisp: false\nrel: a b = 2/4\n");
  CHECK(m.rel(0, 1) == q(1, 2));
  KripkeModel again = parse_model(m.print());
  CHECK(again.relation() == m.relation());
  CHECK(again.crisp() == m.crisp());
}

TEST_CASE("local consequence") {
  KripkeModel m = parse_model("worlds: r w\nrel: r w = 1\nval: w p = 1\nval: r p = 1/2\n");
  CHECK_FALSE(check_local(m, 0, {parse("[]p")}, parse("p")));
  CHECK(check_local(m, 0, {}, parse("1")));
  CHECK(check_local(m, 0, {parse("0")}, parse("p")));
  CHECK(check_local(m, 1, {parse("[]p")}, parse("p")));
}

TEST_CASE("witnesses") {
  KripkeModel m = two_successors();
  CHECK(witnesses(m, 0, parse("[]p")) == std::set<std::string>{"w2"});
  CHECK(witnesses(m, 0, parse("<>p")) == std::set<std::string>{"w1"});
  CHECK(witnesses(m, 1, parse("[]p")).empty());
  CHECK(witnesses(m, 1, parse("<>p")).empty());

  KripkeModel v = parse_model("worlds: r a b\ncrisp: false\nrel: r a = 1/2\nrel: r b = 1\nval: a p = 1/2\nval: b p = 1/4\n");
  // R -> e: a gives 1, b gives 1/4; R & e: a gives 1/4, b gives 1/4.
  CHECK(witnesses(v, 0, parse("[]p")) == std::set<std::string>{"b"});
  CHECK(witnesses(v, 0, parse("<>p")) == std::set<std::string>{"a", "b"});
}

TEST_CASE("finite models are witnessed") {
  testing::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    bool crisp = testing::pick(rng, 2);
    KripkeModel m = random_model(rng, crisp, false);
    ModalFormula f = testing::random_modal(rng, 3, 1, 3);
    ModalFormula boxed = testing::pick(rng, 2) ? ModalFormula::box(f) : ModalFormula::diamond(f);
    for (std::size_t w = 0; w < m.size(); ++w)
      if (!m.successors(w).empty()) CHECK_FALSE(witnesses(m, w, boxed).empty());
  }
}

TEST_CASE("unravel_crop") {
  KripkeModel loop = parse_model("worlds: w\nrel: w w = 1\nval: w p = 1/2\n");
  KripkeModel t = unravel_crop(loop, 0, 1);
  CHECK(t.size() == 2);
  CHECK(eval(t, 0, parse("[]p")) == eval(loop, 0, parse("[]p")));
  CHECK(unravel_crop(loop, 0, 0).size() == 1);
  CHECK(unravel_crop(loop, 0, 0).val(0, "p") == q(1, 2));

  testing::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    KripkeModel m = random_model(rng, testing::pick(rng, 2), false);
    std::size_t w = testing::pick(rng, m.size());
    ModalFormula f = testing::random_modal(rng, 3, 2, 1 + testing::pick(rng, 6));
    std::size_t depth = modal_depth(f) + testing::pick(rng, 2);
    KripkeModel u = unravel_crop(m, w, depth);
    CAPTURE(f.text());
    CHECK(eval(u, 0, f) == eval(m, w, f));
  }
}

TEST_CASE("two-valued crisp models evaluate classically") {
  testing::Rng rng(29);
  for (int i = 0; i < 300; ++i) {
    KripkeModel m = random_model(rng, true, true);
    ModalFormula f = testing::random_modal(rng, 3, 2, 1 + testing::pick(rng, 7));
    for (std::size_t w = 0; w < m.size(); ++w) CHECK(eval(m, w, f) == (classical(m, w, f) ? 1 : 0));
  }
}

TEST_CASE("falsifiers") {
  ModalFormula bp = parse("[]p"), p = parse("p");
  auto found = random_falsify({bp}, p);
  REQUIRE(found);
  CHECK_FALSE(check_local(found->model, found->world, {bp}, p));
  CHECK_FALSE(random_falsify({}, parse("[](p -> p)")));
  CHECK_FALSE(random_falsify({p}, p));
  FalsifyOptions none;
  none.budget = 0;
  CHECK_FALSE(random_falsify({bp}, p, none));

  auto cl = classical_falsify({}, parse("[]p -> p"), 2);
  REQUIRE(cl);
  CHECK_FALSE(check_local(cl->model, cl->world, {}, parse("[]p -> p")));
  CHECK_FALSE(classical_falsify({}, parse("[](p -> q) -> ([]p -> []q)"), 3));
  CHECK_FALSE(classical_falsify({}, parse("1"), 3));

  // Valid classically, refuted on the product grid.
  CHECK_FALSE(classical_falsify({}, parse("p \\/ ~p"), 1));
  auto g = grid_falsify({}, parse("p \\/ ~p"), 1, 2, true);
  REQUIRE(g);
  CHECK(eval(g->model, g->world, parse("p \\/ ~p")) < 1);
  CHECK_THROWS_AS(grid_falsify({}, parse("[](p -> p)"), 3, 4, false, 1000), BudgetExceeded);
  CHECK(value_grid(3) == std::vector<Rational>{0, q(1, 3), q(1, 2), q(2, 3), 1});
}
