#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "prodmod/errors.hpp"
#include "prodmod/log_value.hpp"
#include "prodmod/pisolver.hpp"
#include "support/generators.hpp"

using namespace prodmod;

namespace {

PropDecision decide_text(const std::vector<const char*>& gamma, const char* phi) {
  std::vector<PropFormula> g;
  for (const char* x : gamma) g.push_back(parse_prop(x));
  return decide_pd(g, parse_prop(phi));
}

std::vector<ExtVar> vars_of(const std::vector<PropFormula>& fs) {
  std::set<ExtVar> all;
  for (const auto& f : fs)
    for (const auto& v : ext_variables(f)) all.insert(v);
  return {all.begin(), all.end()};
}

// Exhaustive search over the given values; true when some valuation sends
// every premise to 1 and the goal below 1.
bool grid_counter(const std::vector<PropFormula>& gamma, const PropFormula& phi, const std::vector<LogValue>& grid) {
  std::vector<PropFormula> all = gamma;
  all.push_back(phi);
  auto vars = vars_of(all);
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v.emplace(vars[i], grid[idx[i]]);
    if (verify_certificate(v, gamma, phi)) return true;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == grid.size()) idx[i++] = 0;
    if (i == idx.size()) return false;
  }
}

const std::vector<LogValue> kGrid = {LogValue::zero(), LogValue::top(), LogValue::pos(Rational(1, 2)),
                                     LogValue::pos(1), LogValue::pos(2), LogValue::pos(3)};
const std::vector<LogValue> kBool = {LogValue::zero(), LogValue::top()};

}  // namespace

TEST_CASE("log-space operations") {
  LogValue a = LogValue::pos(1), b = LogValue::pos(3), z = LogValue::zero(), t = LogValue::top();
  CHECK(strong_and(a, b) == LogValue::pos(4));
  CHECK(strong_and(a, z).is_zero());
  CHECK(residuum(b, a) == LogValue::top());
  CHECK(residuum(a, b) == LogValue::pos(2));
  CHECK(residuum(z, z) == t);
  CHECK(residuum(a, z).is_zero());
  CHECK(meet(a, b) == b);
  CHECK(join(a, b) == a);
  CHECK(delta(t) == t);
  CHECK(delta(a).is_zero());
  CHECK(power(a, 3) == LogValue::pos(3));
  CHECK(power(z, 0) == t);
  CHECK(a > b);
  CHECK(z < b);
  CHECK(LogValue::parse(b.print()) == b);
  CHECK(LogValue::parse(z.print()) == z);
  CHECK(LogValue::pos(Rational(3, 2)).display() == "exp2(-3/2)");
  CHECK_THROWS(LogValue::pos(-1));
}

TEST_CASE("algebraic laws on random values") {
  testing::Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    LogValue a = testing::random_value(rng), b = testing::random_value(rng), c = testing::random_value(rng);
    CHECK((strong_and(a, b) <= c) == (a <= residuum(b, c)));
    CHECK(join(residuum(a, b), residuum(b, a)).is_top());
    CHECK(meet(a, b) == strong_and(a, residuum(a, b)));
    CHECK(meet(a, residuum(a, LogValue::zero())).is_zero());
    CHECK(strong_and(a, strong_and(b, c)) == strong_and(strong_and(a, b), c));
    if (!c.is_zero() && strong_and(a, c) == strong_and(b, c)) CHECK(a == b);
  }
}

TEST_CASE("defining laws of product algebras are entailed") {
  for (const char* law : {
           "((p & q) -> r) <-> (p -> (q -> r))",
           "(p -> q) \\/ (q -> p)",
           "(p /\\ q) <-> (p & (p -> q))",
           "~~r -> (((p & r) -> (q & r)) -> (p -> q))",
           "(p /\\ ~p) <-> 0",
       }) {
    CAPTURE(law);
    CHECK(decide_text({}, law).verdict == PropVerdict::Entailed);
  }
}

TEST_CASE("non-theorems come with verified counters") {
  for (const char* f : {"p \\/ ~p", "p <-> (p & p)", "(p -> q) -> p", "!p \\/ ~p"}) {
    CAPTURE(f);
    PropDecision d = decide_text({}, f);
    REQUIRE(d.verdict == PropVerdict::Counter);
    CHECK(verify_certificate(d.counter, {}, parse_prop(f)));
  }
  PropDecision d = decide_text({"p -> q", "p"}, "q");
  CHECK(d.verdict == PropVerdict::Entailed);
  d = decide_text({"!p \\/ !~p"}, "p \\/ ~p");
  CHECK(d.verdict == PropVerdict::Entailed);
  d = decide_text({"p \\/ q"}, "p");
  REQUIRE(d.verdict == PropVerdict::Counter);
  CHECK(verify_certificate(d.counter, {parse_prop("p \\/ q")}, parse_prop("p")));
}

TEST_CASE("delta is rejected by the delta-free entry point") {
  CHECK_THROWS_AS(decide_p({}, parse_prop("!p -> p")), DeltaInInput);
  CHECK(decide_p({}, parse_prop("p -> p")).verdict == PropVerdict::Entailed);
}

TEST_CASE("grid and truth-table oracles") {
  testing::Rng rng(5);
  std::size_t counters = 0, entailed = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<PropFormula> gamma;
    for (std::size_t k = testing::pick(rng, 3); k > 0; --k) gamma.push_back(testing::random_prop(rng, 2, 1 + testing::pick(rng, 4), true));
    PropFormula phi = testing::random_prop(rng, 2, 1 + testing::pick(rng, 5), true);
    PropDecision d = decide_pd(gamma, phi);
    REQUIRE(d.verdict != PropVerdict::Unknown);
    if (d.verdict == PropVerdict::Counter) {
      ++counters;
      CHECK(verify_certificate(d.counter, gamma, phi));
    } else {
      ++entailed;
      CAPTURE(phi.text());
      CHECK_FALSE(grid_counter(gamma, phi, kGrid));
    }
    // A two-valued counter is a product counter.
    if (grid_counter(gamma, phi, kBool)) CHECK(d.verdict == PropVerdict::Counter);
  }
  CHECK(counters > 30);
  CHECK(entailed > 30);
}

TEST_CASE("delta deduction roundtrip") {
  testing::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    std::vector<PropFormula> gamma;
    for (std::size_t k = testing::pick(rng, 2); k > 0; --k) gamma.push_back(testing::random_prop(rng, 3, 1 + testing::pick(rng, 3), true));
    PropFormula psi = testing::random_prop(rng, 3, 1 + testing::pick(rng, 3), true);
    PropFormula phi = testing::random_prop(rng, 3, 1 + testing::pick(rng, 4), true);
    std::vector<PropFormula> with = gamma;
    with.push_back(psi);
    PropVerdict left = decide_pd(with, phi).verdict;
    PropVerdict right = decide_pd(gamma, PropFormula::imp(PropFormula::delta(psi), phi)).verdict;
    CAPTURE(psi.text());
    CAPTURE(phi.text());
    CHECK(left == right);
  }
}

TEST_CASE("SMT-LIB export is self-contained") {
  std::string s = export_smtlib({parse_prop("p -> q")}, parse_prop("!p \\/ q"));
  CHECK(s.find("(check-sat)") != std::string::npos);
  CHECK(s.find("declare-const") != std::string::npos);

  // Every constant is declared exactly once, also for nested formulas.
  testing::Rng rng(53);
  for (int i = 0; i < 50; ++i) {
    std::string t = export_smtlib({testing::random_prop(rng, 3, 4, true)}, testing::random_prop(rng, 3, 5, true));
    std::istringstream in(t);
    std::set<std::string> seen;
    for (std::string line; std::getline(in, line);)
      if (line.rfind("(declare-const", 0) == 0) CHECK(seen.insert(line).second);
  }
}
