#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prodmod/countermodel.hpp"
#include "prodmod/formula.hpp"
#include "prodmod/omega.hpp"
#include "prodmod/pisolver.hpp"
#include "prodmod/smt.hpp"

namespace prodmod {

enum class Logic { Crisp, Valued };

const char* logic_name(Logic l);

struct Problem {
  std::vector<ModalFormula> premises;
  ModalFormula conclusion = ModalFormula::top();
  Logic logic = Logic::Crisp;

  FormulaSet upsilon() const;
};

// Lines `logic: crisp|valued`, `premise: F` (repeatable) and `conclusion: F`;
// `#` starts a comment. Throws std::invalid_argument with the line number,
// also for formula syntax errors.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::string& path);

struct DecideOptions {
  smt::Limits limits;
  std::size_t omega_limit = kDefaultOmegaLimit;
  unsigned truncation_k = 4;
  unsigned jobs = 1;
};

enum class Verdict { Entailed, NotEntailed, Unknown };

const char* verdict_name(Verdict v);

struct OmegaTrace {
  std::size_t index = 0;
  std::string omega;
  std::size_t omega_size = 0;
  std::size_t premises = 0;
  std::size_t variables = 0;
  PropVerdict verdict = PropVerdict::Unknown;
  smt::Stats stats;
  double millis = 0;
};

struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::size_t omegas_total = 0;
  std::size_t omegas_checked = 0;
  std::string reason;  // set for Unknown

  // Set for NotEntailed.
  std::optional<OmegaSet> omega;
  Valuation valuation;
  std::optional<SymbolicCountermodel> countermodel;
  std::vector<TruthLemmaReport> lemma;  // at K = 2 and at the configured K

  std::vector<OmegaTrace> trace;  // filled by decide_with_trace
  double millis = 0;
};

Decision decide(const Problem& problem, const DecideOptions& opts = {});
Decision decide_with_trace(const Problem& problem, const DecideOptions& opts = {});

// Reduced propositional query for one Omega: premises and goal.
struct ReducedQuery {
  ReductionInstance instance;
  std::vector<PropFormula> premises;  // root premises followed by the Mod family
  PropFormula goal = PropFormula::bot();
};

ReducedQuery reduce(const Problem& problem, const OmegaSet& omega);
std::vector<OmegaSet> enumerate_omegas(const Problem& problem, std::size_t limit = kDefaultOmegaLimit);

}  // namespace prodmod
