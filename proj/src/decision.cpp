#include "prodmod/decision.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <thread>

#include "prodmod/errors.hpp"

namespace prodmod {

const char* logic_name(Logic l) { return l == Logic::Crisp ? "crisp" : "valued"; }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Entailed: return "entailed";
    case Verdict::NotEntailed: return "not_entailed";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

FormulaSet Problem::upsilon() const {
  FormulaSet u(premises.begin(), premises.end());
  u.insert(conclusion);
  return u;
}

std::vector<OmegaSet> enumerate_omegas(const Problem& problem, std::size_t limit) {
  Levels lv = levels(problem.upsilon());
  return problem.logic == Logic::Crisp ? enumerate_coherent(lv, limit) : enumerate_simple(lv, limit);
}

ReducedQuery reduce(const Problem& problem, const OmegaSet& omega) {
  ReducedQuery q;
  FormulaSet u = problem.upsilon();
  q.instance = problem.logic == Logic::Crisp ? build_mod_crisp(u, omega) : build_mod_valued(u, omega);
  for (const auto& g : problem.premises) q.premises.push_back(subscript(g, Sequence()));
  for (const auto& p : q.instance.premises) q.premises.push_back(p.formula);
  q.goal = PropFormula::weak_or(subscript(problem.conclusion, Sequence()), q.instance.side_disjunct);
  return q;
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Slot {
  PropDecision result;
  OmegaTrace trace;
  bool done = false;
};

void solve_one(const Problem& problem, const OmegaSet& omega, std::size_t index, const smt::Limits& limits,
               Slot& slot) {
  auto t0 = Clock::now();
  ReducedQuery q = reduce(problem, omega);
  slot.result = problem.logic == Logic::Crisp ? decide_pd(q.premises, q.goal, limits)
                                              : decide_p(q.premises, q.goal, limits);
  // Variables the theory does not mention are unconstrained; give them 1.
  if (slot.result.verdict == PropVerdict::Counter)
    for (const auto& v : q.instance.variables) slot.result.counter.emplace(v, LogValue::top());
  slot.trace.index = index;
  slot.trace.omega = omega.print();
  slot.trace.omega_size = omega.size();
  slot.trace.premises = q.premises.size();
  slot.trace.variables = q.instance.variables.size();
  slot.trace.verdict = slot.result.verdict;
  slot.trace.stats = slot.result.stats;
  slot.trace.millis = millis_since(t0);
  slot.done = true;
}

Decision run(const Problem& problem, const DecideOptions& opts, bool with_trace) {
  auto t0 = Clock::now();
  Decision d;
  std::vector<OmegaSet> omegas;
  try {
    omegas = enumerate_omegas(problem, opts.omega_limit);
  } catch (const BudgetExceeded& e) {
    d.verdict = Verdict::Unknown;
    d.reason = e.what();
    d.millis = millis_since(t0);
    return d;
  }
  d.omegas_total = omegas.size();
  std::vector<Slot> slots(omegas.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_counter{std::numeric_limits<std::size_t>::max()};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= omegas.size() || i > first_counter.load()) return;
      solve_one(problem, omegas[i], i, opts.limits, slots[i]);
      if (slots[i].result.verdict == PropVerdict::Counter) {
        std::size_t cur = first_counter.load();
        while (i < cur && !first_counter.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t winner = first_counter.load();
  for (std::size_t i = 0; i < slots.size() && i <= winner; ++i) {
    if (!slots[i].done) continue;
    ++d.omegas_checked;
    if (with_trace) d.trace.push_back(slots[i].trace);
  }
  if (winner < slots.size()) {
    const Slot& s = slots[winner];
    d.verdict = Verdict::NotEntailed;
    d.omega = omegas[winner];
    d.valuation = s.result.counter;
    d.countermodel = problem.logic == Logic::Crisp
                         ? build_crisp_countermodel(d.valuation, omegas[winner], problem.premises, problem.conclusion)
                         : build_valued_countermodel(d.valuation, omegas[winner], problem.premises, problem.conclusion);
    for (unsigned K : {2u, opts.truncation_k})
      if (d.lemma.empty() || d.lemma.back().K != K)
        d.lemma.push_back(verify_truth_lemma(*d.countermodel, K, problem.premises, problem.conclusion));
  } else {
    d.verdict = Verdict::Entailed;
    for (const auto& s : slots) {
      if (s.result.verdict == PropVerdict::Unknown) {
        d.verdict = Verdict::Unknown;
        d.reason = "omega " + s.trace.omega + ": " + s.result.reason;
        break;
      }
    }
  }
  d.millis = millis_since(t0);
  return d;
}

}  // namespace

Decision decide(const Problem& problem, const DecideOptions& opts) { return run(problem, opts, false); }

Decision decide_with_trace(const Problem& problem, const DecideOptions& opts) { return run(problem, opts, true); }

}  // namespace prodmod
