#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "prodmod/simplex.hpp"

namespace prodmod::smt {

// Literal encoding: 2*var for the positive literal, 2*var+1 for its negation.
using Lit = int;
inline Lit pos(int v) { return 2 * v; }
inline Lit neg(int v) { return 2 * v + 1; }
inline Lit negate(Lit l) { return l ^ 1; }
inline int var_of(Lit l) { return l >> 1; }

struct Limits {
  std::uint64_t decisions = 1'000'000;
  std::chrono::milliseconds wall{0};  // 0 disables the clock
};

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t theory_conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

enum class Result { Sat, Unsat, Unknown };

// CDCL over Boolean variables, some of which are bound atoms of a simplex
// instance; the simplex is checked at every propagation fixpoint.
class Solver {
 public:
  int new_bool();
  int new_real();
  // Variable equal to the given linear combination (shared per combination).
  int linear(std::vector<std::pair<int, Rational>> terms);
  // Boolean atoms "x <= c" and "x >= c" (shared per triple).
  int atom_le(int x, const Rational& c);
  int atom_ge(int x, const Rational& c);
  // Permanent bound, independent of the Boolean search.
  void axiom_ge(int x, const Rational& c);

  void add_clause(std::vector<Lit> lits);

  Result solve(const Limits& limits);

  bool model_bool(int v) const { return m_assign[v] > 0; }
  Rational model_real(int x) const { return m_real_model.at(x); }
  const Stats& stats() const { return m_stats; }
  std::size_t num_bools() const { return m_assign.size(); }
  std::size_t num_clauses() const { return m_clauses.size(); }

 private:
  struct Atom {
    int x;
    bool le;
    Rational c;
  };
  struct Clause {
    std::vector<Lit> lits;
  };

  int value(Lit l) const {
    int a = m_assign[var_of(l)];
    return (l & 1) ? -a : a;
  }
  void enqueue(Lit l, int reason);
  int propagate();
  int theory_check();
  int theory_conflict();
  int add_conflict_clause(std::vector<Lit> lits);
  void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(m_trail_lim.size()); }
  int attach(std::vector<Lit> lits);
  void bump(int v);
  int pick_branch_var();
  Lit pick_phase(int v) const;

  std::vector<std::int8_t> m_assign;
  std::vector<int> m_level, m_reason;
  std::vector<double> m_activity;
  std::vector<std::int8_t> m_phase;
  std::vector<std::optional<Atom>> m_atom;
  std::vector<Clause> m_clauses;
  std::vector<std::vector<int>> m_watches;
  std::vector<Lit> m_trail;
  std::vector<int> m_trail_lim;
  std::size_t m_qhead = 0;
  std::size_t m_theory_head = 0;
  std::vector<Lit> m_pending_units;
  bool m_inconsistent = false;
  bool m_theory_dirty = true;
  double m_var_inc = 1.0;
  std::set<std::pair<double, int>, std::greater<>> m_order;

  Simplex m_simplex;
  std::map<std::vector<std::pair<int, Rational>>, int> m_linear_cache;
  std::map<std::tuple<int, bool, Rational>, int> m_atom_cache;
  std::vector<Rational> m_real_model;
  Stats m_stats;
};

}  // namespace prodmod::smt
