#include "prodmod/smt.hpp"

#include <algorithm>
#include <stdexcept>

namespace prodmod::smt {

namespace {

constexpr int kUnsat = -2;

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

int Solver::new_bool() {
  int v = static_cast<int>(m_assign.size());
  m_assign.push_back(0);
  m_level.push_back(-1);
  m_reason.push_back(-1);
  m_activity.push_back(0.0);
  m_phase.push_back(0);
  m_atom.emplace_back();
  m_watches.emplace_back();
  m_watches.emplace_back();
  m_order.insert({0.0, v});
  return v;
}

int Solver::new_real() { return m_simplex.new_var(); }

int Solver::linear(std::vector<std::pair<int, Rational>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (terms.size() == 1 && terms[0].second == 1) return terms[0].first;
  auto it = m_linear_cache.find(terms);
  if (it != m_linear_cache.end()) return it->second;
  int s = m_simplex.new_row(terms);
  m_linear_cache.emplace(std::move(terms), s);
  return s;
}

int Solver::atom_le(int x, const Rational& c) {
  auto key = std::make_tuple(x, true, c);
  if (auto it = m_atom_cache.find(key); it != m_atom_cache.end()) return it->second;
  int v = new_bool();
  m_atom[v] = Atom{x, true, c};
  m_atom_cache.emplace(key, v);
  return v;
}

int Solver::atom_ge(int x, const Rational& c) {
  auto key = std::make_tuple(x, false, c);
  if (auto it = m_atom_cache.find(key); it != m_atom_cache.end()) return it->second;
  int v = new_bool();
  m_atom[v] = Atom{x, false, c};
  m_atom_cache.emplace(key, v);
  return v;
}

void Solver::axiom_ge(int x, const Rational& c) {
  if (!m_simplex.assert_lower(x, DeltaRational(c), Simplex::kAxiom)) m_inconsistent = true;
}

void Solver::add_clause(std::vector<Lit> lits) {
  if (decision_level() != 0) throw std::logic_error("clauses may only be added at the root level");
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return;
    int val = value(lits[i]);
    if (val > 0) return;
    if (val == 0) kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    m_inconsistent = true;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    return;
  }
  attach(std::move(kept));
}

int Solver::attach(std::vector<Lit> lits) {
  int ci = static_cast<int>(m_clauses.size());
  if (lits.size() >= 2) {
    m_watches[lits[0]].push_back(ci);
    m_watches[lits[1]].push_back(ci);
  }
  m_clauses.push_back(Clause{std::move(lits)});
  return ci;
}

void Solver::enqueue(Lit l, int reason) {
  int v = var_of(l);
  m_assign[v] = (l & 1) ? -1 : 1;
  m_level[v] = decision_level();
  m_reason[v] = reason;
  m_trail.push_back(l);
}

int Solver::propagate() {
  while (m_qhead < m_trail.size()) {
    Lit p = m_trail[m_qhead++];
    Lit falsel = negate(p);
    ++m_stats.propagations;
    auto& ws = m_watches[falsel];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      auto& c = m_clauses[ci].lits;
      if (c[0] == falsel) std::swap(c[0], c[1]);
      if (value(c[0]) > 0) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          m_watches[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) < 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

int Solver::theory_check() {
  while (m_theory_head < m_trail.size()) {
    Lit l = m_trail[m_theory_head++];
    const auto& atom = m_atom[var_of(l)];
    if (!atom) continue;
    bool positive = (l & 1) == 0;
    bool ok;
    if (atom->le) {
      ok = positive ? m_simplex.assert_upper(atom->x, DeltaRational(atom->c), l)
                    : m_simplex.assert_lower(atom->x, DeltaRational(atom->c, 1), l);
    } else {
      ok = positive ? m_simplex.assert_lower(atom->x, DeltaRational(atom->c), l)
                    : m_simplex.assert_upper(atom->x, DeltaRational(atom->c, -1), l);
    }
    m_theory_dirty = true;
    if (!ok) return theory_conflict();
  }
  if (!m_theory_dirty) return -1;
  if (!m_simplex.check()) return theory_conflict();
  m_theory_dirty = false;
  return -1;
}

int Solver::theory_conflict() {
  ++m_stats.theory_conflicts;
  std::vector<Lit> clause;
  for (int r : m_simplex.conflict()) clause.push_back(negate(r));
  return add_conflict_clause(std::move(clause));
}

int Solver::add_conflict_clause(std::vector<Lit> lits) {
  if (lits.empty()) return kUnsat;
  std::sort(lits.begin(), lits.end(), [&](Lit a, Lit b) { return m_level[var_of(a)] > m_level[var_of(b)]; });
  int top = m_level[var_of(lits[0])];
  if (top == 0) return kUnsat;
  if (top < decision_level()) cancel_until(top);
  return attach(std::move(lits));
}

void Solver::bump(int v) {
  bool present = m_order.erase({m_activity[v], v}) > 0;
  m_activity[v] += m_var_inc;
  if (m_activity[v] > 1e100) {
    m_order.clear();
    for (auto& a : m_activity) a *= 1e-100;
    m_var_inc *= 1e-100;
    for (std::size_t u = 0; u < m_assign.size(); ++u)
      if (m_assign[u] == 0 || static_cast<int>(u) == v) m_order.insert({m_activity[u], static_cast<int>(u)});
    return;
  }
  if (present || m_assign[v] == 0) m_order.insert({m_activity[v], v});
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
  std::vector<char> seen(m_assign.size(), 0);
  learnt.assign(1, 0);
  int path = 0;
  Lit p = -1;
  std::size_t idx = m_trail.size();
  do {
    const auto& c = m_clauses[confl].lits;
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      int v = var_of(c[k]);
      if (seen[v] || m_level[v] == 0) continue;
      seen[v] = 1;
      bump(v);
      if (m_level[v] >= decision_level())
        ++path;
      else
        learnt.push_back(c[k]);
    }
    do {
      --idx;
    } while (!seen[var_of(m_trail[idx])]);
    p = m_trail[idx];
    confl = m_reason[var_of(p)];
    seen[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = negate(p);
  bt_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    int lv = m_level[var_of(learnt[k])];
    if (lv > bt_level) {
      bt_level = lv;
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  std::size_t stop = m_trail_lim[level];
  for (std::size_t i = m_trail.size(); i-- > stop;) {
    int v = var_of(m_trail[i]);
    m_phase[v] = (m_trail[i] & 1) ? 0 : 1;
    m_assign[v] = 0;
    m_reason[v] = -1;
    m_level[v] = -1;
    m_order.insert({m_activity[v], v});
  }
  m_trail.resize(stop);
  m_trail_lim.resize(level);
  m_qhead = std::min(m_qhead, m_trail.size());
  m_theory_head = std::min(m_theory_head, m_trail.size());
  m_simplex.pop_to(static_cast<std::size_t>(level));
  m_theory_dirty = true;
}

int Solver::pick_branch_var() {
  while (!m_order.empty()) {
    auto it = m_order.begin();
    int v = it->second;
    m_order.erase(it);
    if (m_assign[v] == 0) return v;
  }
  for (std::size_t v = 0; v < m_assign.size(); ++v)
    if (m_assign[v] == 0) return static_cast<int>(v);
  return -1;
}

Lit Solver::pick_phase(int v) const {
  if (const auto& atom = m_atom[v]) {
    const DeltaRational& cur = m_simplex.value(atom->x);
    bool holds = atom->le ? cur <= DeltaRational(atom->c) : cur >= DeltaRational(atom->c);
    return holds ? pos(v) : neg(v);
  }
  return m_phase[v] ? pos(v) : neg(v);
}

Result Solver::solve(const Limits& limits) {
  if (m_inconsistent) return Result::Unsat;
  auto start = std::chrono::steady_clock::now();
  std::uint64_t conflicts_here = 0;
  int restart_round = 0;
  double restart_budget = luby(2, restart_round) * 64;
  std::vector<Lit> learnt;
  while (true) {
    int confl = propagate();
    if (confl < 0) confl = theory_check();
    if (confl == kUnsat) return Result::Unsat;
    if (confl >= 0) {
      ++m_stats.conflicts;
      ++conflicts_here;
      if (decision_level() == 0) return Result::Unsat;
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        int ci = attach(learnt);
        enqueue(m_clauses[ci].lits[0], ci);
      }
      m_var_inc /= 0.95;
      if (static_cast<double>(conflicts_here) >= restart_budget) {
        conflicts_here = 0;
        restart_budget = luby(2, ++restart_round) * 64;
        ++m_stats.restarts;
        cancel_until(0);
      }
      continue;
    }
    if (m_stats.decisions >= limits.decisions) return Result::Unknown;
    if (limits.wall.count() > 0 && std::chrono::steady_clock::now() - start > limits.wall) return Result::Unknown;
    int v = pick_branch_var();
    if (v < 0) {
      m_real_model = m_simplex.concrete_model();
      return Result::Sat;
    }
    ++m_stats.decisions;
    m_trail_lim.push_back(static_cast<int>(m_trail.size()));
    m_simplex.push();
    enqueue(pick_phase(v), -1);
  }
}

}  // namespace prodmod::smt
