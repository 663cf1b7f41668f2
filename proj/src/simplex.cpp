#include "prodmod/simplex.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace prodmod {

namespace {

using Coeffs = std::vector<std::pair<int, Rational>>;

// a + s*b over sparse sorted vectors, dropping zeros.
Coeffs add_scaled(const Coeffs& a, const Coeffs& b, const Rational& s) {
  Coeffs out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, b[j].second * s);
      ++j;
    } else {
      Rational v = a[i].second + b[j].second * s;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

int Simplex::new_var() {
  m_value.emplace_back();
  m_lower.emplace_back();
  m_upper.emplace_back();
  m_row_of.push_back(-1);
  return static_cast<int>(m_value.size()) - 1;
}

int Simplex::new_row(const std::vector<std::pair<int, Rational>>& linear) {
  std::map<int, Rational> merged;
  for (const auto& [x, a] : linear) merged[x] += a;
  Coeffs expr;
  for (auto& [x, a] : merged) {
    if (a == 0) continue;
    if (m_row_of[x] >= 0) {
      expr = add_scaled(expr, m_rows[m_row_of[x]].coeffs, a);
    } else {
      expr = add_scaled(expr, Coeffs{{x, a}}, Rational(1));
    }
  }
  int s = new_var();
  DeltaRational v;
  for (const auto& [x, a] : expr) v = v + m_value[x] * a;
  m_value[s] = v;
  m_row_of[s] = static_cast<int>(m_rows.size());
  m_rows.push_back(Row{s, std::move(expr)});
  return s;
}

const Rational* Simplex::coeff(const Row& r, int x) const {
  auto it = std::lower_bound(r.coeffs.begin(), r.coeffs.end(), x,
                             [](const std::pair<int, Rational>& e, int v) { return e.first < v; });
  if (it == r.coeffs.end() || it->first != x) return nullptr;
  return &it->second;
}

bool Simplex::assert_upper(int x, const DeltaRational& c, Reason r) {
  if (m_upper[x] && c >= m_upper[x]->value) return true;
  if (m_lower[x] && c < m_lower[x]->value) {
    m_conflict.clear();
    if (r != kAxiom) m_conflict.push_back(r);
    if (m_lower[x]->reason != kAxiom) m_conflict.push_back(m_lower[x]->reason);
    return false;
  }
  m_trail.push_back({x, true, m_upper[x]});
  m_upper[x] = Bound{c, r};
  if (m_row_of[x] < 0 && m_value[x] > c) update(x, c);
  return true;
}

bool Simplex::assert_lower(int x, const DeltaRational& c, Reason r) {
  if (m_lower[x] && c <= m_lower[x]->value) return true;
  if (m_upper[x] && c > m_upper[x]->value) {
    m_conflict.clear();
    if (r != kAxiom) m_conflict.push_back(r);
    if (m_upper[x]->reason != kAxiom) m_conflict.push_back(m_upper[x]->reason);
    return false;
  }
  m_trail.push_back({x, false, m_lower[x]});
  m_lower[x] = Bound{c, r};
  if (m_row_of[x] < 0 && m_value[x] < c) update(x, c);
  return true;
}

void Simplex::update(int x, const DeltaRational& v) {
  DeltaRational diff = v - m_value[x];
  for (auto& row : m_rows)
    if (const Rational* a = coeff(row, x)) m_value[row.basic] = m_value[row.basic] + diff * *a;
  m_value[x] = v;
}

void Simplex::pivot_and_update(int r, int entering, const DeltaRational& v) {
  int leaving = m_rows[r].basic;
  Rational a = *coeff(m_rows[r], entering);
  DeltaRational theta = (v - m_value[leaving]) * (Rational(1) / a);
  m_value[leaving] = v;
  m_value[entering] = m_value[entering] + theta;
  for (std::size_t k = 0; k < m_rows.size(); ++k) {
    if (static_cast<int>(k) == r) continue;
    if (const Rational* c = coeff(m_rows[k], entering))
      m_value[m_rows[k].basic] = m_value[m_rows[k].basic] + theta * *c;
  }
  pivot(r, entering);
}

void Simplex::pivot(int r, int entering) {
  ++m_pivots;
  Row& row = m_rows[r];
  int leaving = row.basic;
  Rational a = *coeff(row, entering);
  Coeffs expr;
  expr.reserve(row.coeffs.size());
  for (const auto& [x, c] : row.coeffs)
    if (x != entering) expr.emplace_back(x, -c / a);
  expr.emplace_back(leaving, Rational(1) / a);
  std::sort(expr.begin(), expr.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  row.basic = entering;
  row.coeffs = expr;
  m_row_of[entering] = r;
  m_row_of[leaving] = -1;
  for (std::size_t k = 0; k < m_rows.size(); ++k) {
    if (static_cast<int>(k) == r) continue;
    const Rational* c = coeff(m_rows[k], entering);
    if (!c) continue;
    Rational scale = *c;
    Coeffs without;
    without.reserve(m_rows[k].coeffs.size());
    for (const auto& e : m_rows[k].coeffs)
      if (e.first != entering) without.push_back(e);
    m_rows[k].coeffs = add_scaled(without, expr, scale);
  }
}

void Simplex::explain_row(int r, bool below_lower) {
  m_conflict.clear();
  const Row& row = m_rows[r];
  auto add = [&](const std::optional<Bound>& b) {
    if (b && b->reason != kAxiom) m_conflict.push_back(b->reason);
  };
  add(below_lower ? m_lower[row.basic] : m_upper[row.basic]);
  for (const auto& [x, a] : row.coeffs) {
    bool use_upper = (a > 0) == below_lower;
    add(use_upper ? m_upper[x] : m_lower[x]);
  }
  std::sort(m_conflict.begin(), m_conflict.end());
  m_conflict.erase(std::unique(m_conflict.begin(), m_conflict.end()), m_conflict.end());
}

bool Simplex::check() {
  while (true) {
    int best_row = -1;
    int best_var = INT_MAX;
    for (std::size_t k = 0; k < m_rows.size(); ++k) {
      int b = m_rows[k].basic;
      const auto& v = m_value[b];
      bool bad = (m_lower[b] && v < m_lower[b]->value) || (m_upper[b] && v > m_upper[b]->value);
      if (bad && b < best_var) {
        best_var = b;
        best_row = static_cast<int>(k);
      }
    }
    if (best_row < 0) return true;
    const Row& row = m_rows[best_row];
    bool below = m_lower[best_var] && m_value[best_var] < m_lower[best_var]->value;
    int entering = -1;
    for (const auto& [x, a] : row.coeffs) {
      bool increase = (a > 0) == below;
      bool can = increase ? (!m_upper[x] || m_value[x] < m_upper[x]->value)
                          : (!m_lower[x] || m_value[x] > m_lower[x]->value);
      if (can) {
        entering = x;
        break;
      }
    }
    if (entering < 0) {
      explain_row(best_row, below);
      return false;
    }
    DeltaRational target = below ? m_lower[best_var]->value : m_upper[best_var]->value;
    pivot_and_update(best_row, entering, target);
  }
}

void Simplex::push() { m_marks.push_back(m_trail.size()); }

void Simplex::pop_to(std::size_t level) {
  while (m_marks.size() > level) {
    std::size_t mark = m_marks.back();
    m_marks.pop_back();
    while (m_trail.size() > mark) {
      auto& t = m_trail.back();
      (t.upper ? m_upper : m_lower)[t.var] = t.old;
      m_trail.pop_back();
    }
  }
}

std::vector<Rational> Simplex::concrete_model() const {
  Rational delta = 1;
  auto limit = [&](const DeltaRational& lo, const DeltaRational& hi) {
    // Needs lo <= hi after substitution.
    if (lo.c < hi.c && lo.k > hi.k) {
      Rational d = (hi.c - lo.c) / (lo.k - hi.k);
      if (d < delta) delta = d;
    }
  };
  for (std::size_t x = 0; x < m_value.size(); ++x) {
    if (m_lower[x]) limit(m_lower[x]->value, m_value[x]);
    if (m_upper[x]) limit(m_value[x], m_upper[x]->value);
  }
  std::vector<Rational> out;
  out.reserve(m_value.size());
  for (const auto& v : m_value) out.push_back(v.c + delta * v.k);
  return out;
}

bool satisfies(const LinearConstraintSystem& sys, const std::vector<Rational>& assignment) {
  if (assignment.size() < sys.num_unknowns) return false;
  for (const auto& c : sys.constraints) {
    Rational lhs = 0;
    for (const auto& [x, a] : c.terms) lhs += a * assignment[x];
    bool ok = c.rel == Rel::Eq ? lhs == c.rhs : c.rel == Rel::Le ? lhs <= c.rhs : lhs < c.rhs;
    if (!ok) return false;
  }
  return true;
}

std::optional<std::vector<Rational>> lra_feasible(const LinearConstraintSystem& sys) {
  Simplex s;
  for (std::size_t i = 0; i < sys.num_unknowns; ++i) s.new_var();
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    const auto& c = sys.constraints[i];
    std::map<int, Rational> merged;
    for (const auto& [x, a] : c.terms) merged[static_cast<int>(x)] += a;
    std::vector<std::pair<int, Rational>> terms;
    for (auto& [x, a] : merged)
      if (a != 0) terms.emplace_back(x, a);
    int reason = static_cast<int>(i);
    if (terms.empty()) {
      bool ok = c.rel == Rel::Eq ? c.rhs == 0 : c.rel == Rel::Le ? 0 <= c.rhs : 0 < c.rhs;
      if (!ok) return std::nullopt;
      continue;
    }
    int x;
    Rational bound = c.rhs;
    bool flip = false;
    if (terms.size() == 1) {
      x = terms[0].first;
      bound = c.rhs / terms[0].second;
      flip = terms[0].second < 0;
    } else {
      x = s.new_row(terms);
    }
    bool ok = true;
    if (c.rel == Rel::Eq) {
      ok = s.assert_upper(x, bound, reason) && s.assert_lower(x, bound, reason);
    } else {
      Rational eps = c.rel == Rel::Lt ? 1 : 0;
      if (!flip)
        ok = s.assert_upper(x, DeltaRational(bound, -eps), reason);
      else
        ok = s.assert_lower(x, DeltaRational(bound, eps), reason);
    }
    if (!ok) return std::nullopt;
  }
  if (!s.check()) return std::nullopt;
  auto model = s.concrete_model();
  model.resize(sys.num_unknowns);
  return model;
}

}  // namespace prodmod
