#pragma once

// Naive Fourier-Motzkin elimination with strictness tracking, used as an
// independent oracle for the simplex core.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "prodmod/simplex.hpp"

namespace prodmod::testing {

struct FmRow {
  std::vector<Rational> a;  // sum a_i x_i  (<= or <)  b
  Rational b;
  bool strict = false;

  bool operator<(const FmRow& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return strict < o.strict;
  }
};

inline std::vector<FmRow> fm_rows(const LinearConstraintSystem& sys) {
  std::vector<FmRow> rows;
  for (const auto& c : sys.constraints) {
    FmRow r{std::vector<Rational>(sys.num_unknowns, 0), c.rhs, c.rel == Rel::Lt};
    for (const auto& [v, q] : c.terms) r.a[v] += q;
    rows.push_back(r);
    if (c.rel == Rel::Eq) {
      FmRow n = r;
      for (auto& q : n.a) q = -q;
      n.b = -n.b;
      rows.push_back(n);
    }
  }
  return rows;
}

// Scales a row so that its first nonzero coefficient has absolute value 1.
inline FmRow normalize(FmRow r) {
  for (const auto& q : r.a) {
    if (q != 0) {
      Rational s = abs(q);
      for (auto& x : r.a) x /= s;
      r.b /= s;
      break;
    }
  }
  return r;
}

// Keeps only the tightest row per left-hand side.
inline std::vector<FmRow> prune(const std::vector<FmRow>& rows) {
  std::map<std::vector<Rational>, FmRow> best;
  for (const auto& raw : rows) {
    FmRow r = normalize(raw);
    auto it = best.find(r.a);
    if (it == best.end()) {
      best.emplace(r.a, r);
      continue;
    }
    FmRow& cur = it->second;
    if (r.b < cur.b || (r.b == cur.b && r.strict)) cur = r;
  }
  std::vector<FmRow> out;
  for (auto& [k, r] : best) out.push_back(r);
  return out;
}

inline bool fm_feasible(const LinearConstraintSystem& sys, std::size_t cap = 200000) {
  std::vector<FmRow> rows = prune(fm_rows(sys));
  for (std::size_t v = 0; v < sys.num_unknowns; ++v) {
    std::vector<FmRow> pos, negs, next;
    for (const auto& r : rows) {
      if (r.a[v] > 0)
        pos.push_back(r);
      else if (r.a[v] < 0)
        negs.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto& p : pos) {
      for (const auto& n : negs) {
        Rational sp = -n.a[v], sn = p.a[v];
        FmRow c{std::vector<Rational>(sys.num_unknowns), p.b * sp + n.b * sn, p.strict || n.strict};
        for (std::size_t i = 0; i < sys.num_unknowns; ++i) c.a[i] = p.a[i] * sp + n.a[i] * sn;
        c.a[v] = 0;
        next.push_back(c);
      }
    }
    rows = prune(next);
    if (rows.size() > cap) throw std::runtime_error("Fourier-Motzkin blowup");
  }
  for (const auto& r : rows) {
    if (r.strict ? !(0 < r.b) : !(0 <= r.b)) return false;
  }
  return true;
}

}  // namespace prodmod::testing
