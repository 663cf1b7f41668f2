#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "prodmod/rational.hpp"

namespace prodmod {

// c + k*delta for a symbolic positive infinitesimal delta.
struct DeltaRational {
  Rational c = 0;
  Rational k = 0;

  DeltaRational() = default;
  DeltaRational(Rational c_, Rational k_ = 0) : c(std::move(c_)), k(std::move(k_)) {}

  friend DeltaRational operator+(const DeltaRational& a, const DeltaRational& b) { return {a.c + b.c, a.k + b.k}; }
  friend DeltaRational operator-(const DeltaRational& a, const DeltaRational& b) { return {a.c - b.c, a.k - b.k}; }
  friend DeltaRational operator*(const DeltaRational& a, const Rational& s) { return {a.c * s, a.k * s}; }
  friend bool operator==(const DeltaRational& a, const DeltaRational& b) { return a.c == b.c && a.k == b.k; }
  friend std::strong_ordering operator<=>(const DeltaRational& a, const DeltaRational& b) {
    int r = cmp(a.c, b.c);
    if (r == 0) r = cmp(a.k, b.k);
    return r < 0 ? std::strong_ordering::less : r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

// General simplex over delta-rationals with bound backtracking. Bounds carry
// an integer reason; conflicts report the reasons of the bounds involved.
class Simplex {
 public:
  using Reason = int;
  static constexpr Reason kAxiom = -1;

  int new_var();
  // Adds s = sum(coeff * var) and returns the fresh variable s.
  int new_row(const std::vector<std::pair<int, Rational>>& linear);
  std::size_t num_vars() const { return m_value.size(); }

  bool assert_upper(int x, const DeltaRational& c, Reason r);
  bool assert_lower(int x, const DeltaRational& c, Reason r);
  bool check();
  // Reasons of a conflict found by the last failing assert or check; axioms omitted.
  const std::vector<Reason>& conflict() const { return m_conflict; }

  void push();
  void pop_to(std::size_t level);
  std::size_t level() const { return m_marks.size(); }

  const DeltaRational& value(int x) const { return m_value[x]; }
  // Replaces delta by a positive rational small enough to satisfy every bound.
  std::vector<Rational> concrete_model() const;

  std::size_t pivots() const { return m_pivots; }

 private:
  struct Bound {
    DeltaRational value;
    Reason reason = kAxiom;
  };
  struct Row {
    int basic;
    std::vector<std::pair<int, Rational>> coeffs;  // sorted by variable
  };
  struct TrailEntry {
    int var;
    bool upper;
    std::optional<Bound> old;
  };

  void update(int x, const DeltaRational& v);
  void pivot_and_update(int row, int entering, const DeltaRational& v);
  void pivot(int row, int entering);
  const Rational* coeff(const Row& r, int x) const;
  void explain_row(int row, bool below_lower);

  std::vector<DeltaRational> m_value;
  std::vector<std::optional<Bound>> m_lower, m_upper;
  std::vector<int> m_row_of;  // -1 when nonbasic
  std::vector<Row> m_rows;
  std::vector<TrailEntry> m_trail;
  std::vector<std::size_t> m_marks;
  std::vector<Reason> m_conflict;
  std::size_t m_pivots = 0;
};

enum class Rel { Eq, Le, Lt };

struct LinearConstraint {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Rel rel = Rel::Le;
  Rational rhs = 0;
};

struct LinearConstraintSystem {
  std::size_t num_unknowns = 0;
  std::vector<LinearConstraint> constraints;
};

bool satisfies(const LinearConstraintSystem& sys, const std::vector<Rational>& assignment);

std::optional<std::vector<Rational>> lra_feasible(const LinearConstraintSystem& sys);

}  // namespace prodmod
