#include "prodmod/pisolver.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "prodmod/errors.hpp"

namespace prodmod {

namespace {

using smt::Lit;
using smt::neg;
using smt::pos;

// Every subformula n gets a Boolean z (n is 0) and a real x >= 0 (its log
// coordinate when nonzero). e(n) is the atom x <= 0, i.e. "n is 1 unless zero".
class Encoder {
 public:
  explicit Encoder(smt::Solver& s) : m_s(s) {}

  struct Node {
    int z;
    int x;
  };

  const Node& encode(const PropFormula& f) {
    if (auto it = m_nodes.find(f.text()); it != m_nodes.end()) return it->second;
    Node n{m_s.new_bool(), m_s.new_real()};
    m_s.axiom_ge(n.x, 0);
    switch (f.op()) {
      case POp::Var: m_vars.emplace(f.ext(), n); break;
      case POp::Top:
        m_s.add_clause({neg(n.z)});
        m_s.add_clause({pos(e(n))});
        break;
      case POp::Bot: m_s.add_clause({pos(n.z)}); break;
      case POp::StrongAnd: strong_and(n, encode(f.left()), encode(f.right())); break;
      case POp::WeakAnd: weak_and(n, encode(f.left()), encode(f.right())); break;
      case POp::WeakOr: weak_or(n, encode(f.left()), encode(f.right())); break;
      case POp::Imp: imp(n, encode(f.left()), encode(f.right())); break;
      case POp::Delta: delta(n, encode(f.body())); break;
    }
    return m_nodes.emplace(f.text(), n).first->second;
  }

  void assert_top(const PropFormula& f) {
    Node n = encode(f);
    m_s.add_clause({neg(n.z)});
    m_s.add_clause({pos(e(n))});
  }

  void assert_below_top(const PropFormula& f) {
    Node n = encode(f);
    m_s.add_clause({pos(n.z), neg(e(n))});
  }

  Valuation valuation() const {
    Valuation v;
    for (const auto& [var, n] : m_vars)
      v.emplace(var, m_s.model_bool(n.z) ? LogValue::zero() : LogValue::pos(m_s.model_real(n.x)));
    return v;
  }

 private:
  int e(const Node& n) { return m_s.atom_le(n.x, 0); }

  // Atom sum(coeff * x) <= 0 or >= 0.
  int lin(std::vector<std::pair<int, Rational>> terms, bool le) {
    int s = m_s.linear(std::move(terms));
    return le ? m_s.atom_le(s, 0) : m_s.atom_ge(s, 0);
  }

  void zero_if_either(const Node& n, const Node& a, const Node& b) {
    m_s.add_clause({neg(a.z), pos(n.z)});
    m_s.add_clause({neg(b.z), pos(n.z)});
    m_s.add_clause({neg(n.z), pos(a.z), pos(b.z)});
  }

  void strong_and(const Node& n, const Node& a, const Node& b) {
    zero_if_either(n, a, b);
    std::vector<std::pair<int, Rational>> t{{n.x, 1}, {a.x, -1}, {b.x, -1}};
    m_s.add_clause({pos(n.z), pos(lin(t, true))});
    m_s.add_clause({pos(n.z), pos(lin(t, false))});
  }

  void weak_and(const Node& n, const Node& a, const Node& b) {
    zero_if_either(n, a, b);
    std::vector<std::pair<int, Rational>> ta{{n.x, 1}, {a.x, -1}}, tb{{n.x, 1}, {b.x, -1}};
    m_s.add_clause({pos(n.z), pos(lin(ta, false))});
    m_s.add_clause({pos(n.z), pos(lin(tb, false))});
    m_s.add_clause({pos(n.z), pos(lin(ta, true)), pos(lin(tb, true))});
  }

  void weak_or(const Node& n, const Node& a, const Node& b) {
    m_s.add_clause({neg(n.z), pos(a.z)});
    m_s.add_clause({neg(n.z), pos(b.z)});
    m_s.add_clause({pos(n.z), neg(a.z), neg(b.z)});
    std::vector<std::pair<int, Rational>> ta{{n.x, 1}, {a.x, -1}}, tb{{n.x, 1}, {b.x, -1}};
    m_s.add_clause({pos(a.z), pos(lin(ta, true))});
    m_s.add_clause({pos(b.z), pos(lin(tb, true))});
    m_s.add_clause({pos(a.z), pos(b.z), pos(lin(ta, false)), pos(lin(tb, false))});
    m_s.add_clause({neg(a.z), pos(b.z), pos(lin(tb, false))});
    m_s.add_clause({pos(a.z), neg(b.z), pos(lin(ta, false))});
  }

  void imp(const Node& n, const Node& a, const Node& b) {
    m_s.add_clause({neg(n.z), neg(a.z)});
    m_s.add_clause({neg(n.z), pos(b.z)});
    m_s.add_clause({pos(a.z), neg(b.z), pos(n.z)});
    m_s.add_clause({neg(a.z), pos(e(n))});
    std::vector<std::pair<int, Rational>> t{{n.x, 1}, {b.x, -1}, {a.x, 1}};
    m_s.add_clause({pos(a.z), pos(b.z), pos(lin(t, false))});
    m_s.add_clause({pos(a.z), pos(b.z), pos(e(n)), pos(lin(t, true))});
  }

  void delta(const Node& n, const Node& a) {
    int ea = e(a);
    m_s.add_clause({neg(a.z), pos(n.z)});
    m_s.add_clause({pos(ea), pos(n.z)});
    m_s.add_clause({neg(n.z), pos(a.z), neg(ea)});
    m_s.add_clause({pos(n.z), pos(e(n))});
  }

  smt::Solver& m_s;
  std::unordered_map<std::string, Node> m_nodes;
  std::map<ExtVar, Node> m_vars;
};

PropDecision run(const std::vector<PropFormula>& gamma, const PropFormula& phi, const smt::Limits& limits) {
  smt::Solver solver;
  Encoder enc(solver);
  for (const auto& g : gamma) enc.assert_top(g);
  enc.assert_below_top(phi);
  PropDecision d;
  smt::Result r = solver.solve(limits);
  d.stats = solver.stats();
  switch (r) {
    case smt::Result::Unsat: d.verdict = PropVerdict::Entailed; break;
    case smt::Result::Unknown:
      d.verdict = PropVerdict::Unknown;
      d.reason = "solver resource limit reached after " + std::to_string(d.stats.decisions) + " decisions";
      break;
    case smt::Result::Sat:
      d.verdict = PropVerdict::Counter;
      d.counter = enc.valuation();
      if (!verify_certificate(d.counter, gamma, phi))
        throw std::logic_error("internal error: solver model fails exact re-evaluation");
      break;
  }
  return d;
}

}  // namespace

PropDecision decide_pd(const std::vector<PropFormula>& gamma, const PropFormula& phi, const smt::Limits& limits) {
  return run(gamma, phi, limits);
}

PropDecision decide_p(const std::vector<PropFormula>& gamma, const PropFormula& phi, const smt::Limits& limits) {
  for (const auto& g : gamma)
    if (g.contains_delta()) throw DeltaInInput("delta in premise " + g.text());
  if (phi.contains_delta()) throw DeltaInInput("delta in conclusion " + phi.text());
  return run(gamma, phi, limits);
}

bool verify_certificate(const Valuation& v, const std::vector<PropFormula>& premises, const PropFormula& goal) {
  for (const auto& p : premises)
    if (!eval_prop(v, p).is_top()) return false;
  return !eval_prop(v, goal).is_top();
}

bool verify_certificate(const Valuation& v, const ReductionInstance& instance, const std::vector<PropFormula>& gamma0,
                        const PropFormula& goal) {
  std::vector<PropFormula> all = gamma0;
  for (const auto& p : instance.premises) all.push_back(p.formula);
  return verify_certificate(v, all, goal);
}

namespace {

class SmtWriter {
 public:
  std::string node(const PropFormula& f) {
    if (auto it = m_ids.find(f.text()); it != m_ids.end()) return it->second;
    std::string id = std::to_string(m_next++);
    std::string z = "z" + id, x = "x" + id;
    m_out << "(declare-const " << z << " Bool)\n(declare-const " << x << " Real)\n(assert (>= " << x << " 0))\n";
    auto sub = [&](const PropFormula& g, std::string& gz, std::string& gx) {
      std::string gid = node(g);
      gz = "z" + gid;
      gx = "x" + gid;
    };
    std::string az, ax, bz, bx;
    switch (f.op()) {
      case POp::Var: m_out << "; " << x << " is " << f.ext().key() << "\n"; break;
      case POp::Top: m_out << "(assert (not " << z << "))\n(assert (= " << x << " 0))\n"; break;
      case POp::Bot: m_out << "(assert " << z << ")\n"; break;
      case POp::Delta:
        sub(f.body(), az, ax);
        m_out << "(assert (= " << z << " (or " << az << " (> " << ax << " 0))))\n";
        m_out << "(assert (=> (not " << z << ") (= " << x << " 0)))\n";
        break;
      default: {
        sub(f.left(), az, ax);
        sub(f.right(), bz, bx);
        switch (f.op()) {
          case POp::StrongAnd:
            m_out << "(assert (= " << z << " (or " << az << " " << bz << ")))\n";
            m_out << "(assert (=> (not " << z << ") (= " << x << " (+ " << ax << " " << bx << "))))\n";
            break;
          case POp::WeakAnd:
            m_out << "(assert (= " << z << " (or " << az << " " << bz << ")))\n";
            m_out << "(assert (=> (not " << z << ") (= " << x << " (ite (>= " << ax << " " << bx << ") " << ax
                  << " " << bx << "))))\n";
            break;
          case POp::WeakOr:
            m_out << "(assert (= " << z << " (and " << az << " " << bz << ")))\n";
            m_out << "(assert (=> (not " << z << ") (= " << x << " (ite " << az << " " << bx << " (ite " << bz
                  << " " << ax << " (ite (<= " << ax << " " << bx << ") " << ax << " " << bx << "))))))\n";
            break;
          case POp::Imp:
            m_out << "(assert (= " << z << " (and (not " << az << ") " << bz << ")))\n";
            m_out << "(assert (=> " << az << " (= " << x << " 0)))\n";
            m_out << "(assert (=> (and (not " << az << ") (not " << bz << ")) (= " << x << " (ite (>= " << ax
                  << " " << bx << ") 0 (- " << bx << " " << ax << ")))))\n";
            break;
          default: break;
        }
      }
    }
    m_ids.emplace(f.text(), id);
    return id;
  }

  std::ostringstream m_out;

 private:
  std::unordered_map<std::string, std::string> m_ids;
  std::size_t m_next = 0;
};

}  // namespace

std::string export_smtlib(const std::vector<PropFormula>& gamma, const PropFormula& phi) {
  SmtWriter w;
  w.m_out << "; truth values in log coordinates: zN marks value 0, otherwise the value is 2^-xN\n";
  w.m_out << "(set-logic QF_LRA)\n";
  std::vector<std::string> premise_ids;
  for (const auto& g : gamma) premise_ids.push_back(w.node(g));
  std::string goal = w.node(phi);
  for (const auto& id : premise_ids) w.m_out << "(assert (and (not z" << id << ") (= x" << id << " 0)))\n";
  w.m_out << "(assert (or z" << goal << " (> x" << goal << " 0)))\n";
  w.m_out << "(check-sat)\n";
  return w.m_out.str();
}

}  // namespace prodmod
