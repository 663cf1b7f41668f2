#include "prodmod/countermodel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "prodmod/errors.hpp"
#include "prodmod/pisolver.hpp"

namespace prodmod {

std::vector<PropFormula> closure(const std::vector<PropFormula>& fs) {
  std::set<PropFormula> seen;
  std::vector<PropFormula> out;
  std::vector<PropFormula> stack(fs.rbegin(), fs.rend());
  while (!stack.empty()) {
    PropFormula f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    out.push_back(f);
    if (f.op() == POp::Delta) stack.push_back(f.body());
    if (f.is_binary()) {
      stack.push_back(f.right());
      stack.push_back(f.left());
    }
  }
  return out;
}

bool is_opd(const Valuation& f, const Valuation& g, const std::vector<PropFormula>& theta) {
  std::vector<std::pair<LogValue, LogValue>> vals;
  vals.reserve(theta.size());
  for (const auto& t : theta) {
    LogValue a = eval_prop(f, t), b = eval_prop(g, t);
    if (a.is_zero() != b.is_zero()) return false;
    vals.emplace_back(a, b);
  }
  for (const auto& [fa, ga] : vals)
    for (const auto& [fb, gb] : vals)
      if (fa <= fb && !(ga <= gb)) return false;
  return true;
}

Valuation product_valuation(const Valuation& f, const Valuation& g) {
  Valuation out;
  for (const auto& [v, a] : f)
    if (auto it = g.find(v); it != g.end()) out.emplace(v, strong_and(a, it->second));
  return out;
}

Valuation power_valuation(const Valuation& f, const Rational& k) {
  Valuation out;
  for (const auto& [v, a] : f) out.emplace(v, power(a, k));
  return out;
}

SymbolicCountermodel::SymbolicCountermodel(Pipeline pipeline, FormulaSet upsilon, OmegaSet omega, Valuation h)
    : m_pipeline(pipeline),
      m_upsilon(std::move(upsilon)),
      m_levels(prodmod::levels(m_upsilon)),
      m_omega(std::move(omega)),
      m_h(std::move(h)) {}

bool SymbolicCountermodel::finite() const {
  for (const auto& s : m_omega.members)
    if (!s.prime_free()) return false;
  return true;
}

const FormulaSet& SymbolicCountermodel::level(std::size_t d) const {
  static const FormulaSet empty;
  return d < m_levels.size() ? m_levels[d] : empty;
}

LogValue SymbolicCountermodel::h(const PropFormula& f) const { return eval_prop(m_h, f); }

LogValue SymbolicCountermodel::closed_form(const WorldLabel& w, const ModalFormula& phi) const {
  if (m_pipeline == Pipeline::Valued) return power(h(subscript(phi, w.tilde())), exponent(w));
  LogValue out = h(subscript(phi, w.underline()));
  for (const auto& eta : w.init()) out = strong_and(out, power(h(alpha_subscript(phi, eta.tilde())), eta.mult()));
  return out;
}

LogValue SymbolicCountermodel::atom(const WorldLabel& w, const std::string& p) const {
  return closed_form(w, ModalFormula::var(p));
}

LogValue SymbolicCountermodel::edge(const WorldLabel& w) const {
  if (m_pipeline == Pipeline::Crisp) return LogValue::top();
  WorldLabel parent = w.parent();
  return power(h(PropFormula::var(ExtVar::rel(parent.tilde(), w.tilde()))), exponent(w));
}

std::vector<WorldLabel> SymbolicCountermodel::children(const WorldLabel& w, unsigned k_max) const {
  std::vector<WorldLabel> out;
  for (const auto& s : m_omega.children(w.tilde())) {
    const SeqEntry& e = s.last();
    if (!e.primed) {
      out.push_back(w.child({e.formula, false, 0}));
      continue;
    }
    for (unsigned k = k_min(); k <= k_max; ++k) out.push_back(w.child({e.formula, true, k}));
  }
  return out;
}

std::vector<WorldLabel> SymbolicCountermodel::worlds(unsigned k_max) const {
  std::vector<WorldLabel> out{WorldLabel()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto& c : children(out[i], k_max)) out.push_back(std::move(c));
  return out;
}

namespace {

std::vector<PropFormula> root_premises(const std::vector<ModalFormula>& gamma) {
  std::vector<PropFormula> out;
  for (const auto& g : gamma) out.push_back(subscript(g, Sequence()));
  return out;
}

FormulaSet upsilon_of(const std::vector<ModalFormula>& gamma, const ModalFormula& phi) {
  FormulaSet u(gamma.begin(), gamma.end());
  u.insert(phi);
  return u;
}

void check_certificate(const Valuation& h, const ReductionInstance& inst, const std::vector<ModalFormula>& gamma,
                       const ModalFormula& phi) {
  PropFormula goal = PropFormula::weak_or(subscript(phi, Sequence()), inst.side_disjunct);
  bool ok = false;
  try {
    ok = verify_certificate(h, inst, root_premises(gamma), goal);
  } catch (const UnboundVariable& e) {
    throw CertificateRejected(std::string("valuation is not total: ") + e.what());
  }
  if (!ok) throw CertificateRejected("valuation does not witness the failure of the reduced entailment");
}

}  // namespace

SymbolicCountermodel build_crisp_countermodel(const Valuation& h, const OmegaSet& omega,
                                              const std::vector<ModalFormula>& gamma, const ModalFormula& phi) {
  FormulaSet u = upsilon_of(gamma, phi);
  check_certificate(h, build_mod_crisp(u, omega), gamma, phi);
  return SymbolicCountermodel(Pipeline::Crisp, u, omega, h);
}

SymbolicCountermodel build_valued_countermodel(const Valuation& h, const OmegaSet& omega,
                                               const std::vector<ModalFormula>& gamma, const ModalFormula& phi) {
  FormulaSet u = upsilon_of(gamma, phi);
  check_certificate(h, build_mod_valued(u, omega), gamma, phi);
  return SymbolicCountermodel(Pipeline::Valued, u, omega, h);
}

namespace {

Rational exp2_neg(const Rational& n) {
  if (n.get_den() != 1) throw std::logic_error("non-integral exponent in truncation");
  if (n > 1 << 20) throw std::runtime_error("truncation value too small to represent");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n.get_num().get_ui());
  return Rational(mpz_class(1), den);
}

}  // namespace

Truncation truncate(const SymbolicCountermodel& cm, unsigned K) {
  if (K < 1) throw std::invalid_argument("truncation bound must be at least 1");
  Truncation t;
  t.labels = cm.worlds(K);
  std::vector<std::map<std::string, LogValue>> atoms(t.labels.size());
  std::vector<LogValue> edges(t.labels.size());
  mpz_class lcm = 1;
  auto note = [&](const LogValue& v) {
    if (!v.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.log().get_den_mpz_t());
  };
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    const WorldLabel& w = t.labels[i];
    for (const auto& g : gens(cm.level(w.depth())))
      if (g.is_var()) note(atoms[i][g.name()] = cm.atom(w, g.name()));
    if (i > 0) note(edges[i] = cm.edge(w));
  }
  t.scale = Rational(lcm);
  auto concrete = [&](const LogValue& v) { return v.is_zero() ? Rational(0) : exp2_neg(Rational(t.scale * v.log())); };
  t.model = KripkeModel(cm.pipeline() == Pipeline::Crisp);
  std::map<WorldLabel, std::size_t> index;
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    t.model.add_world("w" + std::to_string(i));
    index.emplace(t.labels[i], i);
  }
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    for (const auto& [p, v] : atoms[i]) t.model.set_val(i, p, concrete(v));
    if (i > 0) t.model.set_rel(index.at(t.labels[i].parent()), i, concrete(edges[i]));
  }
  return t;
}

namespace {

class LemmaChecker {
 public:
  LemmaChecker(const SymbolicCountermodel& cm, unsigned K, TruthLemmaReport& report)
      : m_cm(cm), m_report(report) {
    m_k_max = std::max(K, cm.k_min() + 1);
    m_labels = cm.worlds(m_k_max);
    for (std::size_t i = 0; i < m_labels.size(); ++i) m_index.emplace(m_labels[i], i);
    m_values.resize(m_labels.size());
    report.K = K;
    report.worlds = m_labels.size();
  }

  void run() {
    for (std::size_t i = m_labels.size(); i-- > 0;) world(i);
  }

  const LogValue& value(std::size_t w, const ModalFormula& f) const { return m_values[w].at(f.text()); }

 private:
  void world(std::size_t i) {
    const WorldLabel& w = m_labels[i];
    const FormulaSet& lvl = m_cm.level(w.depth());
    std::vector<ModalFormula> order(lvl.begin(), lvl.end());
    std::stable_sort(order.begin(), order.end(), [](const ModalFormula& a, const ModalFormula& b) {
      return a.size() < b.size();
    });
    auto kids = m_cm.children(w, m_k_max);
    for (const auto& f : order) {
      LogValue v = model_value(i, f, kids);
      m_values[i][f.text()] = v;
      ++m_report.clauses;
      LogValue cf = m_cm.closed_form(w, f);
      if (v != cf)
        violation(w, f, "model value " + v.print() + " differs from closed form " + cf.print());
    }
  }

  LogValue model_value(std::size_t i, const ModalFormula& f, const std::vector<WorldLabel>& kids) {
    const WorldLabel& w = m_labels[i];
    auto sub = [&](const ModalFormula& g) -> const LogValue& { return m_values[i].at(g.text()); };
    switch (f.op()) {
      case Op::Var: return m_cm.atom(w, f.name());
      case Op::Top: return LogValue::top();
      case Op::Bot: return LogValue::zero();
      case Op::StrongAnd: return strong_and(sub(f.left()), sub(f.right()));
      case Op::WeakAnd: return meet(sub(f.left()), sub(f.right()));
      case Op::WeakOr: return join(sub(f.left()), sub(f.right()));
      case Op::Imp: return residuum(sub(f.left()), sub(f.right()));
      case Op::Box:
      case Op::Diamond: return modal_value(i, f, kids);
    }
    return LogValue::zero();
  }

  LogValue term(const WorldLabel& child, const ModalFormula& f) const {
    const LogValue& e = m_values[m_index.at(child)].at(f.body().text());
    if (m_cm.pipeline() == Pipeline::Crisp) return e;
    LogValue r = m_cm.edge(child);
    return f.op() == Op::Box ? residuum(r, e) : strong_and(r, e);
  }

  LogValue modal_value(std::size_t i, const ModalFormula& f, const std::vector<WorldLabel>& kids) {
    const WorldLabel& w = m_labels[i];
    bool box = f.op() == Op::Box;
    LogValue acc = box ? LogValue::top() : LogValue::zero();
    auto fold = [&](const LogValue& v) { acc = box ? meet(acc, v) : join(acc, v); };
    std::map<ModalFormula, std::vector<LogValue>> families;
    for (const auto& c : kids) {
      const WorldEntry& e = c.entries().back();
      if (e.indexed)
        families[e.formula].push_back(term(c, f));
      else
        fold(term(c, f));
    }
    for (const auto& [chi, vals] : families) {
      auto limit = family_limit(w, f, chi, vals, box);
      if (limit) fold(*limit);
    }
    Sequence designated = w.tilde().child(f);
    if (m_cm.omega().contains(designated) && !(box && m_cm.omega().contains(w.tilde().child(f, true)))) {
      LogValue at = term(w.child({f, false, 0}), f);
      if (at != acc) violation(w, f, "not attained at the designated child (" + at.print() + " vs " + acc.print() + ")");
    }
    return acc;
  }

  // Infimum (box) or supremum (diamond) of one infinite family of
  // parameterized children, certified from its finite prefix.
  std::optional<LogValue> family_limit(const WorldLabel& w, const ModalFormula& f, const ModalFormula& chi,
                                       const std::vector<LogValue>& vals, bool box) {
    bool any_zero = false, all_zero = true;
    for (const auto& v : vals) {
      any_zero = any_zero || v.is_zero();
      all_zero = all_zero && v.is_zero();
    }
    if (all_zero) return LogValue::zero();
    if (any_zero) {
      violation(w, f, "family " + chi.text() + " mixes zero and nonzero values");
      return std::nullopt;
    }
    Rational step = vals[1].log() - vals[0].log();
    for (std::size_t k = 1; k + 1 < vals.size(); ++k) {
      if (vals[k + 1].log() - vals[k].log() != step) {
        violation(w, f, "family " + chi.text() + " is not geometric");
        return std::nullopt;
      }
    }
    if (step < 0) {
      violation(w, f, "family " + chi.text() + " increases with k");
      return std::nullopt;
    }
    if (!box || step == 0) return vals.front();
    m_report.unwitnessed.push_back({w.print(), f.print(PrintStyle::Words), vals, LogValue::pos(step)});
    return LogValue::zero();
  }

  void violation(const WorldLabel& w, const ModalFormula& f, const std::string& what) {
    m_report.violations.push_back(w.print() + " " + f.print(PrintStyle::Words) + ": " + what);
  }

  const SymbolicCountermodel& m_cm;
  TruthLemmaReport& m_report;
  unsigned m_k_max;
  std::vector<WorldLabel> m_labels;
  std::map<WorldLabel, std::size_t> m_index;
  std::vector<std::unordered_map<std::string, LogValue>> m_values;
};

}  // namespace

TruthLemmaReport verify_truth_lemma(const SymbolicCountermodel& cm, unsigned K,
                                    const std::vector<ModalFormula>& gamma, const ModalFormula& phi) {
  TruthLemmaReport report;
  LemmaChecker checker(cm, K, report);
  try {
    checker.run();
  } catch (const UnboundVariable& e) {
    report.violations.push_back(std::string("valuation is not total: ") + e.what());
    return report;
  }
  report.root_ok = true;
  for (const auto& g : gamma) report.root_ok = report.root_ok && checker.value(0, g).is_top();
  report.root_ok = report.root_ok && !checker.value(0, phi).is_top();
  return report;
}

}  // namespace prodmod
