#include "prodmod/reduction.hpp"

#include <algorithm>
#include <set>

#include "prodmod/errors.hpp"

namespace prodmod {

namespace {

using PF = PropFormula;

PF var(const ExtVar& v) { return PF::var(v); }

class Builder {
 public:
  Builder(const FormulaSet& upsilon, const OmegaSet& omega, Pipeline pipeline)
      : m_lv(levels(upsilon)), m_omega(omega) {
    m_inst.upsilon = upsilon;
    m_inst.levels = m_lv;
    m_inst.omega = omega;
    m_inst.pipeline = pipeline;
    m_inst.variables = build_variables(m_lv, omega, pipeline);
  }

  ReductionInstance crisp() {
    for (const auto& s : m_omega.members) {
      auto kids = m_omega.children(s);
      for (const auto& g : gens(level(s))) {
        if (g.op() == Op::Diamond) w_diamond(s, g, kids);
        if (g.op() == Op::Box) w_box_crisp(s, g, kids);
      }
      if (!s.prime_free()) alpha_families(s, kids);
    }
    std::vector<PF> disjuncts;
    for (const auto& s : m_omega.members) {
      if (s.is_root() || !s.last().primed) continue;
      disjuncts.push_back(alpha_subscript(s.last().formula.body(), s));
    }
    m_inst.side_disjunct = PF::disj(disjuncts);
    return finish();
  }

  ReductionInstance valued() {
    for (const auto& s : m_omega.members) {
      auto kids = m_omega.children(s);
      for (const auto& g : gens(level(s))) {
        if (g.op() == Op::Diamond) w_diamond_valued(s, g, kids);
        if (g.op() == Op::Box) w_box_valued(s, g, kids);
      }
    }
    std::vector<PF> disjuncts;
    for (const auto& s : m_omega.members) {
      if (s.is_root() || !s.last().primed) continue;
      disjuncts.push_back(PF::imp(rel(s.parent(), s), subscript(s.last().formula.body(), s)));
    }
    m_inst.side_disjunct = PF::disj(disjuncts);
    return finish();
  }

 private:
  const FormulaSet& level(const Sequence& s) const {
    static const FormulaSet empty;
    return s.depth() < m_lv.size() ? m_lv[s.depth()] : empty;
  }

  void emit(Family f, PF formula) { m_out[static_cast<int>(f)].insert(std::move(formula)); }

  PF rel(const Sequence& parent, const Sequence& child) { return var(ExtVar::rel(parent, child)); }

  void w_diamond(const Sequence& s, const ModalFormula& d, const std::vector<Sequence>& kids) {
    PF at = var(ExtVar::modal(d, s));
    Sequence wit = s.child(d);
    if (!m_omega.contains(wit)) {
      emit(Family::WDiamond, PF::iff(at, PF::bot()));
      return;
    }
    std::vector<PF> js;
    for (const auto& k : kids) js.push_back(subscript(d.body(), k));
    emit(Family::WDiamond,
         PF::weak_and(PF::iff(at, subscript(d.body(), wit)), PF::imp(PF::disj(js), at)));
  }

  void w_box_crisp(const Sequence& s, const ModalFormula& b, const std::vector<Sequence>& kids) {
    PF at = var(ExtVar::modal(b, s));
    for (const auto& k : kids)
      if (k.last().primed) emit(Family::WV, PF::imp(PF::neg(PF::neg(at)), alpha_subscript(b.body(), k)));
    if (m_omega.contains(s.child(b, true))) {
      emit(Family::UWBox, PF::neg(at));
      return;
    }
    Sequence wit = s.child(b);
    if (!m_omega.contains(wit)) {
      emit(Family::WBox, PF::iff(at, PF::top()));
      return;
    }
    std::vector<PF> ms;
    for (const auto& k : kids) ms.push_back(subscript(b.body(), k));
    emit(Family::WBox, PF::weak_and(PF::iff(at, subscript(b.body(), wit)), PF::imp(at, PF::conj(ms))));
  }

  // alphaVals, 2V, Neg and Imp for a sequence with at least one prime.
  void alpha_families(const Sequence& s, const std::vector<Sequence>& kids) {
    Sequence sm = s.sigma_minus();
    const FormulaSet& lvl = level(s);
    if (!kids.empty()) {
      for (const auto& g : gens(lvl)) {
        if (!g.is_modal()) continue;
        PF a = var(ExtVar::alpha(s, g));
        Sequence wit = s.child(g);
        PF aw = alpha_subscript(g.body(), wit);
        std::vector<PF> parts;
        for (const auto& k : kids) parts.push_back(alpha_subscript(g.body(), k));
        if (g.op() == Op::Diamond) {
          emit(Family::AlphaValsDiamond, PF::weak_and(PF::iff(a, aw), PF::imp(PF::disj(parts), aw)));
        } else if (!m_omega.contains(s.child(g, true))) {
          emit(Family::AlphaValsBox, PF::weak_and(PF::iff(a, aw), PF::imp(aw, PF::conj(parts))));
        }
      }
    }
    for (const auto& psi : lvl) {
      PF a = alpha_subscript(psi, s);
      PF minus = subscript(psi, sm);
      emit(Family::TwoV, PF::iff(subscript(psi, s), PF::strong_and(minus, a)));
      emit(Family::Neg, PF::iff(PF::neg(a), PF::neg(minus)));
      for (const auto& chi : lvl) {
        if (psi == chi) continue;
        emit(Family::Imp, PF::imp(PF::delta(PF::imp(minus, subscript(chi, sm))),
                                  PF::imp(a, alpha_subscript(chi, s))));
      }
    }
  }

  void w_diamond_valued(const Sequence& s, const ModalFormula& d, const std::vector<Sequence>& kids) {
    PF at = var(ExtVar::modal(d, s));
    Sequence wit = s.child(d);
    if (!m_omega.contains(wit)) {
      emit(Family::WDiamond, PF::iff(at, PF::bot()));
      return;
    }
    std::vector<PF> js;
    for (const auto& k : kids) js.push_back(PF::strong_and(rel(s, k), subscript(d.body(), k)));
    emit(Family::WDiamond, PF::weak_and(PF::iff(at, PF::strong_and(rel(s, wit), subscript(d.body(), wit))),
                                        PF::imp(PF::disj(js), at)));
  }

  void w_box_valued(const Sequence& s, const ModalFormula& b, const std::vector<Sequence>& kids) {
    PF at = var(ExtVar::modal(b, s));
    for (const auto& k : kids)
      if (k.last().primed)
        emit(Family::WV, PF::imp(PF::neg(PF::neg(at)), PF::imp(rel(s, k), subscript(b.body(), k))));
    if (m_omega.contains(s.child(b, true))) {
      emit(Family::UWBox, PF::neg(at));
      return;
    }
    Sequence wit = s.child(b);
    if (!m_omega.contains(wit)) {
      emit(Family::WBox, PF::iff(at, PF::top()));
      return;
    }
    std::vector<PF> ms;
    for (const auto& k : kids) ms.push_back(PF::imp(rel(s, k), subscript(b.body(), k)));
    emit(Family::WBox, PF::weak_and(PF::iff(at, PF::imp(rel(s, wit), subscript(b.body(), wit))),
                                    PF::imp(at, PF::conj(ms))));
  }

  ReductionInstance finish() {
    for (int f = 0; f <= static_cast<int>(Family::WV); ++f)
      for (const auto& formula : m_out[f]) m_inst.premises.push_back({static_cast<Family>(f), formula});
    return std::move(m_inst);
  }

  Levels m_lv;
  const OmegaSet& m_omega;
  ReductionInstance m_inst;
  std::set<PF> m_out[static_cast<int>(Family::WV) + 1];
};

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::WDiamond: return "W_dia";
    case Family::AlphaValsDiamond: return "alphaVals_dia";
    case Family::WBox: return "W_box";
    case Family::AlphaValsBox: return "alphaVals_box";
    case Family::UWBox: return "uW_box";
    case Family::TwoV: return "2V";
    case Family::Neg: return "Neg";
    case Family::Imp: return "Imp";
    case Family::WV: return "WV";
  }
  return "?";
}

std::vector<PropFormula> ReductionInstance::premise_formulas() const {
  std::vector<PropFormula> out;
  out.reserve(premises.size());
  for (const auto& p : premises) out.push_back(p.formula);
  return out;
}

std::string ReductionInstance::listing() const {
  std::string out;
  const char* tick = pipeline == Pipeline::Valued ? "'" : "";
  out += "# omega " + omega.print() + "\n";
  for (const auto& p : premises) out += std::string(family_name(p.family)) + tick + ": " + p.formula.text() + "\n";
  out += std::string("uWV") + tick + ": " + side_disjunct.text() + "\n";
  return out;
}

std::vector<ExtVar> build_variables(const Levels& lv, const OmegaSet& omega, Pipeline pipeline) {
  std::set<ExtVar> out;
  for (const auto& s : omega.members) {
    if (s.depth() >= lv.size()) continue;
    for (const auto& g : gens(lv[s.depth()])) {
      out.insert(g.is_var() ? ExtVar::base(g.name(), s) : ExtVar::modal(g, s));
      if (pipeline == Pipeline::Crisp && !s.prime_free()) out.insert(ExtVar::alpha(s, g));
    }
    if (pipeline == Pipeline::Valued && !s.is_root()) out.insert(ExtVar::rel(s.parent(), s));
  }
  return {out.begin(), out.end()};
}

ReductionInstance build_mod_crisp(const FormulaSet& upsilon, const OmegaSet& omega) {
  if (!is_coherent(omega.members, levels(upsilon))) throw IncoherentOmega("not a coherent set: " + omega.print());
  return Builder(upsilon, omega, Pipeline::Crisp).crisp();
}

ReductionInstance build_mod_valued(const FormulaSet& upsilon, const OmegaSet& omega) {
  if (!is_simple(omega.members, levels(upsilon))) throw NotSimpleOmega("not a simple set: " + omega.print());
  return Builder(upsilon, omega, Pipeline::Valued).valued();
}

}  // namespace prodmod
