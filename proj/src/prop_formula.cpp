#include "prodmod/prop_formula.hpp"

#include <functional>

#include "grammar.hpp"

namespace prodmod {

namespace {

using namespace grammar;

std::string ext_key(ExtKind kind, const ModalFormula& f, const Sequence& s, const Sequence& c) {
  switch (kind) {
    case ExtKind::Base: return f.name() + "_" + s.print();
    case ExtKind::Modal: return "(" + f.print(PrintStyle::Words) + ")_" + s.print();
    case ExtKind::Alpha: return "alpha[" + s.print() + ", " + f.print(PrintStyle::Words) + "]";
    case ExtKind::Rel: return "r[" + s.print() + ", " + c.print() + "]";
  }
  return {};
}

bool neg_sugar(POp op, const PropFormula* r) { return op == POp::Imp && r->op() == POp::Bot; }

bool iff_sugar(POp op, const PropFormula* l, const PropFormula* r) {
  return op == POp::StrongAnd && l->op() == POp::Imp && r->op() == POp::Imp && l->left() == r->right() &&
         l->right() == r->left();
}

int prec_of(const PropFormula& f) {
  switch (f.op()) {
    case POp::Var:
    case POp::Top:
    case POp::Bot: return kPrecAtom;
    case POp::Delta: return kPrecUnary;
    case POp::Imp: return neg_sugar(f.op(), &f.right()) ? kPrecUnary : kPrecImp;
    case POp::StrongAnd: return iff_sugar(f.op(), &f.left(), &f.right()) ? kPrecIff : kPrecAmp;
    case POp::WeakAnd: return kPrecAnd;
    case POp::WeakOr: return kPrecOr;
  }
  return kPrecAtom;
}

std::string render(POp op, const ExtVar* v, const PropFormula* l, const PropFormula* r) {
  auto sub = [](const PropFormula& c, int min_prec) { return parenthesize(c.text(), prec_of(c), min_prec); };
  switch (op) {
    case POp::Var: return v->key();
    case POp::Top: return "1";
    case POp::Bot: return "0";
    case POp::Delta: return "!" + sub(*l, kPrecUnary);
    case POp::Imp:
      if (neg_sugar(op, r)) return "~" + sub(*l, kPrecUnary);
      return sub(*l, kPrecOr) + " -> " + sub(*r, kPrecImp);
    case POp::StrongAnd:
      if (iff_sugar(op, l, r)) return sub(l->left(), kPrecIff) + " <-> " + sub(l->right(), kPrecImp);
      return sub(*l, kPrecAmp) + " & " + sub(*r, kPrecUnary);
    case POp::WeakAnd: return sub(*l, kPrecAnd) + " /\\ " + sub(*r, kPrecAmp);
    case POp::WeakOr: return sub(*l, kPrecOr) + " \\/ " + sub(*r, kPrecAnd);
  }
  return {};
}

struct PropBuilder {
  using Node = PropFormula;
  Node var(const std::string& name, std::size_t) { return PropFormula::var(ExtVar::base(name, Sequence())); }
  Node top() { return PropFormula::top(); }
  Node bot() { return PropFormula::bot(); }
  Node unary(Unary u, const Node& sub, std::size_t at) {
    switch (u) {
      case Unary::Neg: return PropFormula::neg(sub);
      case Unary::Delta: return PropFormula::delta(sub);
      default: break;
    }
    throw SyntaxError("modal operators are not allowed in propositional formulas", at);
  }
  Node binary(Binary b, const Node& l, const Node& r) {
    switch (b) {
      case Binary::Iff: return PropFormula::iff(l, r);
      case Binary::Imp: return PropFormula::imp(l, r);
      case Binary::Or: return PropFormula::weak_or(l, r);
      case Binary::And: return PropFormula::weak_and(l, r);
      case Binary::Amp: return PropFormula::strong_and(l, r);
    }
    return l;
  }
};

void collect_vars(const PropFormula& f, std::set<const void*>& seen, std::set<ExtVar>& out) {
  if (!seen.insert(f.identity()).second) return;
  if (f.op() == POp::Var) {
    out.insert(f.ext());
  } else if (f.op() == POp::Delta) {
    collect_vars(f.body(), seen, out);
  } else if (f.is_binary()) {
    collect_vars(f.left(), seen, out);
    collect_vars(f.right(), seen, out);
  }
}

template <class Leaf>
PropFormula translate(const ModalFormula& f, const Leaf& leaf) {
  switch (f.op()) {
    case Op::Top: return PropFormula::top();
    case Op::Bot: return PropFormula::bot();
    case Op::Var:
    case Op::Box:
    case Op::Diamond: return leaf(f);
    case Op::WeakAnd: return PropFormula::weak_and(translate(f.left(), leaf), translate(f.right(), leaf));
    case Op::WeakOr: return PropFormula::weak_or(translate(f.left(), leaf), translate(f.right(), leaf));
    case Op::StrongAnd: return PropFormula::strong_and(translate(f.left(), leaf), translate(f.right(), leaf));
    case Op::Imp: return PropFormula::imp(translate(f.left(), leaf), translate(f.right(), leaf));
  }
  return PropFormula::bot();
}

}  // namespace

ExtVar::ExtVar(ExtKind kind, ModalFormula f, Sequence s, Sequence c)
    : m_kind(kind), m_formula(std::move(f)), m_seq(std::move(s)), m_child(std::move(c)) {
  m_key = ext_key(m_kind, m_formula, m_seq, m_child);
}

ExtVar ExtVar::base(const std::string& p, const Sequence& s) { return ExtVar(ExtKind::Base, ModalFormula::var(p), s, {}); }
ExtVar ExtVar::modal(const ModalFormula& f, const Sequence& s) { return ExtVar(ExtKind::Modal, f, s, {}); }
ExtVar ExtVar::alpha(const Sequence& s, const ModalFormula& g) { return ExtVar(ExtKind::Alpha, g, s, {}); }
ExtVar ExtVar::rel(const Sequence& parent, const Sequence& child) {
  return ExtVar(ExtKind::Rel, ModalFormula::top(), parent, child);
}

bool PropFormula::is_binary() const {
  switch (op()) {
    case POp::WeakAnd:
    case POp::WeakOr:
    case POp::StrongAnd:
    case POp::Imp: return true;
    default: return false;
  }
}

PropFormula PropFormula::make(POp op, const ExtVar* v, const PropFormula* l, const PropFormula* r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  if (v) n->var = std::make_shared<const ExtVar>(*v);
  if (l) n->left = std::make_shared<const PropFormula>(*l);
  if (r) n->right = std::make_shared<const PropFormula>(*r);
  n->text = render(op, v, l, r);
  n->has_delta = op == POp::Delta || (l && l->contains_delta()) || (r && r->contains_delta());
  return PropFormula(std::move(n));
}

PropFormula PropFormula::var(const ExtVar& v) { return make(POp::Var, &v, nullptr, nullptr); }
PropFormula PropFormula::top() { return make(POp::Top, nullptr, nullptr, nullptr); }
PropFormula PropFormula::bot() { return make(POp::Bot, nullptr, nullptr, nullptr); }
PropFormula PropFormula::weak_and(const PropFormula& l, const PropFormula& r) { return make(POp::WeakAnd, nullptr, &l, &r); }
PropFormula PropFormula::weak_or(const PropFormula& l, const PropFormula& r) { return make(POp::WeakOr, nullptr, &l, &r); }
PropFormula PropFormula::strong_and(const PropFormula& l, const PropFormula& r) {
  return make(POp::StrongAnd, nullptr, &l, &r);
}
PropFormula PropFormula::imp(const PropFormula& l, const PropFormula& r) { return make(POp::Imp, nullptr, &l, &r); }
PropFormula PropFormula::delta(const PropFormula& sub) { return make(POp::Delta, nullptr, &sub, nullptr); }
PropFormula PropFormula::neg(const PropFormula& sub) { return imp(sub, bot()); }
PropFormula PropFormula::iff(const PropFormula& l, const PropFormula& r) { return strong_and(imp(l, r), imp(r, l)); }

PropFormula PropFormula::conj(const std::vector<PropFormula>& fs) {
  if (fs.empty()) return top();
  PropFormula acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = weak_and(*it, acc);
  return acc;
}

PropFormula PropFormula::disj(const std::vector<PropFormula>& fs) {
  if (fs.empty()) return bot();
  PropFormula acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = weak_or(*it, acc);
  return acc;
}

PropFormula parse_prop(std::string_view text) {
  PropBuilder b;
  return Parser<PropBuilder>(text, b).parse_all();
}

std::set<ExtVar> ext_variables(const PropFormula& f) {
  std::set<const void*> seen;
  std::set<ExtVar> out;
  collect_vars(f, seen, out);
  return out;
}

PropFormula subscript(const ModalFormula& f, const Sequence& s) {
  return translate(f, [&](const ModalFormula& g) {
    if (g.is_var()) return PropFormula::var(ExtVar::base(g.name(), s));
    return PropFormula::var(ExtVar::modal(g, s));
  });
}

PropFormula alpha_subscript(const ModalFormula& f, const Sequence& s) {
  return translate(f, [&](const ModalFormula& g) { return PropFormula::var(ExtVar::alpha(s, g)); });
}

}  // namespace prodmod
