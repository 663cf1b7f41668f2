#include "prodmod/formula.hpp"

#include <algorithm>
#include <functional>

#include "grammar.hpp"

namespace prodmod {

namespace {

using namespace grammar;

bool neg_sugar(Op op, const ModalFormula* r) { return op == Op::Imp && r->op() == Op::Bot; }

bool iff_sugar(Op op, const ModalFormula* l, const ModalFormula* r) {
  return op == Op::StrongAnd && l->op() == Op::Imp && r->op() == Op::Imp && l->left() == r->right() &&
         l->right() == r->left();
}

int prec_of(Op op, const ModalFormula* l, const ModalFormula* r) {
  switch (op) {
    case Op::Var:
    case Op::Top:
    case Op::Bot: return kPrecAtom;
    case Op::Box:
    case Op::Diamond: return kPrecUnary;
    case Op::Imp: return neg_sugar(op, r) ? kPrecUnary : kPrecImp;
    case Op::StrongAnd: return iff_sugar(op, l, r) ? kPrecIff : kPrecAmp;
    case Op::WeakAnd: return kPrecAnd;
    case Op::WeakOr: return kPrecOr;
  }
  return kPrecAtom;
}

int prec_of(const ModalFormula& f) {
  if (f.is_var() || f.is_constant()) return kPrecAtom;
  if (f.is_modal()) return kPrecUnary;
  return prec_of(f.op(), &f.left(), &f.right());
}

using ChildText = std::function<std::string(const ModalFormula&)>;

std::string render(Op op, const std::string& name, const ModalFormula* l, const ModalFormula* r,
                   PrintStyle style, const ChildText& child) {
  auto sub = [&](const ModalFormula& c, int min_prec) { return parenthesize(child(c), prec_of(c), min_prec); };
  auto prefix = [&](const char* sym, const char* word, const ModalFormula& c) {
    std::string s = sub(c, kPrecUnary);
    if (style == PrintStyle::Symbolic) return sym + s;
    return std::string(word) + (s.front() == '(' ? "" : " ") + s;
  };
  switch (op) {
    case Op::Var: return name;
    case Op::Top: return "1";
    case Op::Bot: return "0";
    case Op::Box: return prefix("[]", "box", *l);
    case Op::Diamond: return prefix("<>", "dia", *l);
    case Op::Imp:
      if (neg_sugar(op, r)) return "~" + sub(*l, kPrecUnary);
      return sub(*l, kPrecOr) + " -> " + sub(*r, kPrecImp);
    case Op::StrongAnd:
      if (iff_sugar(op, l, r)) return sub(l->left(), kPrecIff) + " <-> " + sub(l->right(), kPrecImp);
      return sub(*l, kPrecAmp) + " & " + sub(*r, kPrecUnary);
    case Op::WeakAnd: return sub(*l, kPrecAnd) + " /\\ " + sub(*r, kPrecAmp);
    case Op::WeakOr: return sub(*l, kPrecOr) + " \\/ " + sub(*r, kPrecAnd);
  }
  return {};
}

struct ModalBuilder {
  using Node = ModalFormula;
  Node var(const std::string& name, std::size_t) { return ModalFormula::var(name); }
  Node top() { return ModalFormula::top(); }
  Node bot() { return ModalFormula::bot(); }
  Node unary(Unary u, const Node& sub, std::size_t at) {
    switch (u) {
      case Unary::Box: return ModalFormula::box(sub);
      case Unary::Dia: return ModalFormula::diamond(sub);
      case Unary::Neg: return ModalFormula::neg(sub);
      case Unary::Delta: break;
    }
    throw DeltaInModalInput("the delta connective is not allowed in modal formulas (offset " +
                            std::to_string(at) + ")");
  }
  Node binary(Binary b, const Node& l, const Node& r) {
    switch (b) {
      case Binary::Iff: return ModalFormula::iff(l, r);
      case Binary::Imp: return ModalFormula::imp(l, r);
      case Binary::Or: return ModalFormula::weak_or(l, r);
      case Binary::And: return ModalFormula::weak_and(l, r);
      case Binary::Amp: return ModalFormula::strong_and(l, r);
    }
    return l;
  }
};

void collect_psfm(const ModalFormula& f, FormulaSet& out) {
  out.insert(f);
  if (f.is_binary()) {
    collect_psfm(f.left(), out);
    collect_psfm(f.right(), out);
  }
}

void collect_sfm(const ModalFormula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  if (f.is_binary()) {
    collect_sfm(f.left(), out);
    collect_sfm(f.right(), out);
  } else if (f.is_modal()) {
    collect_sfm(f.body(), out);
  }
}

}  // namespace

bool ModalFormula::is_binary() const {
  switch (op()) {
    case Op::WeakAnd:
    case Op::WeakOr:
    case Op::StrongAnd:
    case Op::Imp: return true;
    default: return false;
  }
}

ModalFormula ModalFormula::make(Op op, std::string name, const ModalFormula* l, const ModalFormula* r) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->name = std::move(name);
  if (l) node->left = std::make_shared<const ModalFormula>(*l);
  if (r) node->right = std::make_shared<const ModalFormula>(*r);
  node->text = render(op, node->name, l, r, PrintStyle::Symbolic, [](const ModalFormula& c) { return c.text(); });
  if (op == Op::Box || op == Op::Diamond) {
    node->depth = 1 + l->depth();
    node->size = 1 + l->size();
  } else if (l && r) {
    node->depth = std::max(l->depth(), r->depth());
    node->size = 1 + l->size() + r->size();
  }
  return ModalFormula(std::move(node));
}

ModalFormula ModalFormula::var(std::string name) { return make(Op::Var, std::move(name), nullptr, nullptr); }
ModalFormula ModalFormula::top() { return make(Op::Top, {}, nullptr, nullptr); }
ModalFormula ModalFormula::bot() { return make(Op::Bot, {}, nullptr, nullptr); }
ModalFormula ModalFormula::weak_and(const ModalFormula& l, const ModalFormula& r) { return make(Op::WeakAnd, {}, &l, &r); }
ModalFormula ModalFormula::weak_or(const ModalFormula& l, const ModalFormula& r) { return make(Op::WeakOr, {}, &l, &r); }
ModalFormula ModalFormula::strong_and(const ModalFormula& l, const ModalFormula& r) {
  return make(Op::StrongAnd, {}, &l, &r);
}
ModalFormula ModalFormula::imp(const ModalFormula& l, const ModalFormula& r) { return make(Op::Imp, {}, &l, &r); }
ModalFormula ModalFormula::box(const ModalFormula& sub) { return make(Op::Box, {}, &sub, nullptr); }
ModalFormula ModalFormula::diamond(const ModalFormula& sub) { return make(Op::Diamond, {}, &sub, nullptr); }
ModalFormula ModalFormula::neg(const ModalFormula& sub) { return imp(sub, bot()); }
ModalFormula ModalFormula::iff(const ModalFormula& l, const ModalFormula& r) {
  return strong_and(imp(l, r), imp(r, l));
}

std::string ModalFormula::print(PrintStyle style) const {
  if (style == PrintStyle::Symbolic) return text();
  const ModalFormula* l = m_node->left.get();
  const ModalFormula* r = m_node->right.get();
  return render(op(), name(), l, r, style, [style](const ModalFormula& c) { return c.print(style); });
}

ModalFormula parse(std::string_view text) {
  ModalBuilder b;
  return Parser<ModalBuilder>(text, b).parse_all();
}

std::size_t modal_depth(const ModalFormula& f) { return f.depth(); }

std::size_t modal_depth(const FormulaSet& fs) {
  std::size_t d = 0;
  for (const auto& f : fs) d = std::max(d, f.depth());
  return d;
}

FormulaSet psfm(const ModalFormula& f) {
  FormulaSet out;
  collect_psfm(f, out);
  return out;
}

FormulaSet sfm(const ModalFormula& f) {
  FormulaSet out;
  collect_sfm(f, out);
  return out;
}

std::set<std::string> variables(const ModalFormula& f) {
  std::set<std::string> out;
  for (const auto& g : sfm(f))
    if (g.is_var()) out.insert(g.name());
  return out;
}

std::vector<FormulaSet> levels(const FormulaSet& upsilon) {
  std::vector<FormulaSet> out(1);
  for (const auto& f : upsilon) out[0].merge(psfm(f));
  std::size_t md = modal_depth(upsilon);
  for (std::size_t i = 0; i < md; ++i) {
    FormulaSet next;
    for (const auto& f : out[i])
      if (f.is_modal()) next.merge(psfm(f.body()));
    out.push_back(std::move(next));
  }
  return out;
}

FormulaSet gens(const FormulaSet& level) {
  FormulaSet out;
  for (const auto& f : level)
    if (f.is_var() || f.is_modal()) out.insert(f);
  return out;
}

}  // namespace prodmod
