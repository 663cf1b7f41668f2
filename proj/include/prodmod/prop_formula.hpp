#pragma once

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "prodmod/formula.hpp"
#include "prodmod/sequence.hpp"

namespace prodmod {

enum class ExtKind { Base, Modal, Alpha, Rel };

// Extended propositional variable of the target language.
class ExtVar {
 public:
  static ExtVar base(const std::string& p, const Sequence& s);
  static ExtVar modal(const ModalFormula& f, const Sequence& s);
  static ExtVar alpha(const Sequence& s, const ModalFormula& generator);
  static ExtVar rel(const Sequence& parent, const Sequence& child);

  ExtKind kind() const { return m_kind; }
  // Variable name for Base; modal formula for Modal; generator for Alpha.
  const ModalFormula& formula() const { return m_formula; }
  const Sequence& seq() const { return m_seq; }
  const Sequence& child() const { return m_child; }
  const std::string& key() const { return m_key; }

  friend bool operator==(const ExtVar& a, const ExtVar& b) { return a.m_key == b.m_key; }
  friend std::strong_ordering operator<=>(const ExtVar& a, const ExtVar& b) { return a.m_key <=> b.m_key; }

 private:
  ExtVar(ExtKind kind, ModalFormula f, Sequence s, Sequence c);

  ExtKind m_kind;
  ModalFormula m_formula;
  Sequence m_seq;
  Sequence m_child;
  std::string m_key;
};

enum class POp { Var, Top, Bot, WeakAnd, WeakOr, StrongAnd, Imp, Delta };

class PropFormula {
 public:
  static PropFormula var(const ExtVar& v);
  static PropFormula top();
  static PropFormula bot();
  static PropFormula weak_and(const PropFormula& l, const PropFormula& r);
  static PropFormula weak_or(const PropFormula& l, const PropFormula& r);
  static PropFormula strong_and(const PropFormula& l, const PropFormula& r);
  static PropFormula imp(const PropFormula& l, const PropFormula& r);
  static PropFormula delta(const PropFormula& sub);
  static PropFormula neg(const PropFormula& sub);
  static PropFormula iff(const PropFormula& l, const PropFormula& r);
  // Empty conjunction is top, empty disjunction is bot; singletons are returned as is.
  static PropFormula conj(const std::vector<PropFormula>& fs);
  static PropFormula disj(const std::vector<PropFormula>& fs);

  POp op() const { return m_node->op; }
  const ExtVar& ext() const { return *m_node->var; }
  const PropFormula& left() const { return *m_node->left; }
  const PropFormula& right() const { return *m_node->right; }
  const PropFormula& body() const { return *m_node->left; }
  bool is_binary() const;

  const std::string& text() const { return m_node->text; }
  const void* identity() const { return m_node.get(); }
  bool contains_delta() const { return m_node->has_delta; }

  friend bool operator==(const PropFormula& a, const PropFormula& b) {
    return a.m_node == b.m_node || a.text() == b.text();
  }
  friend std::strong_ordering operator<=>(const PropFormula& a, const PropFormula& b) {
    return a.text() <=> b.text();
  }

 private:
  struct Node {
    POp op;
    std::shared_ptr<const ExtVar> var;
    std::shared_ptr<const PropFormula> left;
    std::shared_ptr<const PropFormula> right;
    std::string text;
    bool has_delta = false;
  };
  explicit PropFormula(std::shared_ptr<const Node> n) : m_node(std::move(n)) {}
  static PropFormula make(POp op, const ExtVar* v, const PropFormula* l, const PropFormula* r);

  std::shared_ptr<const Node> m_node;
};

// Propositional surface syntax: identifiers become BaseVar(name, <0>),
// `!` is the delta connective and modalities are rejected.
PropFormula parse_prop(std::string_view text);

std::set<ExtVar> ext_variables(const PropFormula& f);

PropFormula subscript(const ModalFormula& f, const Sequence& s);
PropFormula alpha_subscript(const ModalFormula& f, const Sequence& s);

}  // namespace prodmod
