#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace prodmod {

enum class Op { Var, Top, Bot, WeakAnd, WeakOr, StrongAnd, Imp, Box, Diamond };

enum class PrintStyle { Symbolic, Words };

// Immutable modal formula. Equality and ordering go through the canonical
// printed text, which is computed once per node.
class ModalFormula {
 public:
  static ModalFormula var(std::string name);
  static ModalFormula top();
  static ModalFormula bot();
  static ModalFormula weak_and(const ModalFormula& l, const ModalFormula& r);
  static ModalFormula weak_or(const ModalFormula& l, const ModalFormula& r);
  static ModalFormula strong_and(const ModalFormula& l, const ModalFormula& r);
  static ModalFormula imp(const ModalFormula& l, const ModalFormula& r);
  static ModalFormula box(const ModalFormula& sub);
  static ModalFormula diamond(const ModalFormula& sub);
  static ModalFormula neg(const ModalFormula& sub);
  static ModalFormula iff(const ModalFormula& l, const ModalFormula& r);

  Op op() const { return m_node->op; }
  const std::string& name() const { return m_node->name; }
  const ModalFormula& left() const { return *m_node->left; }
  const ModalFormula& right() const { return *m_node->right; }
  const ModalFormula& body() const { return *m_node->left; }

  bool is_var() const { return op() == Op::Var; }
  bool is_constant() const { return op() == Op::Top || op() == Op::Bot; }
  bool is_modal() const { return op() == Op::Box || op() == Op::Diamond; }
  bool is_binary() const;

  const std::string& text() const { return m_node->text; }
  std::string print(PrintStyle style) const;
  std::size_t depth() const { return m_node->depth; }
  std::size_t size() const { return m_node->size; }

  friend bool operator==(const ModalFormula& a, const ModalFormula& b) {
    return a.m_node == b.m_node || a.text() == b.text();
  }
  friend std::strong_ordering operator<=>(const ModalFormula& a, const ModalFormula& b) {
    return a.text() <=> b.text();
  }

 private:
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<const ModalFormula> left;
    std::shared_ptr<const ModalFormula> right;
    std::string text;
    std::size_t depth = 0;
    std::size_t size = 1;
  };
  explicit ModalFormula(std::shared_ptr<const Node> node) : m_node(std::move(node)) {}
  static ModalFormula make(Op op, std::string name, const ModalFormula* l, const ModalFormula* r);

  std::shared_ptr<const Node> m_node;
};

using FormulaSet = std::set<ModalFormula>;

ModalFormula parse(std::string_view text);

std::size_t modal_depth(const ModalFormula& f);
std::size_t modal_depth(const FormulaSet& fs);

FormulaSet psfm(const ModalFormula& f);
FormulaSet sfm(const ModalFormula& f);

// Variables occurring anywhere in f.
std::set<std::string> variables(const ModalFormula& f);

// [Y_0, ..., Y_md] with Y_0 = PSFm(Y) and Y_{i+1} the PSFm of the bodies of
// the modal members of Y_i.
std::vector<FormulaSet> levels(const FormulaSet& upsilon);

// Bare variable members plus modal-headed members.
FormulaSet gens(const FormulaSet& level);

}  // namespace prodmod
