#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prodmod/formula.hpp"
#include "prodmod/kripke.hpp"
#include "prodmod/log_value.hpp"
#include "prodmod/omega.hpp"
#include "prodmod/reduction.hpp"
#include "prodmod/sequence.hpp"

namespace prodmod {

// All subformulas of the given formulas, each once.
std::vector<PropFormula> closure(const std::vector<PropFormula>& fs);

// g is an order-preserving deformation of f over theta: g keeps the order
// of f on theta and has the same zero set there.
bool is_opd(const Valuation& f, const Valuation& g, const std::vector<PropFormula>& theta);

// Pointwise product; defined on the common domain.
Valuation product_valuation(const Valuation& f, const Valuation& g);
Valuation power_valuation(const Valuation& f, const Rational& k);

// Symbolic model read off a counter-valuation h and Omega. Worlds are
// instances of prods(sigma); the primed children of a world carry a
// parameter k, and the model is infinite as soon as Omega has a prime.
class SymbolicCountermodel {
 public:
  SymbolicCountermodel(Pipeline pipeline, FormulaSet upsilon, OmegaSet omega, Valuation h);

  Pipeline pipeline() const { return m_pipeline; }
  const FormulaSet& upsilon() const { return m_upsilon; }
  const Levels& levels() const { return m_levels; }
  const OmegaSet& omega() const { return m_omega; }
  const Valuation& valuation() const { return m_h; }
  bool finite() const;

  // Formulas of level d, or the empty set past the last level.
  const FormulaSet& level(std::size_t d) const;

  // Exponent of a world in the valued model: Theta + 1.
  static unsigned exponent(const WorldLabel& w) { return w.theta() + 1; }

  // Closed form of the truth lemma: the value the model must give phi at w.
  LogValue closed_form(const WorldLabel& w, const ModalFormula& phi) const;
  LogValue atom(const WorldLabel& w, const std::string& p) const;
  // Relation value from the parent of w to w.
  LogValue edge(const WorldLabel& w) const;

  // Worlds of the truncation keeping parameters up to k_max, parents first.
  std::vector<WorldLabel> worlds(unsigned k_max) const;
  std::vector<WorldLabel> children(const WorldLabel& w, unsigned k_max) const;
  unsigned k_min() const { return m_pipeline == Pipeline::Crisp ? 1 : 0; }

 private:
  LogValue h(const PropFormula& f) const;

  Pipeline m_pipeline;
  FormulaSet m_upsilon;
  Levels m_levels;
  OmegaSet m_omega;
  Valuation m_h;
};

// Throws CertificateRejected unless h validates the instance built from Omega.
SymbolicCountermodel build_crisp_countermodel(const Valuation& h, const OmegaSet& omega,
                                              const std::vector<ModalFormula>& gamma, const ModalFormula& phi);
SymbolicCountermodel build_valued_countermodel(const Valuation& h, const OmegaSet& omega,
                                               const std::vector<ModalFormula>& gamma, const ModalFormula& phi);

struct Truncation {
  KripkeModel model;              // exact values 2^(-scale * x)
  std::vector<WorldLabel> labels;  // labels[i] is world i; world 0 is the root
  Rational scale;
};

// Finite part of the model with parameters up to K, converted to exact
// rationals through x -> 2^(-scale * x), scale being the least common
// multiple of the denominators of all log coordinates involved. This map is
// an embedding of the product chain, so witnessed values are preserved.
Truncation truncate(const SymbolicCountermodel& cm, unsigned K);

struct UnwitnessedEntry {
  std::string world;
  std::string formula;
  std::vector<LogValue> values;  // k = k_min .. K
  LogValue ratio;                 // common ratio of consecutive values
};

struct TruthLemmaReport {
  unsigned K = 0;
  std::size_t worlds = 0;
  std::size_t clauses = 0;
  std::vector<UnwitnessedEntry> unwitnessed;
  std::vector<std::string> violations;
  bool root_ok = false;

  bool ok() const { return violations.empty() && root_ok; }
};

// Evaluates Upsilon bottom-up on the K-truncation from the atom and edge
// values alone, replacing each infinite family of parameterized children by
// its limit once its values are certified geometric, and compares every
// result with the closed form. Families need two points, so at least
// k_min .. max(K, k_min + 1) is materialized.
TruthLemmaReport verify_truth_lemma(const SymbolicCountermodel& cm, unsigned K,
                                    const std::vector<ModalFormula>& gamma, const ModalFormula& phi);

}  // namespace prodmod
