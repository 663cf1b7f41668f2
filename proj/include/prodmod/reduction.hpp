#pragma once

#include <string>
#include <vector>

#include "prodmod/formula.hpp"
#include "prodmod/omega.hpp"
#include "prodmod/prop_formula.hpp"

namespace prodmod {

enum class Pipeline { Crisp, Valued };

enum class Family {
  WDiamond,
  AlphaValsDiamond,
  WBox,
  AlphaValsBox,
  UWBox,
  TwoV,
  Neg,
  Imp,
  WV,
};

const char* family_name(Family f);

struct TaggedFormula {
  Family family;
  PropFormula formula;
};

struct ReductionInstance {
  FormulaSet upsilon;
  Levels levels;
  OmegaSet omega;
  std::vector<ExtVar> variables;  // sorted
  std::vector<TaggedFormula> premises;
  PropFormula side_disjunct = PropFormula::bot();
  Pipeline pipeline = Pipeline::Crisp;

  std::vector<PropFormula> premise_formulas() const;
  // One formula per line, prefixed by its family.
  std::string listing() const;
};

std::vector<ExtVar> build_variables(const Levels& lv, const OmegaSet& omega, Pipeline pipeline);

ReductionInstance build_mod_crisp(const FormulaSet& upsilon, const OmegaSet& omega);
ReductionInstance build_mod_valued(const FormulaSet& upsilon, const OmegaSet& omega);

}  // namespace prodmod
