#pragma once

#include <string>
#include <vector>

#include "prodmod/log_value.hpp"
#include "prodmod/prop_formula.hpp"
#include "prodmod/reduction.hpp"
#include "prodmod/smt.hpp"

namespace prodmod {

enum class PropVerdict { Entailed, Counter, Unknown };

struct PropDecision {
  PropVerdict verdict = PropVerdict::Unknown;
  Valuation counter;  // set for Counter, total on the input variables
  smt::Stats stats;
  std::string reason;  // set for Unknown
};

// Consequence in product logic with delta over the standard algebra: is
// every valuation sending all of gamma to 1 also sending phi to 1?
PropDecision decide_pd(const std::vector<PropFormula>& gamma, const PropFormula& phi,
                       const smt::Limits& limits = {});

// Same engine; throws DeltaInInput if delta occurs.
PropDecision decide_p(const std::vector<PropFormula>& gamma, const PropFormula& phi,
                      const smt::Limits& limits = {});

bool verify_certificate(const Valuation& v, const std::vector<PropFormula>& premises, const PropFormula& goal);
bool verify_certificate(const Valuation& v, const ReductionInstance& instance,
                        const std::vector<PropFormula>& gamma0, const PropFormula& goal);

std::string export_smtlib(const std::vector<PropFormula>& gamma, const PropFormula& phi);

}  // namespace prodmod
