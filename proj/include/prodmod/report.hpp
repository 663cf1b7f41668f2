#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "prodmod/decision.hpp"

namespace prodmod {

inline constexpr int kReportSchema = 1;

nlohmann::json sequence_json(const Sequence& s);
Sequence sequence_from_json(const nlohmann::json& j);
nlohmann::json valuation_json(const Valuation& v);
Valuation valuation_from_json(const nlohmann::json& j);

// Full decision report: verdict, Omega, certificate, countermodel and timings.
nlohmann::json decision_json(const Problem& problem, const Decision& d, bool with_trace);

struct RecheckResult {
  std::vector<unsigned> ks;
  std::vector<bool> recorded;  // verification status stored in the report
  std::vector<bool> recomputed;
};

// Rebuilds the countermodel of a NotEntailed report from its problem,
// Omega and valuation, re-verifies the certificate and the truth lemma at
// the recorded truncation bounds. Throws CertificateRejected,
// IncoherentOmega or NotSimpleOmega when the stored certificate does not fit
// the stored problem, and std::invalid_argument on malformed reports.
RecheckResult recheck_report(const nlohmann::json& report);

}  // namespace prodmod
