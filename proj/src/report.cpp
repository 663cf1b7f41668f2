#include "prodmod/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "prodmod/errors.hpp"

namespace prodmod {

using nlohmann::json;

json sequence_json(const Sequence& s) {
  json out = json::array();
  for (const auto& e : s.entries()) out.push_back({{"formula", e.formula.text()}, {"primed", e.primed}});
  return out;
}

Sequence sequence_from_json(const json& j) {
  std::vector<SeqEntry> entries;
  for (const auto& e : j) entries.push_back({parse(e.at("formula").get<std::string>()), e.at("primed").get<bool>()});
  return Sequence(std::move(entries));
}

namespace {

const char* kind_name(ExtKind k) {
  switch (k) {
    case ExtKind::Base: return "base";
    case ExtKind::Modal: return "modal";
    case ExtKind::Alpha: return "alpha";
    case ExtKind::Rel: return "rel";
  }
  return "?";
}

// 2^-x to six significant digits, for reading only.
std::string approx(const LogValue& v) {
  if (v.is_zero()) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::exp2(-v.log().get_d()));
  return buf;
}

json value_json(const LogValue& v) { return {{"log", v.print()}, {"value", v.display()}, {"approx", approx(v)}}; }

json lemma_json(const TruthLemmaReport& r) {
  json un = json::array();
  for (const auto& u : r.unwitnessed) {
    json vals = json::array();
    for (const auto& v : u.values) vals.push_back(v.print());
    un.push_back({{"world", u.world}, {"formula", u.formula}, {"values", vals}, {"ratio", u.ratio.print()}});
  }
  return {{"K", r.K},         {"ok", r.ok()},           {"root_ok", r.root_ok}, {"worlds", r.worlds},
          {"clauses", r.clauses}, {"violations", r.violations}, {"unwitnessed", un}};
}

json countermodel_json(const SymbolicCountermodel& cm, unsigned K) {
  json worlds = json::array();
  auto labels = cm.worlds(K);
  std::map<WorldLabel, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const WorldLabel& w = labels[i];
    json atoms = json::object();
    for (const auto& g : gens(cm.level(w.depth())))
      if (g.is_var()) atoms[g.name()] = value_json(cm.atom(w, g.name()));
    json entry = {{"id", i},
                  {"label", w.print()},
                  {"parameters", w.parameters()},
                  {"tilde", w.tilde().print()},
                  {"underline", w.underline().print()},
                  {"atoms", atoms}};
    if (cm.pipeline() == Pipeline::Valued) entry["exponent"] = SymbolicCountermodel::exponent(w);
    if (i > 0) {
      entry["parent"] = index.at(w.parent());
      entry["edge"] = value_json(cm.edge(w));
    }
    worlds.push_back(entry);
  }
  return {{"pipeline", cm.pipeline() == Pipeline::Crisp ? "crisp" : "valued"},
          {"finite", cm.finite()},
          {"truncation_k", K},
          {"worlds", worlds}};
}

}  // namespace

json valuation_json(const Valuation& v) {
  json out = json::array();
  for (const auto& [var, value] : v) {
    json e = {{"key", var.key()}, {"kind", kind_name(var.kind())}, {"seq", sequence_json(var.seq())}, {"value", value.print()}};
    if (var.kind() != ExtKind::Rel) e["formula"] = var.formula().text();
    if (var.kind() == ExtKind::Rel) e["child"] = sequence_json(var.child());
    out.push_back(e);
  }
  return out;
}

Valuation valuation_from_json(const json& j) {
  Valuation v;
  for (const auto& e : j) {
    std::string kind = e.at("kind").get<std::string>();
    Sequence s = sequence_from_json(e.at("seq"));
    LogValue value = LogValue::parse(e.at("value").get<std::string>());
    if (kind == "rel") {
      v.emplace(ExtVar::rel(s, sequence_from_json(e.at("child"))), value);
      continue;
    }
    ModalFormula f = parse(e.at("formula").get<std::string>());
    if (kind == "base")
      v.emplace(ExtVar::base(f.name(), s), value);
    else if (kind == "modal")
      v.emplace(ExtVar::modal(f, s), value);
    else if (kind == "alpha")
      v.emplace(ExtVar::alpha(s, f), value);
    else
      throw std::invalid_argument("unknown variable kind " + kind);
  }
  return v;
}

json decision_json(const Problem& problem, const Decision& d, bool with_trace) {
  json premises = json::array();
  for (const auto& g : problem.premises) premises.push_back(g.text());
  json out = {{"schema", kReportSchema},
              {"verdict", verdict_name(d.verdict)},
              {"logic", logic_name(problem.logic)},
              {"premises", premises},
              {"conclusion", problem.conclusion.text()},
              {"omegas_total", d.omegas_total},
              {"omegas_checked", d.omegas_checked},
              {"timings", {{"total_ms", d.millis}}}};
  if (d.verdict == Verdict::Unknown) out["reason"] = d.reason;
  if (d.verdict == Verdict::NotEntailed) {
    json omega = json::array();
    json omega_text = json::array();
    for (const auto& s : d.omega->members) {
      omega.push_back(sequence_json(s));
      omega_text.push_back(s.print());
    }
    out["certificate"] = {{"omega", omega}, {"omega_text", omega_text}, {"valuation", valuation_json(d.valuation)}};
    unsigned K = d.lemma.empty() ? 1 : d.lemma.back().K;
    out["countermodel"] = countermodel_json(*d.countermodel, K);
    json checks = json::array();
    for (const auto& r : d.lemma) checks.push_back(lemma_json(r));
    out["countermodel"]["verification"] = checks;
  }
  if (with_trace) {
    json trace = json::array();
    for (const auto& t : d.trace) {
      const char* v = t.verdict == PropVerdict::Entailed ? "entailed" : t.verdict == PropVerdict::Counter ? "counter" : "unknown";
      trace.push_back({{"index", t.index},
                       {"omega", t.omega},
                       {"omega_size", t.omega_size},
                       {"premises", t.premises},
                       {"variables", t.variables},
                       {"verdict", v},
                       {"decisions", t.stats.decisions},
                       {"conflicts", t.stats.conflicts},
                       {"theory_conflicts", t.stats.theory_conflicts},
                       {"ms", t.millis}});
    }
    out["trace"] = trace;
  }
  return out;
}

namespace {

RecheckResult recheck(const json& report) {
  if (report.at("schema").get<int>() != kReportSchema) throw std::invalid_argument("unsupported report schema");
  if (report.at("verdict").get<std::string>() != verdict_name(Verdict::NotEntailed))
    throw std::invalid_argument("only not_entailed reports carry a countermodel");
  Problem p;
  p.logic = report.at("logic").get<std::string>() == "valued" ? Logic::Valued : Logic::Crisp;
  for (const auto& g : report.at("premises")) p.premises.push_back(parse(g.get<std::string>()));
  p.conclusion = parse(report.at("conclusion").get<std::string>());
  const json& cert = report.at("certificate");
  std::vector<Sequence> members;
  for (const auto& s : cert.at("omega")) members.push_back(sequence_from_json(s));
  OmegaSet omega =
      OmegaSet::from(std::move(members), p.logic == Logic::Crisp ? OmegaKind::Coherent : OmegaKind::Simple);
  Valuation h = valuation_from_json(cert.at("valuation"));
  SymbolicCountermodel cm = p.logic == Logic::Crisp
                                ? build_crisp_countermodel(h, omega, p.premises, p.conclusion)
                                : build_valued_countermodel(h, omega, p.premises, p.conclusion);
  RecheckResult r;
  for (const auto& check : report.at("countermodel").at("verification")) {
    unsigned K = check.at("K").get<unsigned>();
    r.ks.push_back(K);
    r.recorded.push_back(check.at("ok").get<bool>());
    r.recomputed.push_back(verify_truth_lemma(cm, K, p.premises, p.conclusion).ok());
  }
  return r;
}

}  // namespace

RecheckResult recheck_report(const json& report) {
  try {
    return recheck(report);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace prodmod
