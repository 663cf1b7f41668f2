#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prodmod/formula.hpp"
#include "prodmod/rational.hpp"

namespace prodmod {

// Finite Kripke model over the standard product algebra with exact values.
// Absent relation and valuation entries are 0.
class KripkeModel {
 public:
  KripkeModel() = default;
  explicit KripkeModel(bool crisp) : m_crisp(crisp) {}

  bool crisp() const { return m_crisp; }
  void set_crisp(bool c) { m_crisp = c; }

  std::size_t add_world(const std::string& name);
  std::size_t size() const { return m_worlds.size(); }
  const std::string& name(std::size_t w) const { return m_worlds[w]; }
  const std::vector<std::string>& worlds() const { return m_worlds; }
  // Throws UnknownWorld.
  std::size_t index(const std::string& name) const;
  bool has_world(const std::string& name) const { return m_index.count(name) > 0; }

  // Throws std::invalid_argument on values outside [0,1], or non-Boolean
  // relation values in a crisp model.
  void set_rel(std::size_t from, std::size_t to, const Rational& r);
  void set_val(std::size_t w, const std::string& p, const Rational& r);

  Rational rel(std::size_t from, std::size_t to) const;
  Rational val(std::size_t w, const std::string& p) const;
  // Worlds with positive relation value from w, in index order.
  const std::vector<std::size_t>& successors(std::size_t w) const { return m_succ[w]; }
  const std::map<std::pair<std::size_t, std::size_t>, Rational>& relation() const { return m_rel; }
  const std::map<std::pair<std::size_t, std::string>, Rational>& valuation() const { return m_val; }

  std::string print() const;

 private:
  bool m_crisp = true;
  std::vector<std::string> m_worlds;
  std::map<std::string, std::size_t> m_index;
  std::vector<std::vector<std::size_t>> m_succ;
  std::map<std::pair<std::size_t, std::size_t>, Rational> m_rel;
  std::map<std::pair<std::size_t, std::string>, Rational> m_val;
};

// Model file: `worlds: a b c`, `crisp: true|false`, `rel: a b = x/y`,
// `val: a p = x/y`, `#` comments. Throws std::invalid_argument with a line
// number, or UnknownWorld for a name missing from the worlds line.
KripkeModel parse_model(std::string_view text);
KripkeModel load_model(const std::string& path);

// Product algebra on [0,1] with exact rationals.
Rational prod_imp(const Rational& a, const Rational& b);

Rational eval(const KripkeModel& m, std::size_t w, const ModalFormula& f);
Rational eval(const KripkeModel& m, const std::string& w, const ModalFormula& f);
// Values of f at every world.
std::vector<Rational> eval_all(const KripkeModel& m, const ModalFormula& f);

// True unless (m, w) makes every premise 1 and the conclusion less than 1.
bool check_local(const KripkeModel& m, std::size_t w, const std::vector<ModalFormula>& gamma,
                 const ModalFormula& phi);

// Crisp models: successors attaining the value. Valued models: all worlds
// attaining it through R -> e (box) or R & e (diamond).
std::set<std::string> witnesses(const KripkeModel& m, std::size_t w, const ModalFormula& f);

// Tree unraveling of the positive-R generated submodel of w, cut at depth.
// The root is world 0 and copies are named by dot-joined paths.
KripkeModel unravel_crop(const KripkeModel& m, std::size_t w, std::size_t depth);

struct Falsifier {
  KripkeModel model;
  std::size_t world = 0;
};

struct FalsifyOptions {
  std::uint64_t budget = 10'000;
  bool crisp = true;
  std::size_t max_worlds = 4;
  unsigned max_denominator = 4;
  std::uint64_t seed = 1;
};

// Random search over small models with grid values.
std::optional<Falsifier> random_falsify(const std::vector<ModalFormula>& gamma, const ModalFormula& phi,
                                        const FalsifyOptions& opts = {});

// Exhaustive search over crisp models with {0,1} valuations and up to max_worlds worlds.
std::optional<Falsifier> classical_falsify(const std::vector<ModalFormula>& gamma, const ModalFormula& phi,
                                           std::size_t max_worlds);

// Exhaustive search over models with up to max_worlds worlds whose values
// lie on the grid of fractions with denominator at most max_denominator.
// Valued relations range over the same grid. Throws BudgetExceeded when
// more than `limit` models would be visited.
std::optional<Falsifier> grid_falsify(const std::vector<ModalFormula>& gamma, const ModalFormula& phi,
                                      std::size_t max_worlds, unsigned max_denominator, bool crisp,
                                      std::uint64_t limit = 50'000'000);

// Fractions a/b in [0,1] with b <= max_denominator, ascending.
std::vector<Rational> value_grid(unsigned max_denominator);

}  // namespace prodmod
