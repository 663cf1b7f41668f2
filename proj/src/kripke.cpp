#include "prodmod/kripke.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "prodmod/errors.hpp"

namespace prodmod {

std::size_t KripkeModel::add_world(const std::string& name) {
  if (m_index.count(name)) throw std::invalid_argument("duplicate world " + name);
  m_index.emplace(name, m_worlds.size());
  m_worlds.push_back(name);
  m_succ.emplace_back();
  return m_worlds.size() - 1;
}

std::size_t KripkeModel::index(const std::string& name) const {
  auto it = m_index.find(name);
  if (it == m_index.end()) throw UnknownWorld("unknown world " + name);
  return it->second;
}

static void check_unit(const Rational& r) {
  if (r < 0 || r > 1) throw std::invalid_argument("value " + to_fraction(r) + " outside [0,1]");
}

void KripkeModel::set_rel(std::size_t from, std::size_t to, const Rational& r) {
  check_unit(r);
  if (m_crisp && r != 0 && r != 1) throw std::invalid_argument("crisp model with relation value " + to_fraction(r));
  auto& succ = m_succ[from];
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  bool present = it != succ.end() && *it == to;
  if (r == 0) {
    m_rel.erase({from, to});
    if (present) succ.erase(it);
    return;
  }
  m_rel[{from, to}] = r;
  if (!present) succ.insert(it, to);
}

void KripkeModel::set_val(std::size_t w, const std::string& p, const Rational& r) {
  check_unit(r);
  if (r == 0)
    m_val.erase({w, p});
  else
    m_val[{w, p}] = r;
}

Rational KripkeModel::rel(std::size_t from, std::size_t to) const {
  auto it = m_rel.find({from, to});
  return it == m_rel.end() ? Rational(0) : it->second;
}

Rational KripkeModel::val(std::size_t w, const std::string& p) const {
  auto it = m_val.find({w, p});
  return it == m_val.end() ? Rational(0) : it->second;
}

std::string KripkeModel::print() const {
  std::ostringstream out;
  out << "worlds:";
  for (const auto& w : m_worlds) out << ' ' << w;
  out << "\ncrisp: " << (m_crisp ? "true" : "false") << '\n';
  for (const auto& [k, r] : m_rel) out << "rel: " << m_worlds[k.first] << ' ' << m_worlds[k.second] << " = " << to_fraction(r) << '\n';
  for (const auto& [k, r] : m_val) out << "val: " << m_worlds[k.first] << ' ' << k.second << " = " << to_fraction(r) << '\n';
  return out.str();
}

KripkeModel parse_model(std::string_view text) {
  KripkeModel m;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_worlds = false;
  std::vector<std::tuple<int, std::string, std::string, std::string, std::string>> entries;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("model line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "worlds:") {
      std::string w;
      while (ls >> w) m.add_world(w);
      have_worlds = true;
    } else if (key == "crisp:") {
      std::string v;
      ls >> v;
      if (v != "true" && v != "false") fail("expected true or false");
      m.set_crisp(v == "true");
    } else if (key == "rel:" || key == "val:") {
      std::string a, b, eq, q, extra;
      if (!(ls >> a >> b >> eq >> q) || eq != "=" || (ls >> extra)) fail("expected `" + key + " x y = a/b`");
      entries.emplace_back(lineno, key, a, b, q);
    } else {
      fail("unknown key " + key);
    }
  }
  if (!have_worlds) throw std::invalid_argument("model: missing worlds line");
  for (const auto& [no, key, a, b, q] : entries) {
    lineno = no;
    Rational r;
    try {
      r = parse_rational(q);
      if (key == "rel:")
        m.set_rel(m.index(a), m.index(b), r);
      else
        m.set_val(m.index(a), b, r);
    } catch (const UnknownWorld& e) {
      throw UnknownWorld("model line " + std::to_string(no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  return m;
}

KripkeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

Rational prod_imp(const Rational& a, const Rational& b) {
  if (a <= b) return 1;
  return b / a;
}

namespace {

// Subformula DAG of a set of formulas, children before parents.
struct Compiled {
  struct Node {
    Op op;
    int l = -1, r = -1;
    std::string name;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> ids;

  int add(const ModalFormula& f) {
    if (auto it = ids.find(f.text()); it != ids.end()) return it->second;
    Node n{f.op(), -1, -1, f.is_var() ? f.name() : std::string()};
    if (f.is_modal()) n.l = add(f.body());
    if (f.is_binary()) {
      n.l = add(f.left());
      n.r = add(f.right());
    }
    nodes.push_back(n);
    int id = static_cast<int>(nodes.size()) - 1;
    ids.emplace(f.text(), id);
    return id;
  }

  std::vector<std::vector<Rational>> run(const KripkeModel& m) const {
    std::size_t W = m.size();
    std::vector<std::vector<Rational>> v(nodes.size(), std::vector<Rational>(W));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      for (std::size_t w = 0; w < W; ++w) {
        Rational& out = v[i][w];
        switch (n.op) {
          case Op::Var: out = m.val(w, n.name); break;
          case Op::Top: out = 1; break;
          case Op::Bot: out = 0; break;
          case Op::StrongAnd: out = v[n.l][w] * v[n.r][w]; break;
          case Op::WeakAnd: out = std::min(v[n.l][w], v[n.r][w]); break;
          case Op::WeakOr: out = std::max(v[n.l][w], v[n.r][w]); break;
          case Op::Imp: out = prod_imp(v[n.l][w], v[n.r][w]); break;
          case Op::Box:
            out = 1;
            for (auto u : m.successors(w)) out = std::min(out, prod_imp(m.rel(w, u), v[n.l][u]));
            break;
          case Op::Diamond:
            out = 0;
            for (auto u : m.successors(w)) out = std::max(out, Rational(m.rel(w, u) * v[n.l][u]));
            break;
        }
      }
    }
    return v;
  }
};

// Premise and conclusion node ids of a compiled problem.
struct CompiledProblem {
  Compiled c;
  std::vector<int> premises;
  int goal;

  CompiledProblem(const std::vector<ModalFormula>& gamma, const ModalFormula& phi) {
    for (const auto& g : gamma) premises.push_back(c.add(g));
    goal = c.add(phi);
  }

  std::vector<std::string> vars() const {
    std::set<std::string> out;
    for (const auto& n : c.nodes)
      if (n.op == Op::Var) out.insert(n.name);
    return {out.begin(), out.end()};
  }

  // Index of a falsifying world, or -1. With root_only, world 0 alone is tried.
  int falsified(const KripkeModel& m, bool root_only) const {
    auto v = c.run(m);
    std::size_t limit = root_only ? 1 : m.size();
    for (std::size_t w = 0; w < limit; ++w) {
      bool ok = v[goal][w] != 1;
      for (int p : premises) ok = ok && v[p][w] == 1;
      if (ok) return static_cast<int>(w);
    }
    return -1;
  }
};

std::string world_name(std::size_t i) { return "w" + std::to_string(i); }

}  // namespace

std::vector<Rational> eval_all(const KripkeModel& m, const ModalFormula& f) {
  Compiled c;
  int id = c.add(f);
  return c.run(m)[id];
}

Rational eval(const KripkeModel& m, std::size_t w, const ModalFormula& f) {
  if (w >= m.size()) throw UnknownWorld("unknown world index " + std::to_string(w));
  return eval_all(m, f)[w];
}

Rational eval(const KripkeModel& m, const std::string& w, const ModalFormula& f) { return eval(m, m.index(w), f); }

bool check_local(const KripkeModel& m, std::size_t w, const std::vector<ModalFormula>& gamma,
                 const ModalFormula& phi) {
  for (const auto& g : gamma)
    if (eval(m, w, g) != 1) return true;
  return eval(m, w, phi) == 1;
}

std::set<std::string> witnesses(const KripkeModel& m, std::size_t w, const ModalFormula& f) {
  if (!f.is_modal()) throw std::invalid_argument("witnesses of a non-modal formula " + f.text());
  Rational value = eval(m, w, f);
  auto body = eval_all(m, f.body());
  bool box = f.op() == Op::Box;
  std::set<std::string> out;
  if (m.crisp()) {
    for (auto u : m.successors(w))
      if (body[u] == value) out.insert(m.name(u));
    return out;
  }
  for (std::size_t u = 0; u < m.size(); ++u) {
    Rational r = m.rel(w, u);
    Rational x = box ? prod_imp(r, body[u]) : Rational(r * body[u]);
    if (x == value) out.insert(m.name(u));
  }
  return out;
}

KripkeModel unravel_crop(const KripkeModel& m, std::size_t w, std::size_t depth) {
  KripkeModel t(m.crisp());
  struct Item {
    std::size_t orig, copy, depth;
  };
  std::deque<Item> queue;
  auto copy_vals = [&](std::size_t orig, std::size_t copy) {
    for (const auto& [k, r] : m.valuation())
      if (k.first == orig) t.set_val(copy, k.second, r);
  };
  std::size_t root = t.add_world(m.name(w));
  copy_vals(w, root);
  queue.push_back({w, root, 0});
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    if (it.depth == depth) continue;
    for (auto u : m.successors(it.orig)) {
      std::size_t c = t.add_world(t.name(it.copy) + "." + m.name(u));
      t.set_rel(it.copy, c, m.rel(it.orig, u));
      copy_vals(u, c);
      queue.push_back({u, c, it.depth + 1});
    }
  }
  return t;
}

std::vector<Rational> value_grid(unsigned max_denominator) {
  std::set<Rational> out;
  for (unsigned b = 1; b <= std::max(1u, max_denominator); ++b)
    for (unsigned a = 0; a <= b; ++a) {
      Rational q(a, b);
      q.canonicalize();
      out.insert(q);
    }
  return {out.begin(), out.end()};
}

std::optional<Falsifier> random_falsify(const std::vector<ModalFormula>& gamma, const ModalFormula& phi,
                                        const FalsifyOptions& opts) {
  CompiledProblem cp(gamma, phi);
  auto vars = cp.vars();
  auto grid = value_grid(opts.max_denominator);
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick_size(1, std::max<std::size_t>(1, opts.max_worlds));
  std::uniform_int_distribution<std::size_t> pick_value(0, grid.size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (std::uint64_t attempt = 0; attempt < opts.budget; ++attempt) {
    KripkeModel m(opts.crisp);
    std::size_t n = pick_size(rng);
    for (std::size_t i = 0; i < n; ++i) m.add_world(world_name(i));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m.set_rel(a, b, opts.crisp ? Rational(coin(rng) ? 1 : 0) : grid[pick_value(rng)]);
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& p : vars) m.set_val(a, p, grid[pick_value(rng)]);
    if (int w = cp.falsified(m, false); w >= 0) return Falsifier{std::move(m), static_cast<std::size_t>(w)};
  }
  return std::nullopt;
}

std::optional<Falsifier> classical_falsify(const std::vector<ModalFormula>& gamma, const ModalFormula& phi,
                                           std::size_t max_worlds) {
  if (max_worlds > 5) throw std::invalid_argument("classical_falsify supports at most 5 worlds");
  CompiledProblem cp(gamma, phi);
  auto vars = cp.vars();
  const auto& nodes = cp.c.nodes;
  std::vector<std::uint32_t> mask(nodes.size());
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    std::uint32_t all = (1u << n) - 1;
    std::uint64_t rel_count = std::uint64_t{1} << (n * n);
    std::uint64_t val_count = std::uint64_t{1} << (n * vars.size());
    std::vector<std::uint32_t> succ(n), val(vars.size());
    for (std::uint64_t rbits = 0; rbits < rel_count; ++rbits) {
      for (std::size_t a = 0; a < n; ++a) succ[a] = static_cast<std::uint32_t>((rbits >> (a * n)) & all);
      for (std::uint64_t vbits = 0; vbits < val_count; ++vbits) {
        for (std::size_t i = 0; i < vars.size(); ++i) val[i] = static_cast<std::uint32_t>((vbits >> (i * n)) & all);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          const auto& nd = nodes[i];
          std::uint32_t out = 0;
          switch (nd.op) {
            case Op::Var:
              out = val[std::lower_bound(vars.begin(), vars.end(), nd.name) - vars.begin()];
              break;
            case Op::Top: out = all; break;
            case Op::Bot: out = 0; break;
            case Op::StrongAnd:
            case Op::WeakAnd: out = mask[nd.l] & mask[nd.r]; break;
            case Op::WeakOr: out = mask[nd.l] | mask[nd.r]; break;
            case Op::Imp: out = (~mask[nd.l] | mask[nd.r]) & all; break;
            case Op::Box:
              for (std::size_t a = 0; a < n; ++a)
                if ((succ[a] & ~mask[nd.l]) == 0) out |= 1u << a;
              break;
            case Op::Diamond:
              for (std::size_t a = 0; a < n; ++a)
                if (succ[a] & mask[nd.l]) out |= 1u << a;
              break;
          }
          mask[i] = out;
        }
        bool falsified = !(mask[cp.goal] & 1);
        for (int p : cp.premises) falsified = falsified && (mask[p] & 1);
        if (!falsified) continue;
        KripkeModel m(true);
        for (std::size_t a = 0; a < n; ++a) m.add_world(world_name(a));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (succ[a] >> b & 1) m.set_rel(a, b, 1);
        for (std::size_t i = 0; i < vars.size(); ++i)
          for (std::size_t a = 0; a < n; ++a)
            if (val[i] >> a & 1) m.set_val(a, vars[i], 1);
        return Falsifier{std::move(m), 0};
      }
    }
  }
  return std::nullopt;
}

std::optional<Falsifier> grid_falsify(const std::vector<ModalFormula>& gamma, const ModalFormula& phi,
                                      std::size_t max_worlds, unsigned max_denominator, bool crisp,
                                      std::uint64_t limit) {
  CompiledProblem cp(gamma, phi);
  auto vars = cp.vars();
  auto grid = value_grid(max_denominator);
  std::vector<Rational> rel_values = crisp ? std::vector<Rational>{0, 1} : grid;
  std::uint64_t visited = 0;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    std::size_t rel_slots = n * n, val_slots = n * vars.size();
    // Odometer over all slots: relation entries first, then valuation entries.
    std::vector<std::size_t> digit(rel_slots + val_slots, 0);
    std::vector<std::size_t> base(digit.size());
    for (std::size_t i = 0; i < digit.size(); ++i) base[i] = i < rel_slots ? rel_values.size() : grid.size();
    KripkeModel m(crisp);
    for (std::size_t a = 0; a < n; ++a) m.add_world(world_name(a));
    while (true) {
      if (++visited > limit) throw BudgetExceeded("grid search exceeded " + std::to_string(limit) + " models");
      for (std::size_t i = 0; i < rel_slots; ++i) m.set_rel(i / n, i % n, rel_values[digit[i]]);
      for (std::size_t i = 0; i < val_slots; ++i) m.set_val(i / vars.size(), vars[i % vars.size()], grid[digit[rel_slots + i]]);
      if (cp.falsified(m, true) == 0) return Falsifier{m, 0};
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == base[i]) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  return std::nullopt;
}

}  // namespace prodmod
