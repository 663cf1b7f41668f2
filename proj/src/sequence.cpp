#include "prodmod/sequence.hpp"

#include <stdexcept>

namespace prodmod {

Sequence Sequence::child(const ModalFormula& f, bool primed) const {
  std::vector<SeqEntry> e = m_entries;
  e.push_back({f, primed});
  return Sequence(std::move(e));
}

Sequence Sequence::parent() const {
  if (is_root()) throw std::logic_error("the root sequence has no parent");
  return Sequence(std::vector<SeqEntry>(m_entries.begin(), m_entries.end() - 1));
}

std::size_t Sequence::prime_count() const {
  std::size_t n = 0;
  for (const auto& e : m_entries) n += e.primed ? 1 : 0;
  return n;
}

Sequence Sequence::sigma_minus() const {
  std::vector<SeqEntry> e = m_entries;
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (it->primed) {
      it->primed = false;
      break;
    }
  }
  return Sequence(std::move(e));
}

Sequence Sequence::underline() const {
  std::vector<SeqEntry> e = m_entries;
  for (auto& x : e) x.primed = false;
  return Sequence(std::move(e));
}

std::string Sequence::print(PrintStyle style) const {
  std::string out = "<0";
  for (const auto& e : m_entries) {
    out += ", " + e.formula.print(style);
    if (e.primed) out += "'";
  }
  return out + ">";
}

std::vector<Sequence> init(const Sequence& s) {
  std::vector<Sequence> out;
  Sequence cur = s;
  while (!cur.prime_free()) {
    out.push_back(cur);
    cur = cur.sigma_minus();
  }
  return out;
}

WorldLabel WorldLabel::child(const WorldEntry& e) const {
  std::vector<WorldEntry> v = m_entries;
  v.push_back(e);
  return WorldLabel(std::move(v));
}

WorldLabel WorldLabel::parent() const {
  if (m_entries.empty()) throw std::logic_error("the root world has no parent");
  return WorldLabel(std::vector<WorldEntry>(m_entries.begin(), m_entries.end() - 1));
}

Sequence WorldLabel::tilde() const {
  std::vector<SeqEntry> e;
  e.reserve(m_entries.size());
  for (const auto& w : m_entries) e.push_back({w.formula, w.indexed});
  return Sequence(std::move(e));
}

WorldLabel WorldLabel::minus() const {
  std::vector<WorldEntry> v = m_entries;
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (it->indexed) {
      it->indexed = false;
      it->k = 0;
      break;
    }
  }
  return WorldLabel(std::move(v));
}

bool WorldLabel::subscript_free() const {
  for (const auto& e : m_entries)
    if (e.indexed) return false;
  return true;
}

std::vector<WorldLabel> WorldLabel::init() const {
  std::vector<WorldLabel> out;
  WorldLabel cur = *this;
  while (!cur.subscript_free()) {
    out.push_back(cur);
    cur = cur.minus();
  }
  return out;
}

unsigned WorldLabel::mult() const {
  for (auto it = m_entries.rbegin(); it != m_entries.rend(); ++it)
    if (it->indexed) return it->k;
  return 0;
}

unsigned WorldLabel::theta() const {
  unsigned t = 0;
  for (const auto& e : m_entries)
    if (e.indexed) t += e.k;
  return t;
}

std::vector<unsigned> WorldLabel::parameters() const {
  std::vector<unsigned> out;
  for (const auto& e : m_entries)
    if (e.indexed) out.push_back(e.k);
  return out;
}

std::string WorldLabel::print(PrintStyle style) const {
  std::string out = "<0";
  for (const auto& e : m_entries) {
    out += ", ";
    if (e.indexed)
      out += "(" + e.formula.print(style) + ")_" + std::to_string(e.k);
    else
      out += e.formula.print(style);
  }
  return out + ">";
}

WorldLabel ProdsFamily::instantiate(const std::vector<unsigned>& ks) const {
  if (ks.size() != parameter_positions.size()) throw std::invalid_argument("wrong number of prods parameters");
  std::vector<WorldEntry> v;
  for (const auto& e : source.entries()) v.push_back({e.formula, false, 0});
  for (std::size_t i = 0; i < ks.size(); ++i) {
    auto& w = v[parameter_positions[i]];
    w.indexed = true;
    w.k = ks[i];
  }
  return WorldLabel(std::move(v));
}

ProdsFamily prods(const Sequence& s) {
  ProdsFamily f{s, {}};
  for (std::size_t i = 0; i < s.entries().size(); ++i)
    if (s.entries()[i].primed) f.parameter_positions.push_back(i);
  return f;
}

}  // namespace prodmod
