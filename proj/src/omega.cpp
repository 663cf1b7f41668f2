#include "prodmod/omega.hpp"

#include <algorithm>
#include <map>

#include "prodmod/errors.hpp"

namespace prodmod {

OmegaSet OmegaSet::from(std::vector<Sequence> members, OmegaKind kind) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return OmegaSet{std::move(members), kind};
}

bool OmegaSet::contains(const Sequence& s) const { return std::binary_search(members.begin(), members.end(), s); }

std::vector<Sequence> OmegaSet::children(const Sequence& s) const {
  std::vector<Sequence> out;
  for (const auto& m : members) {
    if (m.depth() != s.depth() + 1) continue;
    if (std::equal(s.entries().begin(), s.entries().end(), m.entries().begin())) out.push_back(m);
  }
  return out;
}

std::string OmegaSet::print() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ", ";
    out += members[i].print();
  }
  return out + "}";
}

bool omega_before(const OmegaSet& a, const OmegaSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string x = a.members[i].print(), y = b.members[i].print();
    if (x != y) return x < y;
  }
  return false;
}

std::vector<ModalFormula> modal_members(const Levels& lv, std::size_t d) {
  std::vector<ModalFormula> out;
  if (d + 1 >= lv.size()) return out;
  for (const auto& f : lv[d])
    if (f.is_modal()) out.push_back(f);
  return out;
}

std::vector<ModalFormula> box_members(const Levels& lv, std::size_t d) {
  std::vector<ModalFormula> out;
  for (const auto& f : modal_members(lv, d))
    if (f.op() == Op::Box) out.push_back(f);
  return out;
}

namespace {

void grow_universe(const Levels& lv, const Sequence& s, std::vector<Sequence>& out) {
  out.push_back(s);
  for (const auto& f : modal_members(lv, s.depth())) {
    grow_universe(lv, s.child(f), out);
    if (f.op() == Op::Box) grow_universe(lv, s.child(f, true), out);
  }
}

bool valid_entries(const Sequence& s, const Levels& lv) {
  for (std::size_t i = 0; i < s.depth(); ++i) {
    const auto& e = s.entries()[i];
    if (i + 1 >= lv.size() || !e.formula.is_modal() || !lv[i].contains(e.formula)) return false;
    if (e.primed && e.formula.op() != Op::Box) return false;
  }
  return true;
}

struct Membership {
  std::vector<Sequence> sorted;
  explicit Membership(std::vector<Sequence> v) : sorted(std::move(v)) {
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  }
  bool has(const Sequence& s) const { return std::binary_search(sorted.begin(), sorted.end(), s); }
};

// Status of a node during enumeration: -1 leaf, otherwise the bitmask of
// primed boxes among box_members at its depth.
using Status = long;
constexpr Status kLeaf = -1;

class Enumerator {
 public:
  Enumerator(const Levels& lv, OmegaKind kind, std::size_t limit) : m_lv(lv), m_kind(kind), m_limit(limit) {}

  std::vector<OmegaSet> run() {
    m_acc.push_back(Sequence());
    layer({Sequence()}, 0);
    std::sort(m_out.begin(), m_out.end(), omega_before);
    return std::move(m_out);
  }

 private:
  void layer(std::vector<Sequence> nodes, std::size_t d) {
    std::stable_sort(nodes.begin(), nodes.end(), [](const Sequence& a, const Sequence& b) {
      if (a.prime_count() != b.prime_count()) return a.prime_count() < b.prime_count();
      return a < b;
    });
    std::vector<Sequence> next;
    node(nodes, 0, d, next);
  }

  void node(const std::vector<Sequence>& nodes, std::size_t idx, std::size_t d, std::vector<Sequence>& next) {
    if (idx == nodes.size()) {
      if (next.empty()) {
        emit();
        return;
      }
      std::vector<Sequence> copy = next;
      layer(std::move(copy), d + 1);
      return;
    }
    const Sequence& s = nodes[idx];
    auto modal = modal_members(m_lv, d);
    auto boxes = box_members(m_lv, d);

    auto choose = [&](Status st) {
      m_status[s] = st;
      std::size_t acc_mark = m_acc.size(), next_mark = next.size();
      if (st != kLeaf) add_children(s, modal, boxes, st, next);
      node(nodes, idx + 1, d, next);
      m_acc.resize(acc_mark);
      next.resize(next_mark);
      m_status.erase(s);
    };

    if (modal.empty()) return choose(kLeaf);
    if (m_kind == OmegaKind::Coherent && !s.prime_free()) {
      Status parent = m_status.at(s.sigma_minus());
      choose(kLeaf);
      if (parent != kLeaf) choose(parent);
      return;
    }
    choose(kLeaf);
    for (Status mask = 0; mask < (Status(1) << boxes.size()); ++mask) choose(mask);
  }

  void add_children(const Sequence& s, const std::vector<ModalFormula>& modal, const std::vector<ModalFormula>& boxes,
                    Status mask, std::vector<Sequence>& next) {
    auto primed = [&](const ModalFormula& f) {
      for (std::size_t i = 0; i < boxes.size(); ++i)
        if (boxes[i] == f) return ((mask >> i) & 1) != 0;
      return false;
    };
    for (const auto& f : modal) {
      bool p = primed(f);
      if (m_kind == OmegaKind::Coherent || !p) push(s.child(f), next);
      if (p) push(s.child(f, true), next);
    }
  }

  void push(const Sequence& s, std::vector<Sequence>& next) {
    m_acc.push_back(s);
    next.push_back(s);
  }

  void emit() {
    if (m_out.size() >= m_limit)
      throw BudgetExceeded("enumeration cap of " + std::to_string(m_limit) + " sets exceeded");
    m_out.push_back(OmegaSet::from(m_acc, m_kind));
  }

  const Levels& m_lv;
  OmegaKind m_kind;
  std::size_t m_limit;
  std::vector<Sequence> m_acc;
  std::map<Sequence, Status> m_status;
  std::vector<OmegaSet> m_out;
};

}  // namespace

std::vector<Sequence> sigma_universe(const Levels& lv) {
  std::vector<Sequence> out;
  grow_universe(lv, Sequence(), out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_coherent(const std::vector<Sequence>& omega, const Levels& lv) {
  Membership m(omega);
  if (!m.has(Sequence())) return false;
  for (const auto& s : m.sorted) {
    if (!valid_entries(s, lv)) return false;
    if (s.is_root()) continue;
    Sequence p = s.parent();
    if (!m.has(p)) return false;
    for (const auto& f : modal_members(lv, p.depth()))
      if (!m.has(p.child(f))) return false;
    if (!m.has(s.sigma_minus())) return false;
    Sequence pm = p.sigma_minus();
    for (const auto& b : box_members(lv, p.depth()))
      if (m.has(p.child(b, true)) != m.has(pm.child(b, true))) return false;
  }
  return true;
}

bool is_simple(const std::vector<Sequence>& omega, const Levels& lv) {
  Membership m(omega);
  if (!m.has(Sequence())) return false;
  for (const auto& s : m.sorted) {
    if (!valid_entries(s, lv)) return false;
    if (s.is_root()) continue;
    Sequence p = s.parent();
    if (!m.has(p)) return false;
    for (const auto& f : modal_members(lv, p.depth())) {
      if (f.op() == Op::Diamond) {
        if (!m.has(p.child(f))) return false;
      } else if (m.has(p.child(f)) == m.has(p.child(f, true))) {
        return false;
      }
    }
  }
  return true;
}

std::vector<OmegaSet> enumerate_coherent(const Levels& lv, std::size_t limit) {
  return Enumerator(lv, OmegaKind::Coherent, limit).run();
}

std::vector<OmegaSet> enumerate_simple(const Levels& lv, std::size_t limit) {
  return Enumerator(lv, OmegaKind::Simple, limit).run();
}

}  // namespace prodmod
