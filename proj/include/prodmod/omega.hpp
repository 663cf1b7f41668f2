#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prodmod/formula.hpp"
#include "prodmod/sequence.hpp"

namespace prodmod {

using Levels = std::vector<FormulaSet>;

enum class OmegaKind { Coherent, Simple };

struct OmegaSet {
  std::vector<Sequence> members;  // sorted, unique
  OmegaKind kind = OmegaKind::Coherent;

  static OmegaSet from(std::vector<Sequence> members, OmegaKind kind);

  bool contains(const Sequence& s) const;
  std::vector<Sequence> children(const Sequence& s) const;
  bool is_leaf(const Sequence& s) const { return children(s).empty(); }
  std::size_t size() const { return members.size(); }
  std::string print() const;
};

// Enumeration order: by size, then lexicographically on printed members.
bool omega_before(const OmegaSet& a, const OmegaSet& b);

// Modal-headed members of level d, or empty when d is past the last level.
std::vector<ModalFormula> modal_members(const Levels& lv, std::size_t d);
std::vector<ModalFormula> box_members(const Levels& lv, std::size_t d);

std::vector<Sequence> sigma_universe(const Levels& lv);

bool is_coherent(const std::vector<Sequence>& omega, const Levels& lv);
bool is_simple(const std::vector<Sequence>& omega, const Levels& lv);

inline constexpr std::size_t kDefaultOmegaLimit = 1'000'000;

// All coherent (resp. simple) sets in enumeration order. Throws
// BudgetExceeded once more than `limit` sets have been generated.
std::vector<OmegaSet> enumerate_coherent(const Levels& lv, std::size_t limit = kDefaultOmegaLimit);
std::vector<OmegaSet> enumerate_simple(const Levels& lv, std::size_t limit = kDefaultOmegaLimit);

}  // namespace prodmod
