#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "prodmod/formula.hpp"

namespace prodmod {

struct SeqEntry {
  ModalFormula formula;
  bool primed = false;

  friend bool operator==(const SeqEntry&, const SeqEntry&) = default;
  friend std::strong_ordering operator<=>(const SeqEntry&, const SeqEntry&) = default;
};

// A path <0, b1, ..., bk>; the head <0> is implicit.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<SeqEntry> entries) : m_entries(std::move(entries)) {}

  const std::vector<SeqEntry>& entries() const { return m_entries; }
  std::size_t depth() const { return m_entries.size(); }
  bool is_root() const { return m_entries.empty(); }
  const SeqEntry& last() const { return m_entries.back(); }

  Sequence child(const ModalFormula& f, bool primed = false) const;
  Sequence parent() const;

  std::size_t prime_count() const;
  bool prime_free() const { return prime_count() == 0; }

  // Removes the last prime; identity on prime-free sequences.
  Sequence sigma_minus() const;
  Sequence underline() const;

  std::string print(PrintStyle style = PrintStyle::Words) const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend std::strong_ordering operator<=>(const Sequence&, const Sequence&) = default;

 private:
  std::vector<SeqEntry> m_entries;
};

// Empty for prime-free sequences, else init(sigma_minus) plus the sequence itself.
std::vector<Sequence> init(const Sequence& s);

// An entry of a world label: a plain modal formula, or a subscripted box (box f)_k.
struct WorldEntry {
  ModalFormula formula;
  bool indexed = false;
  unsigned k = 0;

  friend bool operator==(const WorldEntry&, const WorldEntry&) = default;
  friend std::strong_ordering operator<=>(const WorldEntry&, const WorldEntry&) = default;
};

// A world of a reconstructed countermodel: an instance of prods(sigma).
class WorldLabel {
 public:
  WorldLabel() = default;
  explicit WorldLabel(std::vector<WorldEntry> entries) : m_entries(std::move(entries)) {}

  const std::vector<WorldEntry>& entries() const { return m_entries; }
  std::size_t depth() const { return m_entries.size(); }
  WorldLabel child(const WorldEntry& e) const;
  WorldLabel parent() const;

  // Subscripts become primes.
  Sequence tilde() const;
  Sequence underline() const { return tilde().underline(); }
  // Last subscript removed and replaced by the plain formula.
  WorldLabel minus() const;
  bool subscript_free() const;
  std::vector<WorldLabel> init() const;
  // Index of the last subscripted entry.
  unsigned mult() const;
  // Sum of all subscripts.
  unsigned theta() const;
  std::vector<unsigned> parameters() const;

  std::string print(PrintStyle style = PrintStyle::Words) const;

  friend bool operator==(const WorldLabel&, const WorldLabel&) = default;
  friend std::strong_ordering operator<=>(const WorldLabel&, const WorldLabel&) = default;

 private:
  std::vector<WorldEntry> m_entries;
};

// Symbolic description of prods(sigma): every primed entry becomes a
// k-indexed parameter.
struct ProdsFamily {
  Sequence source;
  std::vector<std::size_t> parameter_positions;

  WorldLabel instantiate(const std::vector<unsigned>& ks) const;
  bool finite() const { return parameter_positions.empty(); }
};

ProdsFamily prods(const Sequence& s);

}  // namespace prodmod
