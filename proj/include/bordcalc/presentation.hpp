#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bordcalc/group.hpp"

namespace bordcalc {

/// A freely reduced word: syllables (generator index, nonzero exponent) with distinct
/// generators in adjacent syllables.
class Word {
 public:
  using Syllable = std::pair<std::size_t, long long>;

  Word() = default;
  /// Builds from letters (generator, +1/-1) and freely reduces.
  static Word from_letters(const std::vector<std::pair<std::size_t, int>>& letters);

  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  std::vector<std::pair<std::size_t, int>> letters() const;
  std::size_t length() const noexcept;
  bool empty() const noexcept { return syllables_.empty(); }

  Word inverse() const;
  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

  std::string to_string(std::span<const std::string> labels) const;

 private:
  std::vector<Syllable> syllables_;
};

struct Presentation {
  std::vector<std::string> labels;
  std::vector<Word> relators;
};

/// Grammar:
///   presentation := "<" gens "|" relators ">"
///   relators     := expr ("," expr)*        (may be empty)
///   expr         := word ("=" word)?        u=v means u*v^-1
///   word         := factor ("*" factor)*
///   factor       := atom ("^" int)?
///   atom         := label | "(" word ")" | "[" word "," word "]"    [x,y] = x*y*x^-1*y^-1
Presentation parse_presentation(std::string_view text);

/// Parses an `expr` over the given generator labels.
Word parse_word(std::string_view text, std::span<const std::string> labels);

/// Evaluates a word with generator i sent to images[i].
Elem evaluate(const FiniteGroup& g, const Word& w, std::span<const Elem> images);
/// Parses and evaluates over the group's own generator labels.
Elem evaluate_word(const FiniteGroup& g, std::string_view text);

/// Coset table over the trivial subgroup. Columns are 2*i (generator i) and 2*i+1 (its inverse).
struct CosetTable {
  std::vector<std::string> labels;
  std::vector<Word> relators;
  std::size_t rows = 0;
  std::vector<std::int32_t> entries;  // rows x (2 * labels.size()), -1 for undefined
  bool complete = false;

  std::size_t columns() const noexcept { return 2 * labels.size(); }
  std::int32_t at(std::size_t row, std::size_t col) const noexcept { return entries[row * columns() + col]; }
};

inline constexpr std::size_t kDefaultMaxCosets = 100000;

/// HLT enumeration with a coincidence queue; a lookahead pass runs before giving up on the coset cap.
/// The finished table is standardized (cosets renumbered in breadth-first order).
CosetTable todd_coxeter(const Presentation& p, std::size_t max_cosets = kDefaultMaxCosets);

FiniteGroup coset_table_to_group(const CosetTable& t);

/// Convenience: parse, enumerate, realize.
FiniteGroup group_from_presentation(std::string_view text, std::size_t max_cosets = kDefaultMaxCosets);

}  // namespace bordcalc
