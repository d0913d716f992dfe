#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bordcalc {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 20000;

/// Dense bitset over the elements of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }
  bool test(Elem x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(Elem x) noexcept { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  std::size_t count() const noexcept;
  std::vector<Elem> elements() const;
  bool subset_of(const ElementSet& other) const noexcept;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  /// Lexicographic on the sorted element lists.
  friend bool operator<(const ElementSet& a, const ElementSet& b) noexcept;

  std::size_t hash() const noexcept;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

/// A finite group given by its full multiplication table on indices 0..order-1.
/// The identity is always index 0. Copies share the underlying tables.
class FiniteGroup {
 public:
  static constexpr Elem identity = 0;

  FiniteGroup();

  /// Builds a group from a row-major table. Checks identity and inverses; associativity is
  /// left to check_axioms(). Generators must generate the group; names become shortest words.
  static FiniteGroup from_table(std::vector<Elem> table, std::size_t order, std::vector<Elem> generators,
                                std::vector<std::string> labels);

  std::size_t order() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const noexcept { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const noexcept { return data_->inverse[a]; }
  Elem pow(Elem a, long long k) const;
  /// g x g^-1
  Elem conj(Elem g, Elem x) const noexcept { return mul(mul(g, x), inv(g)); }
  /// x y x^-1 y^-1
  Elem commutator(Elem x, Elem y) const noexcept { return mul(mul(x, y), mul(inv(x), inv(y))); }
  std::uint32_t element_order(Elem a) const noexcept { return data_->orders[a]; }
  std::uint32_t exponent() const noexcept;
  bool is_abelian() const noexcept;

  const std::string& name(Elem a) const noexcept { return data_->names[a]; }
  std::span<const Elem> generators() const noexcept { return data_->generators; }
  std::span<const std::string> labels() const noexcept { return data_->labels; }
  std::span<const Elem> table() const noexcept { return {table_, n_ * n_}; }

 private:
  struct Data {
    std::vector<Elem> table;
    std::vector<Elem> inverse;
    std::vector<std::uint32_t> orders;
    std::vector<std::string> names;
    std::vector<Elem> generators;
    std::vector<std::string> labels;
  };
  std::shared_ptr<const Data> data_;
  const Elem* table_ = nullptr;
  std::size_t n_ = 0;
};

/// Exhaustive associativity / identity / inverse check.
bool check_axioms(const FiniteGroup& g);

/// A subgroup of a parent group, stored as an element bitset.
class SubgroupHandle {
 public:
  SubgroupHandle() = default;
  /// The subgroup generated by `gens`.
  static SubgroupHandle generated_by(const FiniteGroup& parent, std::span<const Elem> gens);
  /// Wraps an element set the caller knows to be a subgroup; validated unless `trusted`.
  static SubgroupHandle from_set(const FiniteGroup& parent, ElementSet members, bool trusted = false);
  static SubgroupHandle whole(const FiniteGroup& parent);
  static SubgroupHandle trivial(const FiniteGroup& parent);

  const FiniteGroup& parent() const noexcept { return parent_; }
  const ElementSet& members() const noexcept { return members_; }
  bool contains(Elem x) const noexcept { return members_.test(x); }
  std::size_t size() const noexcept { return size_; }
  std::vector<Elem> elements() const { return members_.elements(); }
  /// A small generating set, chosen greedily by element order then index.
  std::vector<Elem> generators() const;

 private:
  FiniteGroup parent_;
  ElementSet members_;
  std::size_t size_ = 0;
};

/// A homomorphism given by its values on every element.
struct GroupMap {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<Elem> image;

  Elem operator()(Elem x) const noexcept { return image[x]; }
  bool is_homomorphism() const;
};

struct SpecialShape {
  enum class Kind { Cyclic, Dihedral, A4, S4, A5, Other };
  Kind kind = Kind::Other;
  /// Cyclic(k): |K| = k.  Dihedral(k): |K| = 2k.  Otherwise 0.
  std::uint32_t k = 0;

  std::string to_string() const;
  friend bool operator==(const SpecialShape&, const SpecialShape&) = default;
};

/// Automorphism of N (as an index map) for each element of H.
using Action = std::vector<std::vector<Elem>>;

FiniteGroup from_permutations(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& generators,
                              std::vector<std::string> labels = {}, std::size_t cap = kDefaultOrderCap);
/// Validated Cayley table input; any element may play the identity, which is moved to index 0.
FiniteGroup from_cayley(const std::vector<std::vector<std::uint32_t>>& rows);
FiniteGroup cyclic_group(std::uint32_t n, const std::string& label = "a");
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Extends automorphisms given on H's generators to an action of all of H; checks well-definedness.
Action extend_action(const FiniteGroup& n, const FiniteGroup& h, const std::vector<std::vector<Elem>>& generator_images);
/// (n1,h1)(n2,h2) = (n1 * action[h1](n2), h1 h2). Generators: N's then H's.
FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h, const Action& action);

SubgroupHandle normalizer(const FiniteGroup& g, const SubgroupHandle& k);
SubgroupHandle centralizer(const FiniteGroup& g, const SubgroupHandle& k);
SubgroupHandle center(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const SubgroupHandle& k);
SubgroupHandle commutator_subgroup(const FiniteGroup& g);

/// K as a group in its own right plus the inclusion K -> parent.
std::pair<FiniteGroup, GroupMap> subgroup_as_group(const SubgroupHandle& k);
/// G/K for K normal; elements are cosets, with the projection map.
std::pair<FiniteGroup, GroupMap> quotient(const FiniteGroup& g, const SubgroupHandle& k);

SpecialShape classify_special(const FiniteGroup& k);
/// Exponents u with n g n^-1 = g^u for n in N_G(K), g the least-index generator of the cyclic K.
std::vector<std::uint32_t> conj_action_on_cyclic(const FiniteGroup& g, const SubgroupHandle& k);
std::vector<std::uint32_t> conj_action_on_cyclic(const FiniteGroup& g, const SubgroupHandle& k, Elem generator);

/// Calls f(a, b) once for every unordered pair a < b of distinct commuting non-identity elements.
void for_each_commuting_pair(const FiniteGroup& g, const std::function<void(Elem, Elem)>& f);

/// A generating set chosen greedily (largest element order first, then least index).
std::vector<Elem> small_generating_set(const FiniteGroup& g);

/// Relabels elements by `perm` (old index -> new index, perm[0] must be 0).
FiniteGroup relabel(const FiniteGroup& g, const std::vector<Elem>& perm);

/// Deterministic cache key; equal tables give equal keys.
std::string fingerprint(const FiniteGroup& g);

/// Histogram: result[d] = number of elements of order d.
std::vector<std::size_t> order_histogram(const FiniteGroup& g);

}  // namespace bordcalc
