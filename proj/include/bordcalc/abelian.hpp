#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bordcalc/group.hpp"

namespace bordcalc {

/// Z^free_rank + Z/d1 + ... + Z/dm with 2 <= d1 | d2 | ... | dm.
class AbelianGroupDescriptor {
 public:
  AbelianGroupDescriptor() = default;
  /// Accepts any list of cyclic orders (1s dropped) and renormalizes to a divisibility chain.
  AbelianGroupDescriptor(std::uint64_t free_rank, std::vector<std::uint64_t> cyclic_orders);

  static AbelianGroupDescriptor trivial() { return {}; }
  static AbelianGroupDescriptor free(std::uint64_t rank) { return {rank, {}}; }
  static AbelianGroupDescriptor cyclic(std::uint64_t order) { return {0, {order}}; }

  std::uint64_t free_rank() const noexcept { return free_rank_; }
  const std::vector<std::uint64_t>& invariant_factors() const noexcept { return factors_; }
  std::uint64_t torsion_order() const noexcept;
  bool is_trivial() const noexcept { return free_rank_ == 0 && factors_.empty(); }
  /// Primary decomposition: (p, p^e) pairs sorted by p then e.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> elementary_divisors() const;
  /// The p-primary part.
  AbelianGroupDescriptor primary_part(std::uint64_t p) const;

  /// "0", "Z^2", "Z/2 + Z/4", "Z^1 + Z/6".
  std::string to_string() const;

  friend AbelianGroupDescriptor operator+(const AbelianGroupDescriptor& a, const AbelianGroupDescriptor& b);
  friend bool operator==(const AbelianGroupDescriptor&, const AbelianGroupDescriptor&) = default;

 private:
  std::uint64_t free_rank_ = 0;
  std::vector<std::uint64_t> factors_;
};

/// Direct sum of a list, renormalized.
AbelianGroupDescriptor direct_sum(const std::vector<AbelianGroupDescriptor>& parts);

/// Prime factorization by trial division: (p, exponent) sorted by p.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

/// Invariant factors of an abelian group, read off from counts of elements with x^(p^i) = e.
AbelianGroupDescriptor abelian_invariants(const FiniteGroup& g);

}  // namespace bordcalc
