#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bordcalc/abelian.hpp"
#include "bordcalc/group.hpp"
#include "bordcalc/intmat.hpp"
#include "bordcalc/modular.hpp"

namespace bordcalc {

/// Integer chain in the normalized bar complex, basis (a|b) with a, b != e.
class Cycle2 {
 public:
  using Key = std::pair<Elem, Elem>;

  /// Adds c*(a|b); identity-containing pairs are zero and ignored.
  void add(Elem a, Elem b, std::int64_t c);
  const std::map<Key, std::int64_t>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  Cycle2& operator+=(const Cycle2& o);
  Cycle2& operator-=(const Cycle2& o);
  friend Cycle2 operator+(Cycle2 a, const Cycle2& b) { return a += b; }
  friend Cycle2 operator-(Cycle2 a, const Cycle2& b) { return a -= b; }
  friend Cycle2 operator*(std::int64_t s, const Cycle2& a);
  friend bool operator==(const Cycle2&, const Cycle2&) = default;

 private:
  std::map<Key, std::int64_t> terms_;
};

/// d(a|b) = (b) - (ab) + (a) on a chain; result indexed by non-identity elements.
std::map<Elem, std::int64_t> boundary2(const FiniteGroup& g, const Cycle2& chain);
/// d(a|b|c) = (b|c) - (ab|c) + (a|bc) - (a|b).
Cycle2 boundary3(const FiniteGroup& g, Elem a, Elem b, Elem c);
/// True iff the boundary vanishes (over Z, or mod `modulus` when nonzero).
bool cycle_check(const FiniteGroup& g, const Cycle2& chain, std::uint64_t modulus = 0);

/// Abelianization G/[G,G].
AbelianGroupDescriptor h1(const FiniteGroup& g);

/// Normalized boundary matrices. C1 index of x is x-1; C2 index of (a|b) is (a-1)(n-1)+(b-1).
SparseIntMat normalized_d2(const FiniteGroup& g);
SparseIntMat normalized_d3(const FiniteGroup& g);
/// H2 read off from the Smith form of the full normalized d3; small groups only.
AbelianGroupDescriptor h2_dense_snf(const FiniteGroup& g);

struct Ring {
  enum class Kind { Integers, ModPrimePower };
  Kind kind = Kind::Integers;
  std::uint32_t p = 0;
  unsigned k = 0;

  static Ring integers() { return {}; }
  static Ring mod_prime_power(std::uint32_t p, unsigned k) { return {Kind::ModPrimePower, p, k}; }
  std::string to_string() const;
};

struct H2Options {
  /// Lift the order cap of the Integers ring.
  bool allow_large = false;
  /// Stream every normalized d3 column instead of the generator-restricted ones (cross-validation).
  bool exhaustive_columns = false;
};

inline constexpr std::size_t kIntegralOrderCap = 128;

/// Smallest k with p^k >= n^2.
unsigned local_precision(std::uint32_t p, std::uint64_t n);

struct LocalCoordinate {
  std::uint32_t p;
  std::uint32_t modulus;
  std::uint32_t value;
  friend bool operator==(const LocalCoordinate&, const LocalCoordinate&) = default;
};

struct ClassCoordinates {
  std::vector<LocalCoordinate> coordinates;
  bool is_zero() const noexcept;
  friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;
};

struct BarContext;

/// H2(G) (or a quotient of it by extra cycles) with an additive class evaluator.
class H2Presentation {
 public:
  const FiniteGroup& group() const noexcept;
  const Ring& ring() const noexcept { return ring_; }
  const AbelianGroupDescriptor& descriptor() const noexcept { return descriptor_; }
  /// The local quotient (C2 / (B2 + extras)) (x) Z/p^k for each prime handled.
  std::vector<ModularQuotient> local_quotients() const;

  /// Coordinates of the class of a cycle; throws ErrorKind::Domain for non-cycles.
  ClassCoordinates evaluate(const Cycle2& z) const;

  /// Quotient by the span of extra cycles.
  H2Presentation quotient(const std::vector<Cycle2>& extra) const;

 private:
  friend H2Presentation h2(const FiniteGroup&, Ring, H2Options);
  struct Local {
    ModularEchelon echelon;
    ModularEchelon::Residual residual;
  };
  void finish();

  std::shared_ptr<const BarContext> ctx_;
  Ring ring_;
  std::vector<Local> locals_;
  AbelianGroupDescriptor descriptor_;
};

/// Integers: exact H2(G,Z) for |G| <= 128 (or with allow_large), computed one prime at a time.
/// ModPrimePower(p,k): G must be a p-group with p^k >= |G|^2; gives the same group through one local step.
H2Presentation h2(const FiniteGroup& g, Ring ring = Ring::integers(), H2Options options = {});

H2Presentation quotient_classes(const H2Presentation& h, const std::vector<Cycle2>& extra);

/// (C1 / im d2) (x) Z/p^k, i.e. H1(G) (x) Z/p^k, from the bar complex.
ModularQuotient coker_d2_mod(const FiniteGroup& g, std::uint32_t p, unsigned k);

}  // namespace bordcalc
