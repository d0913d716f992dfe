#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bordcalc/abelian.hpp"
#include "bordcalc/group.hpp"
#include "bordcalc/homology.hpp"

namespace bordcalc {

/// (a|b) - (b|a) for every unordered pair of distinct commuting non-identity elements, in (a, b) order.
std::vector<Cycle2> toral_cycles(const FiniteGroup& g);

enum class BogomolovMethod { Integral, OrderModular };

struct BogomolovOptions {
  bool allow_large = false;
};

struct BogomolovResult {
  BogomolovMethod method = BogomolovMethod::Integral;
  std::uint64_t order = 1;
  /// Integral always knows the structure; OrderModular only when the order forces it (1 or prime).
  bool structure_known = true;
  AbelianGroupDescriptor descriptor;
  /// Upper bound for the exponent (the exponent of H2).
  std::uint64_t exponent_bound = 1;
  AbelianGroupDescriptor h2;
  /// H2 modulo toral classes; present for both methods (over Z/p^k for OrderModular).
  std::optional<H2Presentation> evaluator;
  std::vector<std::string> notes;

  std::string summary() const;
};

BogomolovResult bogomolov(const FiniteGroup& g, BogomolovMethod method = BogomolovMethod::Integral,
                          BogomolovOptions options = {});

/// Elements x1, y1, ..., xg, yg.
struct SurfaceTuple {
  std::vector<Elem> entries;
  std::size_t genus() const noexcept { return entries.size() / 2; }
};

bool surface_relator_holds(const FiniteGroup& g, const SurfaceTuple& t);

/// Image of the fundamental class under the map of the surface group given by the tuple.
Cycle2 surface_cycle(const FiniteGroup& g, const SurfaceTuple& t);

struct WitnessReport {
  SurfaceTuple tuple;
  bool relator_ok = false;
  bool generates_group = false;
  bool evaluated = false;
  bool nontrivial = false;
  ClassCoordinates class_coordinates;
  std::string skipped_reason;
};

/// `quotient` is H2 modulo toral classes (BogomolovResult::evaluator); without it the class is not evaluated.
WitnessReport witness_verify(const FiniteGroup& g, const SurfaceTuple& t, const H2Presentation* quotient);

/// Samples every entry but the last, then scans for a last entry closing the relator; returns the first
/// tuple with a nontrivial class. Deterministic in `seed`.
std::optional<SurfaceTuple> witness_search(const FiniteGroup& g, std::size_t genus, std::uint64_t budget,
                                           std::uint64_t seed, const H2Presentation& quotient);

/// Finite abelian group Z/m1 + ... + Z/mr with a left action of Q: one r x r matrix per generator of Q.
struct ActionModule {
  std::vector<std::uint64_t> moduli;
  std::vector<std::vector<std::vector<std::int64_t>>> generator_matrices;
};

/// H^1(Q, M) as crossed homomorphisms modulo principal ones.
AbelianGroupDescriptor lhs_h1_crosscheck(const FiniteGroup& q, const ActionModule& m);

}  // namespace bordcalc
