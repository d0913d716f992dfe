#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bordcalc/abelian.hpp"
#include "bordcalc/bogomolov.hpp"
#include "bordcalc/group.hpp"
#include "bordcalc/lattice.hpp"

namespace bordcalc {

enum class Flavor { U, SO };
std::string to_string(Flavor f);

struct HominjCounts {
  std::uint64_t u_count = 0;
  std::uint64_t so_count = 0;
  friend bool operator==(const HominjCounts&, const HominjCounts&) = default;
};

/// Orbits of faithful characters of Z/k under the unit subgroup A (and, for so_count, also under -1).
HominjCounts hominj_orbit_counts(std::uint32_t k, const std::vector<std::uint32_t>& a);

/// Number of faithful characters of Z/k up to complex conjugation.
std::uint64_t tau_classes(std::uint32_t k);

struct ClassContribution {
  std::size_t class_index = 0;
  std::size_t order = 0;       // |K|
  std::size_t class_size = 0;
  std::size_t weyl_order = 0;
  SpecialShape shape;
  std::vector<std::uint32_t> unit_image;  // A, for cyclic K
  std::uint64_t u_free = 0;
  std::uint64_t so_free = 0;
  AbelianGroupDescriptor torsion;        // B0(W_K)
  BogomolovMethod method = BogomolovMethod::Integral;
  std::vector<std::string> notes;
};

struct BordismReport {
  Flavor flavor = Flavor::U;
  std::string group_id;
  AbelianGroupDescriptor total;
  std::vector<ClassContribution> contributions;
};

struct BordismOptions {
  bool allow_large = false;
};

/// B0 of a group using Integral up to the integral cap, the order-modular route for larger p-groups.
AbelianGroupDescriptor bogomolov_auto(const FiniteGroup& g, BordismOptions options, BogomolovMethod* used = nullptr);

BordismReport omega2(const FiniteGroup& g, Flavor flavor, BordismOptions options = {});
BordismReport omega2(const Lattice& lattice, Flavor flavor, BordismOptions options = {});
AbelianGroupDescriptor torsion_omega2(const FiniteGroup& g, BordismOptions options = {});

AbelianGroupDescriptor adjacent_table_dim2(const FiniteGroup& k, Flavor flavor);
AbelianGroupDescriptor adjacent_table_dim3(const FiniteGroup& k, Flavor flavor);

struct SkGroups {
  AbelianGroupDescriptor sk;
  AbelianGroupDescriptor skbar;
};

/// SK_2(BG) = Z + B0(G), and the barred group B0(G).
SkGroups sk2(const FiniteGroup& g, BordismOptions options = {});
/// SK groups of a point in degree n; nullopt where no value is given (degree 0).
std::optional<SkGroups> sk_point(long long n);

}  // namespace bordcalc
