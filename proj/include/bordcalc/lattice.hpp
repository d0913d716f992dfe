#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bordcalc/group.hpp"

namespace bordcalc {

struct SubgroupClass {
  SubgroupHandle representative;
  std::size_t class_size = 0;
  SubgroupHandle normalizer;
  FiniteGroup weyl;
  GroupMap weyl_projection;  // normalizer (as a group) -> weyl
  /// Least conjugate in the element-set order; sort key and cache key.
  ElementSet key;
};

struct Lattice {
  FiniteGroup group;
  std::vector<SubgroupClass> classes;  // sorted by (|K|, key)

  std::size_t total_subgroups() const noexcept;
};

inline constexpr std::size_t kDefaultClassCap = 100000;

/// Conjugacy classes of subgroups by cyclic extension.
Lattice subgroup_classes(const FiniteGroup& g, std::size_t max_classes = kDefaultClassCap);

/// Every subgroup, by joining single elements onto cyclic subgroups until nothing new appears.
std::vector<SubgroupHandle> brute_force_subgroups(const FiniteGroup& g);

/// W_K = N_G(K)/K with the projection from N_G(K).
std::pair<FiniteGroup, GroupMap> weyl(const FiniteGroup& g, const SubgroupHandle& k);

/// The least conjugate of K.
ElementSet conjugacy_key(const FiniteGroup& g, const SubgroupHandle& k);

}  // namespace bordcalc
