#include "bordcalc/bordism.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bordcalc/error.hpp"

namespace bordcalc {

std::string to_string(Flavor f) { return f == Flavor::U ? "U" : "SO"; }

std::uint64_t tau_classes(std::uint32_t k) {
  if (k <= 1) return 0;
  if (k == 2) return 1;
  return euler_phi(k) / 2;
}

HominjCounts hominj_orbit_counts(std::uint32_t k, const std::vector<std::uint32_t>& a) {
  if (k == 0) fail(ErrorKind::Domain, "cyclic order must be positive");
  if (k == 1) return {};
  std::set<std::uint32_t> s;
  for (auto u : a) {
    if (std::gcd(u % k, k) != 1) fail(ErrorKind::Domain, "A is not a subgroup of units mod k");
    s.insert(u % k);
  }
  if (!s.count(1)) fail(ErrorKind::Domain, "A is not a subgroup of units mod k");
  for (auto x : s)
    for (auto y : s)
      if (!s.count(static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % k)))
        fail(ErrorKind::Domain, "A is not a subgroup of units mod k");
  const std::uint64_t phi = euler_phi(k);
  HominjCounts c;
  c.u_count = phi / s.size();
  if (k >= 3) {
    std::size_t with_neg = s.count(k - 1) ? s.size() : 2 * s.size();
    c.so_count = phi / with_neg;
  }
  return c;
}

AbelianGroupDescriptor bogomolov_auto(const FiniteGroup& g, BordismOptions options, BogomolovMethod* used) {
  auto method = BogomolovMethod::Integral;
  if (g.order() > kIntegralOrderCap && !options.allow_large) {
    if (factorize(g.order()).size() != 1)
      fail(ErrorKind::Precondition, "group of order " + std::to_string(g.order()) +
                                        " needs the integral method; allow large integral runs");
    method = BogomolovMethod::OrderModular;
  }
  if (used) *used = method;
  auto r = bogomolov(g, method, {options.allow_large});
  if (!r.structure_known)
    fail(ErrorKind::Precondition, "structure of B0 not determined by its order " + std::to_string(r.order) +
                                      "; allow large integral runs");
  return r.descriptor;
}

BordismReport omega2(const Lattice& lattice, Flavor flavor, BordismOptions options) {
  const FiniteGroup& g = lattice.group;
  BordismReport rep;
  rep.flavor = flavor;
  rep.group_id = fingerprint(g);
  std::uint64_t free = 0;
  std::vector<AbelianGroupDescriptor> torsion;
  for (std::size_t i = 0; i < lattice.classes.size(); ++i) {
    const auto& cls = lattice.classes[i];
    ClassContribution c;
    c.class_index = i;
    c.order = cls.representative.size();
    c.class_size = cls.class_size;
    c.weyl_order = cls.weyl.order();
    auto [kg, inc] = subgroup_as_group(cls.representative);
    c.shape = classify_special(kg);
    c.u_free = 1;
    if (flavor == Flavor::U) c.notes.push_back("Omega_2^U");
    if (c.shape.kind == SpecialShape::Kind::Cyclic) {
      c.unit_image = conj_action_on_cyclic(g, cls.representative);
      auto counts = hominj_orbit_counts(c.shape.k, c.unit_image);
      c.u_free += counts.u_count;
      c.so_free = counts.so_count;
      if (flavor == Flavor::U && counts.u_count)
        c.notes.push_back("Hom_inj(K,U(1))/W_K: " + std::to_string(counts.u_count));
      if (flavor == Flavor::SO && counts.so_count) c.notes.push_back("Hom_inj(K,U(1))_tau/W_K: " + std::to_string(counts.so_count));
    }
    c.torsion = bogomolov_auto(cls.weyl, options, &c.method);
    if (!c.torsion.is_trivial()) c.notes.push_back("B0(W_K) = " + c.torsion.to_string());
    free += flavor == Flavor::U ? c.u_free : c.so_free;
    torsion.push_back(c.torsion);
    rep.contributions.push_back(std::move(c));
  }
  auto t = direct_sum(torsion);
  rep.total = AbelianGroupDescriptor(free, t.invariant_factors());
  return rep;
}

BordismReport omega2(const FiniteGroup& g, Flavor flavor, BordismOptions options) {
  return omega2(subgroup_classes(g), flavor, options);
}

AbelianGroupDescriptor torsion_omega2(const FiniteGroup& g, BordismOptions options) {
  auto lattice = subgroup_classes(g);
  std::vector<AbelianGroupDescriptor> parts;
  for (const auto& cls : lattice.classes) parts.push_back(bogomolov_auto(cls.weyl, options));
  return direct_sum(parts);
}

AbelianGroupDescriptor adjacent_table_dim2(const FiniteGroup& k, Flavor flavor) {
  auto shape = classify_special(k);
  const bool cyclic = shape.kind == SpecialShape::Kind::Cyclic;
  if (flavor == Flavor::SO) {
    if (cyclic && shape.k == 2) return AbelianGroupDescriptor::cyclic(2);
    if (cyclic && shape.k > 2) return AbelianGroupDescriptor::free(tau_classes(shape.k));
    return {};
  }
  if (cyclic && shape.k >= 2) return AbelianGroupDescriptor::free(1 + euler_phi(shape.k));
  return AbelianGroupDescriptor::free(1);
}

AbelianGroupDescriptor adjacent_table_dim3(const FiniteGroup& k, Flavor flavor) {
  if (flavor == Flavor::U) return {};
  auto shape = classify_special(k);
  switch (shape.kind) {
    case SpecialShape::Kind::Dihedral: return {0, std::vector<std::uint64_t>(tau_classes(shape.k), 2)};
    case SpecialShape::Kind::A4:
    case SpecialShape::Kind::S4:
    case SpecialShape::Kind::A5: return AbelianGroupDescriptor::cyclic(2);
    default: return {};
  }
}

SkGroups sk2(const FiniteGroup& g, BordismOptions options) {
  auto b = bogomolov_auto(g, options);
  return {AbelianGroupDescriptor::free(1) + b, b};
}

std::optional<SkGroups> sk_point(long long n) {
  if (n < 0) fail(ErrorKind::Domain, "degree must be nonnegative");
  if (n == 0) return std::nullopt;
  if (n % 2 == 1) return SkGroups{};
  if (n % 4 == 2) return SkGroups{AbelianGroupDescriptor::free(1), {}};
  return SkGroups{AbelianGroupDescriptor::free(2), AbelianGroupDescriptor::free(1)};
}

}  // namespace bordcalc
