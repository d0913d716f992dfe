#include <doctest.h>

#include "bordcalc/bordism.hpp"
#include "bordcalc/builtins.hpp"
#include "bordcalc/error.hpp"
#include "bordcalc/lattice.hpp"

using namespace bordcalc;

TEST_CASE("faithful character orbits") {
  CHECK(hominj_orbit_counts(8, {1, 3, 5, 7}) == HominjCounts{1, 1});
  CHECK(hominj_orbit_counts(3, {1}) == HominjCounts{2, 1});
  CHECK(hominj_orbit_counts(1, {1}) == HominjCounts{0, 0});
  CHECK(hominj_orbit_counts(2, {1}) == HominjCounts{1, 0});
  CHECK(hominj_orbit_counts(5, {1, 4}) == HominjCounts{2, 2});
  CHECK_THROWS_AS(hominj_orbit_counts(8, {1, 3, 5}), Error);
  CHECK_THROWS_AS(hominj_orbit_counts(8, {2}), Error);
  CHECK(tau_classes(1) == 0);
  CHECK(tau_classes(2) == 1);
  CHECK(tau_classes(5) == 2);
  CHECK(tau_classes(12) == 2);
}

TEST_CASE("rank formulas") {
  auto c1 = cyclic_group(1);
  CHECK(omega2(c1, Flavor::U).total == AbelianGroupDescriptor::free(1));
  CHECK(omega2(c1, Flavor::SO).total.is_trivial());
  CHECK(omega2(cyclic_group(2), Flavor::U).total == AbelianGroupDescriptor::free(3));
  auto s3 = symmetric(3);
  CHECK(omega2(s3, Flavor::U).total == AbelianGroupDescriptor::free(6));
  CHECK(omega2(s3, Flavor::SO).total == AbelianGroupDescriptor::free(1));
  CHECK(omega2(builtin("C6"), Flavor::U).total == AbelianGroupDescriptor::free(9));
  CHECK(omega2(builtin("C6"), Flavor::SO).total == AbelianGroupDescriptor::free(2));
}

TEST_CASE("lattice and group entry points agree") {
  auto g = symmetric(4);
  auto l = subgroup_classes(g);
  for (auto f : {Flavor::U, Flavor::SO}) CHECK(omega2(l, f).total == omega2(g, f).total);
}

TEST_CASE("torsion of the order 64 example") {
  auto g = g64();
  CHECK(torsion_omega2(g) == AbelianGroupDescriptor::cyclic(2));
  for (auto f : {Flavor::U, Flavor::SO}) {
    auto rep = omega2(g, f);
    CHECK(rep.total.invariant_factors() == std::vector<std::uint64_t>{2});
    for (const auto& c : rep.contributions)
      if (c.order > 1) CHECK(c.torsion.is_trivial());
  }
}

TEST_CASE("abelian groups have torsion free bordism") {
  for (const char* name : {"C2xC2", "C4xC4", "C2xC2xC2", "C12"}) CHECK(torsion_omega2(builtin(name)).is_trivial());
}

TEST_CASE("order 243 torsion") {
  auto t = torsion_omega2(g243());
  CHECK(t.torsion_order() == 3);
}

TEST_CASE("adjacent family tables") {
  CHECK(adjacent_table_dim2(cyclic_group(2), Flavor::SO) == AbelianGroupDescriptor::cyclic(2));
  CHECK(adjacent_table_dim2(cyclic_group(5), Flavor::SO) == AbelianGroupDescriptor::free(2));
  CHECK(adjacent_table_dim2(quaternion8(), Flavor::U) == AbelianGroupDescriptor::free(1));
  CHECK(adjacent_table_dim3(symmetric(4), Flavor::SO) == AbelianGroupDescriptor::cyclic(2));
  CHECK(adjacent_table_dim3(dihedral(10), Flavor::SO) == AbelianGroupDescriptor(0, {2, 2}));
  for (const char* name : {"C5", "D10", "S4", "Q8", "A5"})
    CHECK(adjacent_table_dim3(builtin(name), Flavor::U).is_trivial());
}

TEST_CASE("SK groups") {
  auto a = sk2(builtin("C4xC4"));
  CHECK(a.sk == AbelianGroupDescriptor::free(1));
  CHECK(a.skbar.is_trivial());
  CHECK(sk2(cyclic_group(1)).sk == AbelianGroupDescriptor::free(1));
  auto g = sk2(g64());
  CHECK(g.sk == AbelianGroupDescriptor(1, {2}));
  CHECK(g.skbar == AbelianGroupDescriptor::cyclic(2));

  CHECK(sk_point(5)->sk.is_trivial());
  CHECK(sk_point(5)->skbar.is_trivial());
  CHECK(sk_point(6)->sk == AbelianGroupDescriptor::free(1));
  CHECK(sk_point(6)->skbar.is_trivial());
  CHECK(sk_point(8)->sk == AbelianGroupDescriptor::free(2));
  CHECK(sk_point(8)->skbar == AbelianGroupDescriptor::free(1));
  CHECK(!sk_point(0).has_value());
  CHECK_THROWS_AS(sk_point(-1), Error);
}
