#include <doctest.h>

#include "bordcalc/abelian.hpp"
#include "bordcalc/builtins.hpp"
#include "bordcalc/intmat.hpp"
#include "bordcalc/modular.hpp"

using namespace bordcalc;

TEST_CASE("smith normal form examples") {
  auto d = smith_normal_form(IntMatrix{{2, 0}, {0, 3}}, 2);
  CHECK(d.diagonal == std::vector<std::uint64_t>{1, 6});
  CHECK(d.rank == 2);

  auto z = smith_normal_form(IntMatrix(3, std::vector<std::int64_t>(4, 0)), 4);
  CHECK(z.rank == 0);
  CHECK(z.diagonal.empty());

  auto r = smith_normal_form(IntMatrix{{2, 4}, {4, 8}}, 2);
  CHECK(r.diagonal == std::vector<std::uint64_t>{2});
  CHECK(r.rank == 1);

  SparseIntMat s(2, 2);
  s.add(0, 0, 2);
  s.add(1, 1, 3);
  CHECK(smith_normal_form(s).diagonal == std::vector<std::uint64_t>{1, 6});
}

TEST_CASE("sparse matrices merge entries") {
  SparseIntMat m(3, 1);
  m.add(1, 0, 4);
  m.add(1, 0, -4);
  CHECK(m.nonzeros() == 0);
  m.push_column({{2, 1}, {0, 5}, {2, 2}});
  CHECK(m.at(2, 1) == 3);
  CHECK(m.at(0, 1) == 5);
  CHECK(m.column(1).front().first == 0);
}

TEST_CASE("cokernels") {
  CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}, 2) == AbelianGroupDescriptor::cyclic(6));
  CHECK(cokernel(IntMatrix{{2, 4}}, 2) == AbelianGroupDescriptor(1, {2}));
  CHECK(cokernel({}, 3) == AbelianGroupDescriptor::free(3));
}

TEST_CASE("kernels and lattice coordinates") {
  IntMatrix a{{1, 2, 3}, {0, 2, 4}};
  auto k = integer_kernel(a, 3);
  REQUIRE(k.size() == 1);
  for (const auto& row : a) {
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < 3; ++i) dot += row[i] * k[0][i];
    CHECK(dot == 0);
  }
  auto basis = lattice_basis(IntMatrix{{2, 0}, {0, 4}, {2, 4}}, 2);
  CHECK(basis.size() == 2);
  CHECK(solve_in_basis(basis, {4, 8}).has_value());
  CHECK(!solve_in_basis(basis, {1, 0}).has_value());
}

TEST_CASE("descriptors normalize to a divisibility chain") {
  AbelianGroupDescriptor d(1, {2, 3, 4, 1});
  CHECK(d.invariant_factors() == std::vector<std::uint64_t>{2, 12});
  CHECK(d.to_string() == "Z^1 + Z/2 + Z/12");
  CHECK(AbelianGroupDescriptor{}.to_string() == "0");
  CHECK(AbelianGroupDescriptor::free(2).to_string() == "Z^2");
  CHECK(d.torsion_order() == 24);
  CHECK(d.primary_part(2) == AbelianGroupDescriptor(0, {2, 4}));
  CHECK(direct_sum({AbelianGroupDescriptor::cyclic(2), AbelianGroupDescriptor::cyclic(3)}) ==
        AbelianGroupDescriptor::cyclic(6));
  CHECK(euler_phi(8) == 4);
  CHECK(euler_phi(1) == 1);
  CHECK(factorize(360) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(builtin("C6")) == AbelianGroupDescriptor::cyclic(6));
  CHECK(abelian_invariants(builtin("C2xC4")) == AbelianGroupDescriptor(0, {2, 4}));
  CHECK(abelian_invariants(builtin("C4xC6")) == AbelianGroupDescriptor(0, {2, 12}));
}

TEST_CASE("prime power rings") {
  PrimePowerRing r(3, 4);
  CHECK(r.valuation(r.reduce(18)) == 2);
  CHECK(r.mul(r.inverse(5), 5) == 1);
  CHECK(r.neg(1) == 80);
}
