#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

#include "bordcalc/bogomolov.hpp"
#include "bordcalc/builtins.hpp"
#include "bordcalc/error.hpp"
#include "bordcalc/presentation.hpp"

using namespace bordcalc;

namespace {

SurfaceTuple tuple(const FiniteGroup& g, std::initializer_list<const char*> words) {
  SurfaceTuple t;
  for (auto w : words) t.entries.push_back(evaluate_word(g, w));
  return t;
}

// Every element's action as a dense matrix, propagated along the Cayley graph.
using Mat = std::vector<std::vector<std::int64_t>>;
std::vector<Mat> element_actions(const FiniteGroup& q, const ActionModule& m) {
  const auto r = m.moduli.size();
  Mat id(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
  std::vector<Mat> act(q.order());
  std::vector<bool> seen(q.order(), false);
  act[0] = id;
  seen[0] = true;
  std::vector<Elem> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Elem x = queue[h];
    for (std::size_t gi = 0; gi < q.generators().size(); ++gi) {
      Elem y = q.mul(x, q.generators()[gi]);
      if (seen[y]) continue;
      seen[y] = true;
      const auto& a = act[x];
      const auto& b = m.generator_matrices[gi];
      Mat c(r, std::vector<std::int64_t>(r, 0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          std::int64_t s = 0;
          for (std::size_t l = 0; l < r; ++l) s += a[i][l] * b[l][j];
          c[i][j] = ((s % static_cast<std::int64_t>(m.moduli[i])) + m.moduli[i]) % m.moduli[i];
        }
      act[y] = c;
      queue.push_back(y);
    }
  }
  return act;
}

// |H^1| by listing every function Q -> M.
std::uint64_t brute_force_h1_order(const FiniteGroup& q, const ActionModule& m) {
  const auto r = m.moduli.size();
  std::vector<std::vector<std::int64_t>> elems{{}};
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& e : elems)
      for (std::uint64_t v = 0; v < m.moduli[i]; ++v) {
        auto f = e;
        f.push_back(static_cast<std::int64_t>(v));
        next.push_back(f);
      }
    elems = next;
  }
  auto act = element_actions(q, m);
  auto apply = [&](Elem x, const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> out(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < r; ++j) s += act[x][i][j] * v[j];
      out[i] = s % static_cast<std::int64_t>(m.moduli[i]);
    }
    return out;
  };
  auto add = [&](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b, int sign) {
    for (std::size_t i = 0; i < r; ++i) {
      auto mod = static_cast<std::int64_t>(m.moduli[i]);
      a[i] = ((a[i] + sign * b[i]) % mod + mod) % mod;
    }
    return a;
  };
  const std::size_t n = q.order(), msize = elems.size();
  std::uint64_t cocycles = 0;
  std::vector<std::size_t> choice(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == n) {
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          if (elems[choice[q.mul(x, y)]] != add(elems[choice[x]], apply(x, elems[choice[y]]), 1)) return;
      ++cocycles;
      return;
    }
    for (std::size_t v = 0; v < msize; ++v) {
      choice[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  std::set<std::vector<std::vector<std::int64_t>>> principal;
  for (const auto& mm : elems) {
    std::vector<std::vector<std::int64_t>> f;
    for (Elem x = 0; x < n; ++x) f.push_back(add(apply(x, mm), mm, -1));
    principal.insert(f);
  }
  return cocycles / principal.size();
}

}  // namespace

TEST_CASE("toral cycles") {
  CHECK(toral_cycles(cyclic_group(2)).empty());
  auto v = builtin("C2xC2");
  auto t = toral_cycles(v);
  CHECK(t.size() == 3);
  for (const auto& z : t) CHECK(cycle_check(v, z));
}

TEST_CASE("vanishing for the classical families") {
  for (const char* name : {"C12", "C4xC4", "D8", "D12", "D16", "S3", "S4", "S5", "A4", "A5", "Q8", "C2xQ8"}) {
    CAPTURE(name);
    CHECK(bogomolov(builtin(name)).descriptor.is_trivial());
  }
}

TEST_CASE("the order 64 example") {
  auto g = g64();
  auto b = bogomolov(g);
  CHECK(b.descriptor == AbelianGroupDescriptor::cyclic(2));
  CHECK(b.order == 2);
  auto m = bogomolov(g, BogomolovMethod::OrderModular);
  CHECK(m.order == 2);
  CHECK(m.structure_known);
  CHECK(m.descriptor == AbelianGroupDescriptor::cyclic(2));
}

TEST_CASE("order-modular method needs a p-group") {
  try {
    bogomolov(symmetric(3), BogomolovMethod::OrderModular);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("surface chains") {
  auto g = g64();
  auto t = tuple(g, {"a", "c", "a*b", "c"});
  CHECK(surface_relator_holds(g, t));
  CHECK(cycle_check(g, surface_cycle(g, t)));

  SurfaceTuple ids{{0, 0, 0, 0}};
  CHECK(surface_cycle(g, ids).empty());
}

TEST_CASE("genus one classes are toral") {
  for (const char* name : {"C3xC3", "Q8"}) {
    auto g = builtin(name);
    auto h = h2(g);
    for_each_commuting_pair(g, [&](Elem a, Elem b) {
      Cycle2 toral;
      toral.add(a, b, 1);
      toral.add(b, a, -1);
      CHECK(h.evaluate(surface_cycle(g, SurfaceTuple{{a, b}})) == h.evaluate(toral));
    });
  }
}

TEST_CASE("witness fixtures") {
  auto g = g64();
  auto b = bogomolov(g);
  auto w = witness_verify(g, tuple(g, {"a", "c", "a*b", "c"}), &*b.evaluator);
  CHECK(w.relator_ok);
  CHECK(w.generates_group);
  CHECK(w.evaluated);
  CHECK(w.nontrivial);

  auto h = g243();
  auto m = bogomolov(h, BogomolovMethod::OrderModular);
  CHECK(m.order == 3);
  auto w3 = witness_verify(h, tuple(h, {"a", "b^6", "c", "b"}), &*m.evaluator);
  CHECK(w3.relator_ok);
  CHECK(w3.generates_group);
  CHECK(w3.nontrivial);

  auto a = builtin("C2xC4");
  auto ba = bogomolov(a);
  SurfaceTuple t{{1, 2, 3, 4}};
  auto wa = witness_verify(a, t, &*ba.evaluator);
  CHECK(wa.relator_ok);
  CHECK(!wa.nontrivial);

  auto unevaluated = witness_verify(g, tuple(g, {"a", "c", "a*b", "c"}), nullptr);
  CHECK(!unevaluated.evaluated);
  CHECK(!unevaluated.skipped_reason.empty());
}

TEST_CASE("witness search") {
  auto s = symmetric(4);
  CHECK(!witness_search(s, 2, 1000, 7, *bogomolov(s).evaluator).has_value());

  auto g = g64();
  auto b = bogomolov(g);
  auto found = witness_search(g, 2, 1000000, 3, *b.evaluator);
  REQUIRE(found.has_value());
  auto w = witness_verify(g, *found, &*b.evaluator);
  CHECK(w.relator_ok);
  CHECK(w.nontrivial);
  auto again = witness_search(g, 2, 1000000, 3, *b.evaluator);
  CHECK(again->entries == found->entries);
}

TEST_CASE("first cohomology of the quaternion action") {
  auto q = quaternion8();
  ActionModule m{{8}, {{{3}}, {{5}}}};
  CHECK(lhs_h1_crosscheck(q, m) == AbelianGroupDescriptor::cyclic(2));
}

TEST_CASE("trivial actions give homomorphisms") {
  for (const char* name : {"C2xC2", "S3", "C6", "Q8"}) {
    auto q = builtin(name);
    for (std::uint64_t n : {2u, 4u, 6u}) {
      ActionModule m{{n}, std::vector<std::vector<std::vector<std::int64_t>>>(q.generators().size(), {{1}})};
      const auto ab = h1(q);
      std::vector<std::uint64_t> hom;
      for (auto d : ab.invariant_factors()) hom.push_back(std::gcd(d, n));
      CHECK(lhs_h1_crosscheck(q, m) == AbelianGroupDescriptor(0, hom));
    }
  }
}

TEST_CASE("first cohomology against brute force") {
  auto c2 = cyclic_group(2);
  ActionModule neg3{{3}, {{{-1}}}};
  CHECK(lhs_h1_crosscheck(c2, neg3).is_trivial());
  CHECK(brute_force_h1_order(c2, neg3) == 1);

  struct Case {
    FiniteGroup q;
    ActionModule m;
  };
  auto v4 = builtin("C2xC2");
  std::vector<Case> cases{
      {c2, {{4}, {{{-1}}}}},
      {c2, {{2, 2}, {{{0, 1}, {1, 0}}}}},
      {cyclic_group(4), {{5}, {{{2}}}}},
      {cyclic_group(3), {{2, 2}, {{{0, 1}, {1, 1}}}}},
      {symmetric(3), {{3}, {{{-1}}, {{1}}}}},
      {v4, {{2, 2}, std::vector<std::vector<std::vector<std::int64_t>>>(v4.generators().size(), {{0, 1}, {1, 0}})}},
  };
  for (const auto& c : cases) {
    CHECK(lhs_h1_crosscheck(c.q, c.m).torsion_order() == brute_force_h1_order(c.q, c.m));
  }
}
