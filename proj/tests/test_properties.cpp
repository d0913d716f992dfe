#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bordcalc/bogomolov.hpp"
#include "bordcalc/bordism.hpp"
#include "bordcalc/builtins.hpp"
#include "bordcalc/homology.hpp"

using namespace bordcalc;

namespace {

constexpr int kCases = 250;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  Elem element(const FiniteGroup& g) { return static_cast<Elem>(below(g.order())); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
};

const std::vector<FiniteGroup>& pool() {
  static const std::vector<FiniteGroup> groups = [] {
    std::vector<FiniteGroup> out;
    for (const char* name : {"C2", "C5", "C2xC2", "C2xC4", "C3xC3", "C4xC4", "C2xC2xC2", "D8", "D10", "D12", "Q8",
                             "S3", "A4", "S4", "C2xQ8", "C3xS3", "C2xA4"})
      out.push_back(builtin(name));
    return out;
  }();
  return groups;
}

std::vector<Elem> random_relabelling(Gen& gen, std::size_t n) {
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin() + 1, perm.end(), gen.rng);
  return perm;
}

// Completes a random prefix with a last entry closing the surface relator, if one exists.
std::optional<SurfaceTuple> random_surface(Gen& gen, const FiniteGroup& g, std::size_t genus) {
  SurfaceTuple t;
  Elem prefix = 0;
  for (std::size_t i = 0; i + 1 < 2 * genus; ++i) t.entries.push_back(gen.element(g));
  for (std::size_t i = 0; i + 1 < genus; ++i)
    prefix = g.mul(prefix, g.commutator(t.entries[2 * i], t.entries[2 * i + 1]));
  const Elem x = t.entries.back();
  for (Elem w = 0; w < g.order(); ++w)
    if (g.commutator(x, w) == g.inv(prefix)) {
      t.entries.push_back(w);
      return t;
    }
  return std::nullopt;
}

std::vector<std::vector<std::uint32_t>> unit_subgroups(std::uint32_t k) {
  std::vector<std::uint32_t> units;
  for (std::uint32_t u = 0; u < k; ++u)
    if (std::gcd(u, k) == 1) units.push_back(u);
  auto closure = [&](std::vector<std::uint32_t> gens) {
    std::set<std::uint32_t> s{1};
    std::vector<std::uint32_t> todo(s.begin(), s.end());
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (auto gval : gens) {
        auto y = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * gval % k);
        if (s.insert(y).second) todo.push_back(y);
      }
    }
    return std::vector<std::uint32_t>(s.begin(), s.end());
  };
  std::set<std::vector<std::uint32_t>> found{closure({})};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto h : std::vector<std::vector<std::uint32_t>>(found.begin(), found.end()))
      for (auto u : units) {
        auto gens = h;
        gens.push_back(u);
        if (found.insert(closure(gens)).second) grew = true;
      }
  }
  return {found.begin(), found.end()};
}

}  // namespace

TEST_CASE("boundary of a boundary vanishes") {
  Gen gen(11);
  for (int i = 0; i < kCases; ++i) {
    const auto& g = gen.pick(pool());
    Elem a = gen.element(g), b = gen.element(g), c = gen.element(g);
    auto d = boundary2(g, boundary3(g, a, b, c));
    for (const auto& [x, v] : d) CHECK(v == 0);
  }
}

TEST_CASE("toral chains are cycles") {
  Gen gen(12);
  for (int i = 0; i < kCases; ++i) {
    const auto& g = gen.pick(pool());
    Elem a = gen.element(g);
    std::vector<Elem> comm;
    for (Elem b = 0; b < g.order(); ++b)
      if (g.mul(a, b) == g.mul(b, a)) comm.push_back(b);
    Elem b = gen.pick(comm);
    Cycle2 z;
    z.add(a, b, 1);
    z.add(b, a, -1);
    CHECK(cycle_check(g, z));
  }
}

TEST_CASE("surface chains are cycles") {
  Gen gen(13);
  std::vector<FiniteGroup> groups = pool();
  groups.push_back(g64());
  int checked = 0;
  while (checked < kCases) {
    const auto& g = gen.pick(groups);
    auto t = random_surface(gen, g, 1 + gen.below(3));
    if (!t) continue;
    ++checked;
    CHECK(surface_relator_holds(g, *t));
    CHECK(cycle_check(g, surface_cycle(g, *t)));
  }
}

TEST_CASE("genus one surfaces give toral classes") {
  Gen gen(14);
  std::vector<std::pair<FiniteGroup, H2Presentation>> groups;
  for (const char* name : {"C3xC3", "Q8"}) {
    auto g = builtin(name);
    groups.emplace_back(g, h2(g));
  }
  for (int i = 0; i < kCases; ++i) {
    const auto& [g, h] = groups[gen.below(groups.size())];
    Elem a = gen.element(g), b = gen.element(g);
    if (g.mul(a, b) != g.mul(b, a)) {
      --i;
      continue;
    }
    Cycle2 toral;
    toral.add(a, b, 1);
    toral.add(b, a, -1);
    CHECK(h.evaluate(surface_cycle(g, SurfaceTuple{{a, b}})) == h.evaluate(toral));
  }
}

TEST_CASE("invariants do not depend on element labels") {
  Gen gen(15);
  std::vector<FiniteGroup> groups = pool();
  auto big = g64();
  for (int i = 0; i < kCases; ++i) {
    const auto& g = (i % 50 == 49) ? big : gen.pick(groups);
    auto r = relabel(g, random_relabelling(gen, g.order()));
    CAPTURE(g.order());
    CHECK(h2(r).descriptor() == h2(g).descriptor());
    CHECK(bogomolov(r).descriptor == bogomolov(g).descriptor);
    if (g.order() <= 24 || g.order() == 64) {
      auto f = gen.below(2) ? Flavor::U : Flavor::SO;
      CHECK(omega2(r, f).total == omega2(g, f).total);
    }
  }
}

TEST_CASE("faithful character orbit counts") {
  std::size_t cases = 0;
  for (std::uint32_t k = 2; k <= 100; ++k) {
    for (const auto& a : unit_subgroups(k)) {
      ++cases;
      auto counts = hominj_orbit_counts(k, a);
      CHECK(counts.u_count * a.size() == euler_phi(k));
      if (k > 2) {
        std::set<std::uint32_t> signed_a(a.begin(), a.end());
        for (auto u : a) signed_a.insert(k - u);
        CHECK(counts.so_count * signed_a.size() == euler_phi(k));
      }
    }
  }
  CHECK(cases >= 200);
}
