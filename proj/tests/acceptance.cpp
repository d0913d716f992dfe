#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bordcalc/bogomolov.hpp"
#include "bordcalc/bordism.hpp"
#include "bordcalc/builtins.hpp"
#include "bordcalc/homology.hpp"
#include "bordcalc/lattice.hpp"
#include "bordcalc/presentation.hpp"
#include "cli_runner.hpp"

using namespace bordcalc;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void criterion_1(Check& c) {
  auto t = Clock::now();
  auto b = bogomolov(g64(), BogomolovMethod::Integral);
  double s = seconds_since(t);
  c.expect(b.descriptor == AbelianGroupDescriptor::cyclic(2), "G64 descriptor is " + b.descriptor.to_string());
  c.expect(s <= 300, "time");
  c.detail << " G64: " << b.descriptor.to_string() << " in " << s << " s";
}

void criterion_2(Check& c) {
  auto t = Clock::now();
  auto g = g243();
  auto b = bogomolov(g, BogomolovMethod::OrderModular);
  double s = seconds_since(t);
  c.expect(g.order() == 243, "order");
  c.expect(b.order == 3, "order of B0 is " + std::to_string(b.order));
  c.expect(s <= 3600, "time");
  c.detail << " G243: |B0| = " << b.order << " in " << s << " s";
}

void criterion_3(Check& c) {
  std::vector<std::string> names;
  for (int n = 1; n <= 16; ++n) names.push_back("C" + std::to_string(n));
  for (int m = 2; m <= 36; ++m)
    for (int n = m; m * n <= 36; ++n) names.push_back("C" + std::to_string(m) + "xC" + std::to_string(n));
  for (int k = 2; k <= 8; ++k) names.push_back("D" + std::to_string(2 * k));
  for (const char* s : {"Q8", "A4", "S4", "A5"}) names.push_back(s);
  std::size_t failures = 0;
  for (const auto& name : names) {
    auto b = bogomolov(builtin(name));
    if (!b.descriptor.is_trivial()) {
      ++failures;
      c.expect(false, name);
    }
  }
  c.detail << " " << names.size() << " groups, " << failures << " failures";
}

void criterion_4(Check& c) {
  auto g = g64();
  auto b = bogomolov(g);
  SurfaceTuple t;
  for (auto w : {"a", "c", "a*b", "c"}) t.entries.push_back(evaluate_word(g, w));
  auto w = witness_verify(g, t, &*b.evaluator);
  c.expect(w.relator_ok && w.generates_group && w.nontrivial, "G64 tuple");

  auto h = g243();
  auto m = bogomolov(h, BogomolovMethod::OrderModular);
  SurfaceTuple u;
  for (auto x : {"a", "b^6", "c", "b"}) u.entries.push_back(evaluate_word(h, x));
  auto w3 = witness_verify(h, u, &*m.evaluator);
  c.expect(w3.relator_ok && w3.generates_group, "G243 relator and generation");
  c.expect(w3.evaluated && w3.nontrivial, "G243 class");
  c.detail << " G64 (relator " << w.relator_ok << ", generates " << w.generates_group << ", nontrivial "
           << w.nontrivial << "); G243 (relator " << w3.relator_ok << ", generates " << w3.generates_group
           << ", nontrivial " << w3.nontrivial << ", mod-3 evaluator)";
}

void criterion_5(Check& c) {
  auto g = g64();
  c.expect(torsion_omega2(g) == AbelianGroupDescriptor::cyclic(2), "torsion of G64");
  for (auto f : {Flavor::U, Flavor::SO})
    for (const auto& k : omega2(g, f).contributions)
      if (k.order > 1) c.expect(k.torsion.is_trivial(), "proper Weyl group has nontrivial B0");
  std::size_t groups = 0;
  for (const auto& name : builtin_catalog()) {
    auto h = builtin(name);
    auto tu = omega2(h, Flavor::U).total, ts = omega2(h, Flavor::SO).total;
    c.expect(AbelianGroupDescriptor(0, tu.invariant_factors()) == AbelianGroupDescriptor(0, ts.invariant_factors()),
             "flavors disagree on " + name);
    ++groups;
  }
  auto h = g243();
  auto tu = omega2(h, Flavor::U).total, ts = omega2(h, Flavor::SO).total;
  c.expect(tu.invariant_factors() == ts.invariant_factors(), "flavors disagree on G243");
  c.detail << " torsion(G64) = " << torsion_omega2(g).to_string() << "; flavors agree on " << groups + 1 << " groups";
}

void criterion_6(Check& c) {
  auto s3 = symmetric(3), c1 = cyclic_group(1), c2 = cyclic_group(2);
  struct Row {
    FiniteGroup g;
    Flavor f;
    AbelianGroupDescriptor want;
    const char* label;
  };
  for (const auto& r : std::vector<Row>{{s3, Flavor::U, AbelianGroupDescriptor::free(6), "S3 U"},
                                        {s3, Flavor::SO, AbelianGroupDescriptor::free(1), "S3 SO"},
                                        {c1, Flavor::U, AbelianGroupDescriptor::free(1), "C1 U"},
                                        {c1, Flavor::SO, AbelianGroupDescriptor{}, "C1 SO"},
                                        {c2, Flavor::U, AbelianGroupDescriptor::free(3), "C2 U"}}) {
    auto got = omega2(r.g, r.f).total;
    c.expect(got == r.want, std::string(r.label) + " gave " + got.to_string());
    c.detail << " " << r.label << "=" << got.to_string();
  }
}

void criterion_7(Check& c) {
  double worst = 0;
  auto timed = [&](const FiniteGroup& g) {
    auto t = Clock::now();
    auto d = h2(g, Ring::integers()).descriptor();
    worst = std::max(worst, seconds_since(t));
    return d;
  };
  for (std::uint32_t n = 2; n <= 9; ++n) c.expect(timed(cyclic_group(n)).is_trivial(), "C" + std::to_string(n));
  for (auto [m, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 4}, {3, 3}, {4, 4}, {6, 4}})
    c.expect(timed(direct_product(cyclic_group(m), cyclic_group(n))) == AbelianGroupDescriptor::cyclic(std::gcd(m, n)),
             "C" + std::to_string(m) + "xC" + std::to_string(n));
  c.expect(timed(quaternion8()).is_trivial(), "Q8");
  c.expect(worst <= 10, "time");
  c.detail << " 14 groups, slowest " << worst << " s";
}

void criterion_8(Check& c) {
  std::mt19937_64 rng(2024);
  auto below = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<FiniteGroup> pool;
  for (const char* n : {"C2xC4", "C3xC3", "D8", "Q8", "S3", "A4", "S4", "C2xQ8"}) pool.push_back(builtin(n));
  const int cases = 200;
  int d2d3 = 0, toral = 0, surface = 0, genus1 = 0, relabel_ok = 0, hominj = 0;
  for (int i = 0; i < cases; ++i) {
    const auto& g = pool[below(pool.size())];
    auto n = g.order();
    Elem a = static_cast<Elem>(below(n)), b = static_cast<Elem>(below(n)), x = static_cast<Elem>(below(n));
    bool zero = true;
    for (const auto& [e, v] : boundary2(g, boundary3(g, a, b, x))) zero = zero && v == 0;
    d2d3 += zero;
    std::vector<Elem> comm;
    for (Elem y = 0; y < n; ++y)
      if (g.mul(a, y) == g.mul(y, a)) comm.push_back(y);
    Elem y = comm[below(comm.size())];
    Cycle2 t;
    t.add(a, y, 1);
    t.add(y, a, -1);
    toral += cycle_check(g, t);
    SurfaceTuple s{{a, b, x}};
    Elem need = g.inv(g.commutator(a, b));
    for (Elem w = 0; w < n; ++w)
      if (g.commutator(x, w) == need) {
        s.entries.push_back(w);
        break;
      }
    if (s.entries.size() == 4) surface += cycle_check(g, surface_cycle(g, s));
    else surface += cycle_check(g, surface_cycle(g, SurfaceTuple{{a, y}}));
  }
  for (const char* name : {"C3xC3", "Q8"}) {
    auto g = builtin(name);
    auto h = h2(g);
    for (int i = 0; i < cases / 2; ++i) {
      Elem a, b;
      do {
        a = static_cast<Elem>(below(g.order()));
        b = static_cast<Elem>(below(g.order()));
      } while (g.mul(a, b) != g.mul(b, a));
      Cycle2 t;
      t.add(a, b, 1);
      t.add(b, a, -1);
      genus1 += h.evaluate(surface_cycle(g, SurfaceTuple{{a, b}})) == h.evaluate(t);
    }
  }
  for (int i = 0; i < cases; ++i) {
    const auto& g = pool[below(pool.size())];
    std::vector<Elem> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    auto r = relabel(g, perm);
    auto f = below(2) ? Flavor::U : Flavor::SO;
    relabel_ok += h2(r).descriptor() == h2(g).descriptor() && bogomolov(r).descriptor == bogomolov(g).descriptor &&
                  omega2(r, f).total == omega2(g, f).total;
  }
  int hominj_cases = 0;
  for (std::uint32_t k = 2; k <= 100; ++k) {
    std::vector<std::uint32_t> units;
    for (std::uint32_t u = 1; u < k; ++u)
      if (std::gcd(u, k) == 1) units.push_back(u);
    for (auto gen : units) {
      std::vector<std::uint32_t> a{1};
      for (std::uint64_t v = gen; v != 1; v = v * gen % k) a.push_back(static_cast<std::uint32_t>(v));
      ++hominj_cases;
      hominj += hominj_orbit_counts(k, a).u_count * a.size() == euler_phi(k);
    }
  }
  c.expect(d2d3 == cases, "d2 d3");
  c.expect(toral == cases, "toral");
  c.expect(surface == cases, "surface");
  c.expect(genus1 == cases, "genus one");
  c.expect(relabel_ok == cases, "relabelling");
  c.expect(hominj == hominj_cases && hominj_cases >= 200, "hominj");
  c.detail << " d2d3 " << d2d3 << "/" << cases << ", toral " << toral << "/" << cases << ", surface " << surface << "/"
           << cases << ", genus-1 " << genus1 << "/" << cases << ", relabel " << relabel_ok << "/" << cases
           << ", hominj " << hominj << "/" << hominj_cases;
}

void criterion_9(Check& c) {
  std::size_t groups = 0;
  for (const auto& name : builtin_catalog()) {
    auto g = builtin(name);
    if (g.order() > 48) continue;
    ++groups;
    auto l = subgroup_classes(g);
    auto all = brute_force_subgroups(g);
    std::set<ElementSet> keys;
    for (const auto& k : all) keys.insert(conjugacy_key(g, k));
    c.expect(l.total_subgroups() == all.size() && keys.size() == l.classes.size(), name);
  }
  auto s4 = subgroup_classes(symmetric(4));
  c.expect(s4.classes.size() == 11 && s4.total_subgroups() == 30, "S4");
  c.expect(subgroup_classes(alternating(4)).total_subgroups() == 10, "A4");
  c.detail << " " << groups << " groups; S4 " << s4.total_subgroups() << " subgroups in " << s4.classes.size()
           << " classes";
}

void criterion_10(Check& c) {
  std::string tmpl = (fs::temp_directory_path() / "bordcalc-accept-XXXXXX").string();
  fs::path dir = ::mkdtemp(tmpl.data());
  const std::vector<std::string> commands{
      "group -g builtin:G64",
      "subgroups -g builtin:S4",
      "subgroups -g builtin:G64",
      "h2 -g builtin:C6xC4",
      "h2 -g builtin:G64 --method order-modular",
      "bogomolov -g builtin:G64",
      "bogomolov -g builtin:G243 --method order-modular",
      "bordism -g builtin:S3 --flavor u",
      "bordism -g builtin:G64 --flavor so",
      "sk -g builtin:G64",
      "sk --point 8",
      "witness verify -g builtin:G64 --tuple a,c,a*b,c --genus 2",
      "witness verify -g builtin:G243 --tuple a,b^6,c,b --method order-modular",
      "witness search -g builtin:G64 --budget 100000 --seed 5",
      "tables dim2 -g builtin:C5 --flavor so",
      "tables dim3 -g builtin:D10 --flavor so",
  };
  std::size_t runs = 0;
  for (const auto& cmd : commands)
    for (const char* mode : {"", " --json"}) {
      const std::string cache = " --cache-dir " + shell_quote((dir / "cache").string());
      auto cold = run_cli(cmd + mode + cache);
      auto warm = run_cli(cmd + mode + cache);
      auto none1 = run_cli(cmd + mode + " --no-cache");
      auto none2 = run_cli(cmd + mode + " --no-cache");
      runs += 4;
      bool same = cold.exit_code == 0 && cold.out == warm.out && cold.out == none1.out && none1.out == none2.out &&
                  warm.exit_code == 0 && none1.exit_code == 0 && none2.exit_code == 0;
      c.expect(same, cmd + mode);
    }
  fs::remove_all(dir);
  c.detail << " " << commands.size() * 2 << " command forms, " << runs << " runs";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"G64 Bogomolov multiplier is Z/2 (integral)", criterion_1},
      {"G243 Bogomolov multiplier has order 3 (order-modular)", criterion_2},
      {"vanishing suite", criterion_3},
      {"witness fixtures", criterion_4},
      {"torsion consistency", criterion_5},
      {"rank formulas", criterion_6},
      {"homology oracle suite", criterion_7},
      {"property suites", criterion_8},
      {"subgroup lattice oracle", criterion_9},
      {"CLI determinism", criterion_10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << seconds_since(t) << " s)" << c.detail.str() << std::endl;
    failures += !c.ok;
  }
  return failures == 0 ? 0 : 1;
}
