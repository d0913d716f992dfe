#include "bordcalc/bogomolov.hpp"

#include <deque>
#include <random>

#include "bordcalc/error.hpp"
#include "bordcalc/intmat.hpp"

namespace bordcalc {

std::vector<Cycle2> toral_cycles(const FiniteGroup& g) {
  std::vector<Cycle2> out;
  for_each_commuting_pair(g, [&](Elem a, Elem b) {
    Cycle2 c;
    c.add(a, b, 1);
    c.add(b, a, -1);
    out.push_back(std::move(c));
  });
  return out;
}

std::string BogomolovResult::summary() const {
  if (structure_known) return descriptor.to_string();
  return "order " + std::to_string(order);
}

namespace {

std::uint64_t ipow(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= p;
  return r;
}

std::uint64_t exponent_of(const AbelianGroupDescriptor& d) {
  return d.invariant_factors().empty() ? 1 : d.invariant_factors().back();
}

}  // namespace

BogomolovResult bogomolov(const FiniteGroup& g, BogomolovMethod method, BogomolovOptions options) {
  BogomolovResult r;
  r.method = method;
  auto torals = toral_cycles(g);
  if (method == BogomolovMethod::Integral) {
    H2Options o;
    o.allow_large = options.allow_large;
    auto h = h2(g, Ring::integers(), o);
    r.h2 = h.descriptor();
    r.evaluator = h.quotient(torals);
    r.descriptor = r.evaluator->descriptor();
    r.order = r.descriptor.torsion_order();
    r.exponent_bound = exponent_of(r.descriptor);
    r.structure_known = true;
    return r;
  }

  const std::uint64_t n = g.order();
  if (n == 1) {
    r.h2 = {};
    r.descriptor = {};
    r.notes.push_back("trivial group");
    return r;
  }
  auto f = factorize(n);
  if (f.size() != 1) fail(ErrorKind::Precondition, "the order-modular method needs a p-group");
  const auto p = static_cast<std::uint32_t>(f[0].first);
  const unsigned k = local_precision(p, n);
  auto h = h2(g, Ring::mod_prime_power(p, k));
  r.h2 = h.descriptor();
  r.evaluator = h.quotient(torals);
  const auto q3 = r.evaluator->local_quotients().at(0);
  const auto q2 = coker_d2_mod(g, p, k);
  const auto h1p = h1(g).primary_part(p);
  std::uint64_t log_h1 = 0;
  for (auto d = h1p.torsion_order(); d > 1; d /= p) ++log_h1;
  if (q2.log_order() != log_h1)
    fail(ErrorKind::State, "bar-complex H1 disagrees with the abelianization");
  // |coker(d3 + torals)| * |coker d2| = |B0| * |H1(p)| * p^(k(n-1)) * |H1(p)| / |H1(p)|
  const std::uint64_t top = q3.log_order() + q2.log_order();
  const std::uint64_t bottom = static_cast<std::uint64_t>(k) * (n - 1) + log_h1;
  if (top < bottom) fail(ErrorKind::State, "inconsistent modular orders");
  const std::uint64_t log_b0 = top - bottom;
  r.order = ipow(p, log_b0);
  r.exponent_bound = exponent_of(r.h2);
  r.notes.push_back("coefficients Z/" + std::to_string(p) + "^" + std::to_string(k));
  if (log_b0 <= 1) {
    r.structure_known = true;
    r.descriptor = log_b0 == 0 ? AbelianGroupDescriptor{} : AbelianGroupDescriptor::cyclic(p);
  } else {
    r.structure_known = false;
    r.notes.push_back("structure not forced by the order");
  }
  return r;
}

bool surface_relator_holds(const FiniteGroup& g, const SurfaceTuple& t) {
  if (t.entries.size() % 2 != 0 || t.entries.empty()) return false;
  Elem acc = FiniteGroup::identity;
  for (std::size_t i = 0; i < t.entries.size(); i += 2) acc = g.mul(acc, g.commutator(t.entries[i], t.entries[i + 1]));
  return acc == FiniteGroup::identity;
}

Cycle2 surface_cycle(const FiniteGroup& g, const SurfaceTuple& t) {
  if (t.entries.size() % 2 != 0 || t.entries.empty()) fail(ErrorKind::Domain, "a surface tuple has 2g >= 2 entries");
  if (!surface_relator_holds(g, t)) fail(ErrorKind::Domain, "tuple violates the surface relator");
  std::vector<Elem> letters;
  for (std::size_t i = 0; i < t.entries.size(); i += 2) {
    Elem x = t.entries[i], y = t.entries[i + 1];
    letters.insert(letters.end(), {x, y, g.inv(x), g.inv(y)});
  }
  Cycle2 c;
  Elem prefix = letters[0];
  for (std::size_t j = 1; j < letters.size(); ++j) {
    c.add(prefix, letters[j], 1);
    prefix = g.mul(prefix, letters[j]);
  }
  for (auto u : t.entries) c.add(u, g.inv(u), -1);
  if (!cycle_check(g, c)) fail(ErrorKind::State, "surface chain is not a cycle");
  return c;
}

WitnessReport witness_verify(const FiniteGroup& g, const SurfaceTuple& t, const H2Presentation* quotient) {
  WitnessReport w;
  w.tuple = t;
  w.relator_ok = surface_relator_holds(g, t);
  w.generates_group = SubgroupHandle::generated_by(g, t.entries).size() == g.order();
  if (!w.relator_ok) {
    w.skipped_reason = "relator fails";
    return w;
  }
  if (quotient == nullptr) {
    w.skipped_reason = "no class evaluator available";
    return w;
  }
  w.class_coordinates = quotient->evaluate(surface_cycle(g, t));
  w.evaluated = true;
  w.nontrivial = !w.class_coordinates.is_zero();
  return w;
}

std::optional<SurfaceTuple> witness_search(const FiniteGroup& g, std::size_t genus, std::uint64_t budget,
                                           std::uint64_t seed, const H2Presentation& quotient) {
  if (genus < 1) fail(ErrorKind::Domain, "genus must be at least 1");
  if (quotient.descriptor().is_trivial()) return std::nullopt;  // every class vanishes
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
  SurfaceTuple t;
  t.entries.resize(2 * genus);
  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    for (std::size_t i = 0; i + 1 < t.entries.size(); ++i) t.entries[i] = pick(rng);
    Elem prefix = FiniteGroup::identity;
    for (std::size_t i = 0; i + 2 < t.entries.size(); i += 2)
      prefix = g.mul(prefix, g.commutator(t.entries[i], t.entries[i + 1]));
    const Elem target = g.inv(prefix);
    const Elem x = t.entries[t.entries.size() - 2];
    for (Elem w = 0; w < g.order(); ++w) {
      if (g.commutator(x, w) != target) continue;
      t.entries.back() = w;
      if (!quotient.evaluate(surface_cycle(g, t)).is_zero()) return t;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// H^1(Q, M)

AbelianGroupDescriptor lhs_h1_crosscheck(const FiniteGroup& q, const ActionModule& mod) {
  const std::size_t r = mod.moduli.size();
  const std::size_t s = q.generators().size();
  if (mod.generator_matrices.size() != s) fail(ErrorKind::Domain, "one action matrix per generator of Q required");
  for (auto m : mod.moduli)
    if (m < 2) fail(ErrorKind::Domain, "module moduli must be at least 2");
  using Mat = std::vector<std::vector<std::int64_t>>;
  auto mi = [&](std::size_t i) { return static_cast<std::int64_t>(mod.moduli[i]); };
  auto reduce = [&](Mat a) {
    for (std::size_t i = 0; i < r; ++i)
      for (auto& x : a[i]) x = ((x % mi(i)) + mi(i)) % mi(i);
    return a;
  };
  for (const auto& a : mod.generator_matrices) {
    if (a.size() != r) fail(ErrorKind::Domain, "action matrix has the wrong size");
    for (std::size_t i = 0; i < r; ++i) {
      if (a[i].size() != r) fail(ErrorKind::Domain, "action matrix has the wrong size");
      // column j must send m_j e_j to zero
      for (std::size_t j = 0; j < r; ++j)
        if ((a[i][j] * mi(j)) % mi(i) != 0) fail(ErrorKind::Domain, "action not well defined modulo the invariant factors");
    }
  }
  auto mul = [&](const Mat& a, const Mat& b) {
    Mat c(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
    return reduce(c);
  };
  Mat id(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
  id = reduce(id);
  std::vector<Mat> gens;
  for (const auto& a : mod.generator_matrices) gens.push_back(reduce(a));

  const std::size_t n = q.order(), unknowns = s * r;
  // f(x) = F[x] u with u = (f(g_1), ..., f(g_s)); f(x g) = f(x) + x.f(g)
  std::vector<Mat> act(n), cocycle(n);
  act[0] = id;
  cocycle[0] = Mat(r, std::vector<std::int64_t>(unknowns, 0));
  IntMatrix constraints;  // each row paired with the component it lives in
  std::vector<std::size_t> constraint_component;
  std::deque<Elem> queue{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < s; ++gi) {
      Elem y = q.mul(x, q.generators()[gi]);
      Mat a = mul(act[x], gens[gi]);
      Mat f = cocycle[x];
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) f[i][gi * r + j] += act[x][i][j];
      f = reduce(f);
      if (!seen[y]) {
        seen[y] = 1;
        act[y] = std::move(a);
        cocycle[y] = std::move(f);
        queue.push_back(y);
        continue;
      }
      if (a != act[y]) fail(ErrorKind::Domain, "action is not a homomorphism from Q");
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::int64_t> row(unknowns);
        bool nonzero = false;
        for (std::size_t j = 0; j < unknowns; ++j) {
          row[j] = ((f[i][j] - cocycle[y][i][j]) % mi(i) + mi(i)) % mi(i);
          nonzero |= row[j] != 0;
        }
        if (nonzero) {
          constraints.push_back(std::move(row));
          constraint_component.push_back(i);
        }
      }
    }
  }
  // L = {u : D u = 0 in M^c}: kernel of [D | -diag(m)] projected to u
  const std::size_t c = constraints.size();
  IntMatrix ext;
  for (std::size_t k = 0; k < c; ++k) {
    auto row = constraints[k];
    row.resize(unknowns + c, 0);
    row[unknowns + k] = -mi(constraint_component[k]);
    ext.push_back(std::move(row));
  }
  IntMatrix lgens;
  if (c == 0) {
    for (std::size_t j = 0; j < unknowns; ++j) {
      std::vector<std::int64_t> e(unknowns, 0);
      e[j] = 1;
      lgens.push_back(std::move(e));
    }
  } else {
    for (auto v : integer_kernel(ext, unknowns + c)) {
      v.resize(unknowns);
      lgens.push_back(std::move(v));
    }
  }
  auto lbasis = lattice_basis(lgens, unknowns);
  if (lbasis.size() != unknowns) fail(ErrorKind::State, "cocycle lattice is not of full rank");
  // B^1 + (m-lattice): delta(e_j) = ((g_i - 1) e_j)_i and m_j e_(i,j)
  IntMatrix rel;
  auto add_rel = [&](const std::vector<std::int64_t>& v) {
    auto coords = solve_in_basis(lbasis, v);
    if (!coords) fail(ErrorKind::State, "coboundary is not a cocycle");
    rel.push_back(std::move(*coords));
  };
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::int64_t> v(unknowns, 0);
    for (std::size_t gi = 0; gi < s; ++gi)
      for (std::size_t i = 0; i < r; ++i) v[gi * r + i] = gens[gi][i][j] - (i == j ? 1 : 0);
    add_rel(v);
  }
  for (std::size_t gi = 0; gi < s; ++gi)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::int64_t> v(unknowns, 0);
      v[gi * r + j] = mi(j);
      add_rel(v);
    }
  auto h = cokernel(rel, unknowns);
  if (h.free_rank() != 0) fail(ErrorKind::State, "H^1 with finite coefficients came out infinite");
  return h;
}

}  // namespace bordcalc
