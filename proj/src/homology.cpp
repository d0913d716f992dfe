#include "bordcalc/homology.hpp"

#include <algorithm>
#include <deque>

#include "bordcalc/error.hpp"

namespace bordcalc {

// ---------------------------------------------------------------------------
// chains

void Cycle2::add(Elem a, Elem b, std::int64_t c) {
  if (a == FiniteGroup::identity || b == FiniteGroup::identity || c == 0) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Cycle2& Cycle2::operator+=(const Cycle2& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

Cycle2& Cycle2::operator-=(const Cycle2& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

Cycle2 operator*(std::int64_t s, const Cycle2& a) {
  Cycle2 out;
  for (const auto& [k, c] : a.terms_) out.add(k.first, k.second, s * c);
  return out;
}

std::map<Elem, std::int64_t> boundary2(const FiniteGroup& g, const Cycle2& chain) {
  std::map<Elem, std::int64_t> out;
  auto put = [&](Elem x, std::int64_t c) {
    if (x == FiniteGroup::identity) return;
    if ((out[x] += c) == 0) out.erase(x);
  };
  for (const auto& [k, c] : chain.terms()) {
    put(k.second, c);
    put(g.mul(k.first, k.second), -c);
    put(k.first, c);
  }
  return out;
}

Cycle2 boundary3(const FiniteGroup& g, Elem a, Elem b, Elem c) {
  Cycle2 out;
  if (a == FiniteGroup::identity || b == FiniteGroup::identity || c == FiniteGroup::identity) return out;
  out.add(b, c, 1);
  out.add(g.mul(a, b), c, -1);
  out.add(a, g.mul(b, c), 1);
  out.add(a, b, -1);
  return out;
}

bool cycle_check(const FiniteGroup& g, const Cycle2& chain, std::uint64_t modulus) {
  for (const auto& [x, c] : boundary2(g, chain)) {
    if (modulus == 0) return false;
    if (c % static_cast<std::int64_t>(modulus) != 0) return false;
  }
  return true;
}

AbelianGroupDescriptor h1(const FiniteGroup& g) {
  auto [q, proj] = quotient(g, commutator_subgroup(g));
  return abelian_invariants(q);
}

SparseIntMat normalized_d2(const FiniteGroup& g) {
  const std::size_t m = g.order() - 1;
  SparseIntMat d(m, m * m);
  for (Elem a = 1; a < g.order(); ++a)
    for (Elem b = 1; b < g.order(); ++b) {
      Cycle2 c;
      c.add(a, b, 1);
      std::size_t col = (a - 1) * m + (b - 1);
      for (const auto& [x, v] : boundary2(g, c)) d.add(x - 1, col, v);
    }
  return d;
}

SparseIntMat normalized_d3(const FiniteGroup& g) {
  const std::size_t m = g.order() - 1;
  SparseIntMat d(m * m, m * m * m);
  std::size_t col = 0;
  for (Elem a = 1; a < g.order(); ++a)
    for (Elem b = 1; b < g.order(); ++b)
      for (Elem c = 1; c < g.order(); ++c, ++col) {
        auto bd = boundary3(g, a, b, c);
        for (const auto& [k, v] : bd.terms()) d.add((k.first - 1) * m + (k.second - 1), col, v);
      }
  return d;
}

AbelianGroupDescriptor h2_dense_snf(const FiniteGroup& g) {
  if (g.order() > 16) fail(ErrorKind::Resource, "dense Smith form of d3 is limited to order 16");
  if (g.order() == 1) return {};
  auto s = smith_normal_form(normalized_d3(g));
  std::vector<std::uint64_t> orders;
  for (auto d : s.diagonal)
    if (d > 1) orders.push_back(d);
  // coker d3 = H2 + B1 with B1 free of rank n-1
  const std::size_t m = g.order() - 1;
  std::uint64_t free = m * m - s.rank;
  if (free < m) fail(ErrorKind::State, "inconsistent bar complex rank");
  return {free - m, orders};
}

std::string Ring::to_string() const {
  if (kind == Kind::Integers) return "Z";
  return "Z/" + std::to_string(p) + "^" + std::to_string(k);
}

unsigned local_precision(std::uint32_t p, std::uint64_t n) {
  unsigned k = 1;
  std::uint64_t q = p;
  while (q < n * n) {
    q *= p;
    ++k;
  }
  return k;
}

bool ClassCoordinates::is_zero() const noexcept {
  return std::all_of(coordinates.begin(), coordinates.end(), [](const LocalCoordinate& c) { return c.value == 0; });
}

// ---------------------------------------------------------------------------
// generator-restricted coordinates for C2 / B2
//
// With S a generating set and a breadth-first tree over right multiplication by S, every (a|b) is
// congruent modulo boundaries to a combination of the (x|s), x != e, s in S:
//   (a|gs) = (a|g) + (ag|s) - (g|s)   (mod d(a|g|s)).
// The boundaries themselves are spanned by d(x|y|s), s in S.

struct BarContext {
  FiniteGroup g;
  std::vector<Elem> gens;
  std::vector<Elem> parent;
  std::vector<std::uint32_t> via;  // generator index of the tree edge into each element

  explicit BarContext(FiniteGroup group) : g(std::move(group)) {
    gens = small_generating_set(g);
    const std::size_t n = g.order();
    parent.assign(n, 0);
    via.assign(n, 0);
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    std::deque<Elem> queue{0};
    while (!queue.empty()) {
      Elem x = queue.front();
      queue.pop_front();
      for (std::uint32_t i = 0; i < gens.size(); ++i) {
        Elem y = g.mul(x, gens[i]);
        if (seen[y]) continue;
        seen[y] = 1;
        parent[y] = x;
        via[y] = i;
        queue.push_back(y);
      }
    }
  }

  std::size_t dim() const noexcept { return (g.order() - 1) * gens.size(); }
  std::uint32_t index(Elem x, std::uint32_t s) const noexcept {
    return static_cast<std::uint32_t>((x - 1) * gens.size() + s);
  }

  void rho(Elem a, Elem b, std::int64_t c, std::map<std::uint32_t, std::int64_t>& out) const {
    if (a == 0 || b == 0 || c == 0) return;
    for (Elem x = b; x != 0; x = parent[x]) {
      Elem p = parent[x];
      Elem ap = g.mul(a, p);
      if (ap != 0) out[index(ap, via[x])] += c;
      if (p != 0) out[index(p, via[x])] -= c;
    }
  }

  ModularEchelon::Sparse rho(const Cycle2& z) const {
    std::map<std::uint32_t, std::int64_t> acc;
    for (const auto& [k, c] : z.terms()) rho(k.first, k.second, c, acc);
    ModularEchelon::Sparse out;
    for (const auto& [i, c] : acc)
      if (c != 0) out.emplace_back(i, c);
    return out;
  }

  /// Streams the images of d3 columns into the echelon, in lexicographic order.
  void fill(ModularEchelon& e, bool exhaustive) const {
    const Elem n = static_cast<Elem>(g.order());
    std::map<std::uint32_t, std::int64_t> acc;
    ModularEchelon::Sparse col;
    auto emit = [&] {
      col.clear();
      for (const auto& [i, c] : acc)
        if (c != 0) col.emplace_back(i, c);
      acc.clear();
      if (!col.empty()) e.insert(col);
    };
    for (Elem x = 1; x < n; ++x)
      for (Elem y = 1; y < n; ++y) {
        if (exhaustive) {
          for (Elem z = 1; z < n; ++z) {
            rho(y, z, 1, acc);
            rho(g.mul(x, y), z, -1, acc);
            rho(x, g.mul(y, z), 1, acc);
            rho(x, y, -1, acc);
            emit();
          }
          continue;
        }
        for (std::uint32_t s = 0; s < gens.size(); ++s) {
          Elem ys = g.mul(y, gens[s]);
          if (parent[ys] == y && via[ys] == s && ys != 0) continue;  // tree edge: column vanishes
          rho(y, gens[s], 1, acc);
          rho(g.mul(x, y), gens[s], -1, acc);
          rho(x, ys, 1, acc);
          rho(x, y, -1, acc);
          emit();
        }
      }
  }
};

// ---------------------------------------------------------------------------
// H2Presentation

const FiniteGroup& H2Presentation::group() const noexcept { return ctx_->g; }

std::vector<ModularQuotient> H2Presentation::local_quotients() const {
  std::vector<ModularQuotient> out;
  for (const auto& l : locals_) out.push_back(l.residual.quotient());
  return out;
}

void H2Presentation::finish() {
  std::vector<std::uint64_t> orders;
  const std::size_t expected_full = ctx_->g.order() - 1;
  for (const auto& l : locals_) {
    const auto& q = l.residual.quotient();
    if (q.full_summands != expected_full)
      fail(ErrorKind::State, "H2 has nonzero free rank (" + std::to_string(q.full_summands) + " full summands, expected " +
                                 std::to_string(expected_full) + ")");
    for (auto e : q.torsion_exponents) {
      std::uint64_t pe = 1;
      for (unsigned i = 0; i < e; ++i) pe *= q.p;
      orders.push_back(pe);
    }
  }
  descriptor_ = AbelianGroupDescriptor(0, orders);
}

ClassCoordinates H2Presentation::evaluate(const Cycle2& z) const {
  if (!cycle_check(ctx_->g, z)) fail(ErrorKind::Domain, "chain is not a cycle");
  auto v = ctx_->rho(z);
  ClassCoordinates out;
  for (const auto& l : locals_) {
    const auto& q = l.residual.quotient();
    auto coords = l.residual.torsion_coordinates(v);
    for (std::size_t t = 0; t < coords.size(); ++t) {
      std::uint32_t m = 1;
      for (unsigned i = 0; i < q.torsion_exponents[t]; ++i) m *= q.p;
      out.coordinates.push_back({q.p, m, coords[t]});
    }
  }
  return out;
}

H2Presentation H2Presentation::quotient(const std::vector<Cycle2>& extra) const {
  std::vector<ModularEchelon::Sparse> images;
  for (const auto& z : extra) {
    if (!cycle_check(ctx_->g, z)) fail(ErrorKind::Domain, "extra chain is not a cycle");
    images.push_back(ctx_->rho(z));
  }
  H2Presentation out;
  out.ctx_ = ctx_;
  out.ring_ = ring_;
  for (const auto& l : locals_) {
    ModularEchelon e = l.echelon;
    for (const auto& v : images) e.insert(v);
    auto r = e.residual();
    out.locals_.push_back({std::move(e), std::move(r)});
  }
  out.finish();
  return out;
}

H2Presentation h2(const FiniteGroup& g, Ring ring, H2Options options) {
  const std::uint64_t n = g.order();
  std::vector<std::pair<std::uint32_t, unsigned>> steps;
  if (ring.kind == Ring::Kind::Integers) {
    if (n > kIntegralOrderCap && !options.allow_large)
      fail(ErrorKind::Precondition, "the Integers ring is limited to order " + std::to_string(kIntegralOrderCap) +
                                        "; use the modular method or allow large groups");
    for (auto [p, e] : factorize(n)) steps.emplace_back(static_cast<std::uint32_t>(p), local_precision(static_cast<std::uint32_t>(p), n));
  } else {
    auto f = factorize(n);
    if (f.size() > 1 || (f.size() == 1 && f[0].first != ring.p))
      fail(ErrorKind::Precondition, "ModPrimePower(" + std::to_string(ring.p) + ") needs a " + std::to_string(ring.p) + "-group");
    PrimePowerRing check(ring.p, ring.k);
    if (static_cast<std::uint64_t>(check.modulus()) < n * n)
      fail(ErrorKind::Precondition, "ModPrimePower needs p^k >= |G|^2");
    if (n > 1) steps.emplace_back(ring.p, ring.k);
  }
  H2Presentation out;
  out.ctx_ = std::make_shared<const BarContext>(g);
  out.ring_ = ring;
  for (auto [p, k] : steps) {
    ModularEchelon e(PrimePowerRing(p, k), out.ctx_->dim());
    out.ctx_->fill(e, options.exhaustive_columns);
    auto r = e.residual();
    out.locals_.push_back({std::move(e), std::move(r)});
  }
  out.finish();
  return out;
}

H2Presentation quotient_classes(const H2Presentation& h, const std::vector<Cycle2>& extra) { return h.quotient(extra); }

ModularQuotient coker_d2_mod(const FiniteGroup& g, std::uint32_t p, unsigned k) {
  const std::size_t m = g.order() - 1;
  ModularEchelon e(PrimePowerRing(p, k), m);
  auto gens = small_generating_set(g);
  // im d2 is spanned by d(a|s), s in S
  for (Elem a = 1; a < g.order(); ++a)
    for (auto s : gens) {
      Cycle2 c;
      c.add(a, s, 1);
      ModularEchelon::Sparse col;
      for (const auto& [x, v] : boundary2(g, c)) col.emplace_back(x - 1, v);
      if (!col.empty()) e.insert(col);
    }
  return e.residual().quotient();
}

}  // namespace bordcalc
