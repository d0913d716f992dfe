#include "bordcalc/lattice.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "bordcalc/error.hpp"

namespace bordcalc {

namespace {

ElementSet conjugate_set(const FiniteGroup& g, Elem x, const std::vector<Elem>& elems) {
  ElementSet s(g.order());
  for (auto y : elems) s.set(g.conj(x, y));
  return s;
}

SubgroupHandle join(const FiniteGroup& g, const SubgroupHandle& h, Elem x) {
  auto gens = h.generators();
  gens.push_back(x);
  return SubgroupHandle::generated_by(g, gens);
}

}  // namespace

std::size_t Lattice::total_subgroups() const noexcept {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.class_size;
  return n;
}

ElementSet conjugacy_key(const FiniteGroup& g, const SubgroupHandle& k) {
  auto elems = k.elements();
  ElementSet best = k.members();
  for (Elem x = 1; x < g.order(); ++x) {
    auto s = conjugate_set(g, x, elems);
    if (s < best) best = std::move(s);
  }
  return best;
}

std::pair<FiniteGroup, GroupMap> weyl(const FiniteGroup& g, const SubgroupHandle& k) {
  auto n = normalizer(g, k);
  auto [ng, inc] = subgroup_as_group(n);
  ElementSet inside(ng.order());
  for (Elem i = 0; i < ng.order(); ++i)
    if (k.contains(inc(i))) inside.set(i);
  return quotient(ng, SubgroupHandle::from_set(ng, std::move(inside), true));
}

Lattice subgroup_classes(const FiniteGroup& g, std::size_t max_classes) {
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;  // every conjugate -> class
  std::vector<SubgroupHandle> reps;
  std::vector<ElementSet> keys;

  auto admit = [&](const SubgroupHandle& k) {
    if (seen.count(k.members())) return;
    if (reps.size() >= max_classes) fail(ErrorKind::Resource, "subgroup class cap exceeded");
    auto elems = k.elements();
    const std::size_t id = reps.size();
    ElementSet best = k.members();
    for (Elem x = 0; x < g.order(); ++x) {
      auto s = conjugate_set(g, x, elems);
      if (s < best) best = s;
      seen.emplace(std::move(s), id);
    }
    reps.push_back(k);
    keys.push_back(std::move(best));
  };

  admit(SubgroupHandle::trivial(g));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const SubgroupHandle h = reps[i];
    std::vector<char> covered(g.order(), 0);
    auto helems = h.elements();
    for (Elem x = 0; x < g.order(); ++x) {
      if (covered[x]) continue;
      for (auto y : helems) covered[g.mul(x, y)] = 1;
      if (h.contains(x)) continue;
      admit(join(g, h, x));
    }
  }

  std::vector<std::size_t> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (reps[a].size() != reps[b].size()) return reps[a].size() < reps[b].size();
    return keys[a] < keys[b];
  });

  Lattice out;
  out.group = g;
  for (auto i : order) {
    SubgroupClass c;
    // the least conjugate is the representative, which makes the lattice independent of discovery order
    c.representative = SubgroupHandle::from_set(g, keys[i], true);
    c.key = keys[i];
    c.normalizer = normalizer(g, c.representative);
    c.class_size = g.order() / c.normalizer.size();
    auto [w, proj] = weyl(g, c.representative);
    c.weyl = std::move(w);
    c.weyl_projection = std::move(proj);
    out.classes.push_back(std::move(c));
  }
  return out;
}

std::vector<SubgroupHandle> brute_force_subgroups(const FiniteGroup& g) {
  if (g.order() > 192) fail(ErrorKind::Resource, "brute-force subgroup enumeration is limited to order 192");
  std::unordered_set<ElementSet, ElementSetHash> found;
  std::vector<SubgroupHandle> all;
  auto add = [&](SubgroupHandle k) {
    if (found.insert(k.members()).second) all.push_back(std::move(k));
  };
  for (Elem x = 0; x < g.order(); ++x) add(SubgroupHandle::generated_by(g, std::vector<Elem>{x}));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (Elem x = 0; x < g.order(); ++x)
      if (!all[i].contains(x)) add(join(g, all[i], x));
  std::sort(all.begin(), all.end(), [](const SubgroupHandle& a, const SubgroupHandle& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return all;
}

}  // namespace bordcalc
