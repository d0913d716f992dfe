#include "bordcalc/group.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "bordcalc/error.hpp"

namespace bordcalc {

// ---------------------------------------------------------------------------
// ElementSet

std::size_t ElementSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Elem> ElementSet::elements() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      out.push_back(static_cast<Elem>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

bool ElementSet::subset_of(const ElementSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool operator<(const ElementSet& a, const ElementSet& b) noexcept {
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    auto diff = a.words_[i] ^ b.words_[i];
    if (!diff) continue;
    int bit = std::countr_zero(diff);
    const ElementSet& without = (a.words_[i] >> bit) & 1u ? b : a;
    // the set lacking the first differing element is larger iff it continues past it
    bool continues = false;
    auto rest = without.words_[i] >> bit;
    if (bit < 63 && (rest >> 1)) continues = true;
    for (std::size_t j = i + 1; !continues && j < without.words_.size(); ++j) continues = without.words_[j] != 0;
    bool a_lacks = &without == &a;
    return a_lacks ? !continues : continues;
  }
  return false;
}

std::size_t ElementSet::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// helpers

namespace {

using Letter = std::pair<std::size_t, int>;

std::string format_letters(const std::vector<Letter>& word, std::span<const std::string> labels) {
  if (word.empty()) return "e";
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    long long exp = 0;
    while (j < word.size() && word[j].first == word[i].first) exp += word[j++].second;
    if (exp != 0) {
      if (!out.empty()) out += '*';
      out += labels[word[i].first];
      if (exp != 1) out += "^" + std::to_string(exp);
    }
    i = j;
  }
  return out.empty() ? "e" : out;
}

ElementSet closure_raw(std::span<const Elem> table, std::size_t n, std::span<const Elem> gens) {
  ElementSet set(n);
  std::vector<Elem> list{0};
  set.set(0);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (auto s : gens) {
      Elem y = table[list[i] * n + s];
      if (!set.test(y)) {
        set.set(y);
        list.push_back(y);
      }
    }
  }
  return set;
}

std::vector<Elem> greedy_generators(std::span<const Elem> table, std::size_t n,
                                    const std::vector<std::uint32_t>& orders, const std::vector<Elem>& pool) {
  std::vector<Elem> cand = pool;
  std::stable_sort(cand.begin(), cand.end(), [&](Elem a, Elem b) { return orders[a] > orders[b]; });
  std::vector<Elem> gens;
  ElementSet cur = closure_raw(table, n, gens);
  std::size_t target = pool.size() + 1;
  for (auto x : cand) {
    if (cur.count() >= target) break;
    if (cur.test(x)) continue;
    gens.push_back(x);
    cur = closure_raw(table, n, gens);
  }
  return gens;
}

std::vector<std::uint32_t> compute_orders(const std::vector<Elem>& table, std::size_t n) {
  std::vector<std::uint32_t> orders(n, 1);
  for (std::size_t a = 1; a < n; ++a) {
    Elem x = static_cast<Elem>(a);
    std::uint32_t k = 1;
    while (x != 0) {
      x = table[x * n + a];
      ++k;
    }
    orders[a] = k;
  }
  return orders;
}

std::vector<std::string> unique_labels(std::vector<std::string> labels) {
  std::set<std::string> seen;
  for (auto& l : labels) {
    std::string base = l;
    int suffix = 2;
    while (seen.count(l)) l = base + "_" + std::to_string(suffix++);
    seen.insert(l);
  }
  return labels;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup() {
  auto d = std::make_shared<Data>();
  d->table = {0};
  d->inverse = {0};
  d->orders = {1};
  d->names = {"e"};
  data_ = d;
  table_ = data_->table.data();
  n_ = 1;
}

FiniteGroup FiniteGroup::from_table(std::vector<Elem> table, std::size_t order, std::vector<Elem> generators,
                                    std::vector<std::string> labels) {
  const std::size_t n = order;
  if (n == 0 || table.size() != n * n) fail(ErrorKind::Input, "multiplication table has wrong size");
  for (auto v : table)
    if (v >= n) fail(ErrorKind::Input, "multiplication table entry out of range");
  for (std::size_t x = 0; x < n; ++x)
    if (table[x] != x || table[x * n] != x) fail(ErrorKind::Input, "index 0 is not a two-sided identity");

  auto d = std::make_shared<Data>();
  d->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const Elem* row = &table[a * n];
    auto it = std::find(row, row + n, Elem{0});
    if (it == row + n) fail(ErrorKind::Input, "element without right inverse");
    Elem b = static_cast<Elem>(it - row);
    if (table[b * n + a] != 0) fail(ErrorKind::Input, "right inverse is not a left inverse");
    d->inverse[a] = b;
  }
  d->orders = compute_orders(table, n);

  if (generators.empty() && n > 1) {
    std::vector<Elem> pool(n - 1);
    std::iota(pool.begin(), pool.end(), Elem{1});
    generators = greedy_generators(table, n, d->orders, pool);
    labels.clear();
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < generators.size(); ++i) labels.push_back("g" + std::to_string(i));
  }
  if (labels.size() != generators.size()) fail(ErrorKind::Input, "generator/label count mismatch");
  for (auto g : generators)
    if (g >= n) fail(ErrorKind::Input, "generator index out of range");

  // shortest words, exploring g then g^-1 for each generator in order
  std::vector<std::vector<Letter>> words(n);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  std::deque<Elem> queue{0};
  std::size_t reached = 1;
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (int sign : {1, -1}) {
        Elem s = sign > 0 ? generators[i] : d->inverse[generators[i]];
        Elem y = table[x * n + s];
        if (seen[y]) continue;
        seen[y] = 1;
        ++reached;
        words[y] = words[x];
        words[y].emplace_back(i, sign);
        queue.push_back(y);
      }
    }
  }
  if (reached != n) fail(ErrorKind::Input, "declared generators do not generate the group");
  d->names.resize(n);
  for (std::size_t x = 0; x < n; ++x) d->names[x] = format_letters(words[x], labels);

  d->table = std::move(table);
  d->generators = std::move(generators);
  d->labels = std::move(labels);

  FiniteGroup g;
  g.data_ = d;
  g.table_ = d->table.data();
  g.n_ = n;
  return g;
}

Elem FiniteGroup::pow(Elem a, long long k) const {
  long long ord = element_order(a);
  k %= ord;
  if (k < 0) k += ord;
  Elem result = identity, base = a;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint32_t FiniteGroup::exponent() const noexcept {
  std::uint32_t e = 1;
  for (auto o : data_->orders) e = std::lcm(e, o);
  return e;
}

bool FiniteGroup::is_abelian() const noexcept {
  for (auto a : generators())
    for (auto b : generators())
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool check_axioms(const FiniteGroup& g) {
  const std::size_t n = g.order();
  for (Elem a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return false;
    if (g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0) return false;
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem ab = g.mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// SubgroupHandle

SubgroupHandle SubgroupHandle::generated_by(const FiniteGroup& parent, std::span<const Elem> gens) {
  SubgroupHandle h;
  h.parent_ = parent;
  h.members_ = closure_raw(parent.table(), parent.order(), gens);
  h.size_ = h.members_.count();
  return h;
}

SubgroupHandle SubgroupHandle::from_set(const FiniteGroup& parent, ElementSet members, bool trusted) {
  if (members.universe() != parent.order()) fail(ErrorKind::Precondition, "element set has wrong universe");
  if (!trusted) {
    auto elems = members.elements();
    if (!members.test(0)) fail(ErrorKind::Precondition, "subgroup must contain the identity");
    for (auto a : elems) {
      if (!members.test(parent.inv(a))) fail(ErrorKind::Precondition, "set not closed under inverses");
      for (auto b : elems)
        if (!members.test(parent.mul(a, b))) fail(ErrorKind::Precondition, "set not closed under products");
    }
    if (parent.order() % elems.size() != 0) fail(ErrorKind::Precondition, "subgroup order does not divide group order");
  }
  SubgroupHandle h;
  h.parent_ = parent;
  h.members_ = std::move(members);
  h.size_ = h.members_.count();
  return h;
}

SubgroupHandle SubgroupHandle::whole(const FiniteGroup& parent) {
  ElementSet s(parent.order());
  for (Elem x = 0; x < parent.order(); ++x) s.set(x);
  return from_set(parent, std::move(s), true);
}

SubgroupHandle SubgroupHandle::trivial(const FiniteGroup& parent) {
  ElementSet s(parent.order());
  s.set(0);
  return from_set(parent, std::move(s), true);
}

std::vector<Elem> SubgroupHandle::generators() const {
  auto elems = elements();
  std::vector<Elem> pool(elems.begin() + 1, elems.end());
  std::vector<std::uint32_t> orders(parent_.order());
  for (Elem x = 0; x < parent_.order(); ++x) orders[x] = parent_.element_order(x);
  return greedy_generators(parent_.table(), parent_.order(), orders, pool);
}

bool GroupMap::is_homomorphism() const {
  if (image.size() != source.order()) return false;
  if (image[0] != 0) return false;
  for (Elem a = 0; a < source.order(); ++a)
    for (Elem b = 0; b < source.order(); ++b)
      if (image[source.mul(a, b)] != target.mul(image[a], image[b])) return false;
  return true;
}

std::string SpecialShape::to_string() const {
  switch (kind) {
    case Kind::Cyclic: return "Cyclic(" + std::to_string(k) + ")";
    case Kind::Dihedral: return "Dihedral(" + std::to_string(k) + ")";
    case Kind::A4: return "A4";
    case Kind::S4: return "S4";
    case Kind::A5: return "A5";
    case Kind::Other: break;
  }
  return "Other";
}

// ---------------------------------------------------------------------------
// constructions

FiniteGroup from_permutations(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& generators,
                              std::vector<std::string> labels, std::size_t cap) {
  using Perm = std::vector<std::uint32_t>;
  for (const auto& p : generators) {
    if (p.size() != degree) fail(ErrorKind::Input, "permutation has wrong degree");
    std::vector<char> hit(degree, 0);
    for (auto v : p) {
      if (v >= degree || hit[v]) fail(ErrorKind::Input, "generator is not a bijection");
      hit[v] = 1;
    }
  }
  if (labels.empty())
    for (std::size_t i = 0; i < generators.size(); ++i) labels.push_back("g" + std::to_string(i));
  if (labels.size() != generators.size()) fail(ErrorKind::Input, "generator/label count mismatch");

  struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept {
      std::size_t h = 0;
      for (auto v : p) h = h * 1000003u + v;
      return h;
    }
  };
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::vector<Perm> elems{id};
  std::unordered_map<Perm, Elem, PermHash> index{{id, 0}};
  std::vector<std::vector<Elem>> rmul;  // rmul[x][i] = x * gen_i
  std::vector<std::pair<Elem, std::size_t>> parent{{0, 0}};
  for (std::size_t x = 0; x < elems.size(); ++x) {
    rmul.emplace_back(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
      // (x * s)(p) = x(s(p))
      Perm y(degree);
      for (std::size_t p = 0; p < degree; ++p) y[p] = elems[x][generators[i][p]];
      auto [it, inserted] = index.try_emplace(y, static_cast<Elem>(elems.size()));
      if (inserted) {
        if (elems.size() + 1 > cap)
          fail(ErrorKind::Resource, "permutation group closure exceeds cap of " + std::to_string(cap));
        elems.push_back(std::move(y));
        parent.emplace_back(static_cast<Elem>(x), i);
      }
      rmul[x][i] = it->second;
    }
  }
  const std::size_t n = elems.size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    table[a * n] = static_cast<Elem>(a);
    for (std::size_t b = 1; b < n; ++b) {
      auto [pb, gi] = parent[b];
      table[a * n + b] = rmul[table[a * n + pb]][gi];
    }
  }
  std::vector<Elem> gen_idx;
  for (std::size_t i = 0; i < generators.size(); ++i) gen_idx.push_back(rmul[0][i]);
  return FiniteGroup::from_table(std::move(table), n, std::move(gen_idx), std::move(labels));
}

FiniteGroup from_cayley(const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) fail(ErrorKind::Input, "empty Cayley table");
  if (n > kDefaultOrderCap) fail(ErrorKind::Resource, "Cayley table exceeds order cap");
  for (const auto& r : rows) {
    if (r.size() != n) fail(ErrorKind::Input, "Cayley table is not square");
    for (auto v : r)
      if (v >= n) fail(ErrorKind::Input, "Cayley table entry out of range");
  }
  std::size_t e = n;
  for (std::size_t x = 0; x < n && e == n; ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < n && ok; ++y) ok = rows[x][y] == y && rows[y][x] == y;
    if (ok) e = x;
  }
  if (e == n) fail(ErrorKind::Input, "Cayley table has no identity");
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::swap(perm[0], perm[e]);  // old index -> new index (a transposition is its own inverse)
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[perm[a] * n + perm[b]] = perm[rows[a][b]];
  auto g = FiniteGroup::from_table(std::move(table), n, {}, {});
  if (n <= 512 && !check_axioms(g)) fail(ErrorKind::Input, "Cayley table is not associative");
  return g;
}

FiniteGroup cyclic_group(std::uint32_t n, const std::string& label) {
  if (n == 0) fail(ErrorKind::Input, "cyclic group of order 0");
  std::vector<Elem> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  if (n == 1) return FiniteGroup::from_table(std::move(table), 1, {}, {});
  return FiniteGroup::from_table(std::move(table), n, {1}, {label});
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > kDefaultOrderCap) fail(ErrorKind::Resource, "direct product exceeds order cap");
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Elem xa = static_cast<Elem>(x % na), xb = static_cast<Elem>(x / na);
      Elem ya = static_cast<Elem>(y % na), yb = static_cast<Elem>(y / na);
      table[x * n + y] = b.mul(xb, yb) * static_cast<Elem>(na) + a.mul(xa, ya);
    }
  std::vector<Elem> gens;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    gens.push_back(a.generators()[i]);
    labels.push_back(a.labels()[i]);
  }
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    gens.push_back(b.generators()[i] * static_cast<Elem>(na));
    labels.push_back(b.labels()[i]);
  }
  return FiniteGroup::from_table(std::move(table), n, std::move(gens), unique_labels(std::move(labels)));
}

namespace {

bool is_automorphism(const FiniteGroup& n, const std::vector<Elem>& phi) {
  if (phi.size() != n.order() || phi[0] != 0) return false;
  std::vector<char> hit(n.order(), 0);
  for (auto v : phi) {
    if (v >= n.order() || hit[v]) return false;
    hit[v] = 1;
  }
  for (Elem a = 0; a < n.order(); ++a)
    for (Elem b = 0; b < n.order(); ++b)
      if (phi[n.mul(a, b)] != n.mul(phi[a], phi[b])) return false;
  return true;
}

}  // namespace

Action extend_action(const FiniteGroup& n, const FiniteGroup& h, const std::vector<std::vector<Elem>>& generator_images) {
  if (generator_images.size() != h.generators().size())
    fail(ErrorKind::Domain, "invalid action: one automorphism per generator required");
  for (const auto& phi : generator_images)
    if (!is_automorphism(n, phi)) fail(ErrorKind::Domain, "invalid action: generator image is not an automorphism");
  Action act(h.order());
  std::vector<Elem> id(n.order());
  std::iota(id.begin(), id.end(), Elem{0});
  act[0] = id;
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < h.generators().size(); ++i) {
      Elem y = h.mul(x, h.generators()[i]);
      std::vector<Elem> phi(n.order());
      for (Elem m = 0; m < n.order(); ++m) phi[m] = act[x][generator_images[i][m]];
      if (act[y].empty()) {
        act[y] = std::move(phi);
        queue.push_back(y);
      } else if (act[y] != phi) {
        fail(ErrorKind::Domain, "invalid action: generator images do not respect the relations of H");
      }
    }
  }
  return act;
}

FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h, const Action& action) {
  const std::size_t nn = n.order(), nh = h.order(), total = nn * nh;
  if (total > kDefaultOrderCap) fail(ErrorKind::Resource, "semidirect product exceeds order cap");
  if (action.size() != nh) fail(ErrorKind::Domain, "invalid action: one map per element of H required");
  for (const auto& phi : action)
    if (!is_automorphism(n, phi)) fail(ErrorKind::Domain, "invalid action: not an automorphism of N");
  for (Elem x = 0; x < nh; ++x)
    for (Elem y = 0; y < nh; ++y) {
      const auto& xy = action[h.mul(x, y)];
      for (Elem m = 0; m < nn; ++m)
        if (xy[m] != action[x][action[y][m]]) fail(ErrorKind::Domain, "invalid action: not a homomorphism H -> Aut(N)");
    }
  std::vector<Elem> table(total * total);
  for (std::size_t p = 0; p < total; ++p) {
    Elem n1 = static_cast<Elem>(p % nn), h1 = static_cast<Elem>(p / nn);
    for (std::size_t q = 0; q < total; ++q) {
      Elem n2 = static_cast<Elem>(q % nn), h2 = static_cast<Elem>(q / nn);
      table[p * total + q] = h.mul(h1, h2) * static_cast<Elem>(nn) + n.mul(n1, action[h1][n2]);
    }
  }
  std::vector<Elem> gens;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n.generators().size(); ++i) {
    gens.push_back(n.generators()[i]);
    labels.push_back(n.labels()[i]);
  }
  for (std::size_t i = 0; i < h.generators().size(); ++i) {
    gens.push_back(h.generators()[i] * static_cast<Elem>(nn));
    labels.push_back(h.labels()[i]);
  }
  return FiniteGroup::from_table(std::move(table), total, std::move(gens), unique_labels(std::move(labels)));
}

// ---------------------------------------------------------------------------
// subgroup operations

SubgroupHandle normalizer(const FiniteGroup& g, const SubgroupHandle& k) {
  auto gens = k.generators();
  ElementSet s(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : gens)
      if (!k.contains(g.conj(x, y))) {
        ok = false;
        break;
      }
    if (ok) s.set(x);
  }
  return SubgroupHandle::from_set(g, std::move(s), true);
}

SubgroupHandle centralizer(const FiniteGroup& g, const SubgroupHandle& k) {
  auto gens = k.generators();
  ElementSet s(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : gens)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) s.set(x);
  }
  return SubgroupHandle::from_set(g, std::move(s), true);
}

SubgroupHandle center(const FiniteGroup& g) { return centralizer(g, SubgroupHandle::whole(g)); }

bool is_normal(const FiniteGroup& g, const SubgroupHandle& k) {
  auto kg = k.generators();
  for (auto x : g.generators())
    for (auto y : kg)
      if (!k.contains(g.conj(x, y))) return false;
  return true;
}

SubgroupHandle commutator_subgroup(const FiniteGroup& g) {
  std::vector<Elem> comms;
  ElementSet seen(g.order());
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) {
      Elem c = g.commutator(x, y);
      if (!seen.test(c)) {
        seen.set(c);
        comms.push_back(c);
      }
    }
  return SubgroupHandle::generated_by(g, comms);
}

std::pair<FiniteGroup, GroupMap> subgroup_as_group(const SubgroupHandle& k) {
  const FiniteGroup& g = k.parent();
  auto elems = k.elements();
  const std::size_t m = elems.size();
  std::vector<Elem> local(g.order(), 0);
  for (std::size_t i = 0; i < m; ++i) local[elems[i]] = static_cast<Elem>(i);
  std::vector<Elem> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = local[g.mul(elems[i], elems[j])];
  std::vector<Elem> gens;
  std::vector<std::string> labels;
  for (auto x : k.generators()) {
    gens.push_back(local[x]);
    auto it = std::find(g.generators().begin(), g.generators().end(), x);
    labels.push_back(it != g.generators().end() ? g.labels()[static_cast<std::size_t>(it - g.generators().begin())]
                                                : "x" + std::to_string(labels.size()));
  }
  auto sub = FiniteGroup::from_table(std::move(table), m, std::move(gens), unique_labels(std::move(labels)));
  GroupMap inc{sub, g, std::vector<Elem>(elems.begin(), elems.end())};
  return {sub, inc};
}

std::pair<FiniteGroup, GroupMap> quotient(const FiniteGroup& g, const SubgroupHandle& k) {
  if (!is_normal(g, k)) fail(ErrorKind::Precondition, "quotient requires a normal subgroup");
  const std::size_t n = g.order();
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> coset(n, kUnset);
  std::vector<Elem> reps;
  auto kel = k.elements();
  for (Elem x = 0; x < n; ++x) {
    if (coset[x] != kUnset) continue;
    Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (auto y : kel) coset[g.mul(x, y)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = coset[g.mul(reps[i], reps[j])];
  std::vector<Elem> gens;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    Elem c = coset[g.generators()[i]];
    if (c == 0 || std::find(gens.begin(), gens.end(), c) != gens.end()) continue;
    gens.push_back(c);
    labels.push_back(g.labels()[i]);
  }
  auto q = FiniteGroup::from_table(std::move(table), m, std::move(gens), std::move(labels));
  GroupMap proj{g, q, std::move(coset)};
  return {q, proj};
}

std::vector<std::size_t> order_histogram(const FiniteGroup& g) {
  std::vector<std::size_t> hist(g.order() + 1, 0);
  for (Elem x = 0; x < g.order(); ++x) ++hist[g.element_order(x)];
  return hist;
}

SpecialShape classify_special(const FiniteGroup& k) {
  const std::size_t n = k.order();
  using Kind = SpecialShape::Kind;
  for (Elem x = 0; x < n; ++x)
    if (k.element_order(x) == n) return {Kind::Cyclic, static_cast<std::uint32_t>(n)};
  if (n % 2 == 0 && n >= 4) {
    const std::uint32_t half = static_cast<std::uint32_t>(n / 2);
    for (Elem c = 1; c < n; ++c) {
      if (k.element_order(c) != half) continue;
      auto cyc = SubgroupHandle::generated_by(k, std::span<const Elem>(&c, 1));
      for (Elem t = 0; t < n; ++t)
        if (!cyc.contains(t) && k.element_order(t) == 2 && k.conj(t, c) == k.inv(c)) return {Kind::Dihedral, half};
    }
  }
  auto hist = order_histogram(k);
  auto h = [&](std::size_t d) { return d < hist.size() ? hist[d] : 0; };
  if (n == 12 && h(1) == 1 && h(2) == 3 && h(3) == 8) return {Kind::A4, 0};
  if (n == 24 && h(1) == 1 && h(2) == 9 && h(3) == 8 && h(4) == 6) return {Kind::S4, 0};
  if (n == 60 && h(1) == 1 && h(2) == 15 && h(3) == 20 && h(5) == 24) return {Kind::A5, 0};
  return {Kind::Other, 0};
}

std::vector<std::uint32_t> conj_action_on_cyclic(const FiniteGroup& g, const SubgroupHandle& k, Elem generator) {
  const std::uint32_t order = static_cast<std::uint32_t>(k.size());
  if (!k.contains(generator) || g.element_order(generator) != order)
    fail(ErrorKind::Precondition, "subgroup is not cyclic on the given generator");
  std::unordered_map<Elem, std::uint32_t> log;
  Elem p = 0;
  for (std::uint32_t u = 0; u < order; ++u) {
    log[p] = u;
    p = g.mul(p, generator);
  }
  std::set<std::uint32_t> units;
  for (auto x : normalizer(g, k).elements()) units.insert(log.at(g.conj(x, generator)));
  return {units.begin(), units.end()};
}

std::vector<std::uint32_t> conj_action_on_cyclic(const FiniteGroup& g, const SubgroupHandle& k) {
  for (auto x : k.elements())
    if (g.element_order(x) == k.size()) return conj_action_on_cyclic(g, k, x);
  fail(ErrorKind::Precondition, "conj_action_on_cyclic: subgroup is not cyclic");
}

void for_each_commuting_pair(const FiniteGroup& g, const std::function<void(Elem, Elem)>& f) {
  for (Elem a = 1; a < g.order(); ++a)
    for (Elem b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) == g.mul(b, a)) f(a, b);
}

std::vector<Elem> small_generating_set(const FiniteGroup& g) {
  return SubgroupHandle::whole(g).generators();
}

FiniteGroup relabel(const FiniteGroup& g, const std::vector<Elem>& perm) {
  const std::size_t n = g.order();
  if (perm.size() != n || perm[0] != 0) fail(ErrorKind::Precondition, "relabeling must fix the identity");
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[perm[a] * n + perm[b]] = perm[g.mul(a, b)];
  std::vector<Elem> gens;
  for (auto x : g.generators()) gens.push_back(perm[x]);
  return FiniteGroup::from_table(std::move(table), n, std::move(gens),
                                 std::vector<std::string>(g.labels().begin(), g.labels().end()));
}

std::string fingerprint(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> roots(n, 0);
  for (Elem x = 0; x < n; ++x) ++roots[g.mul(x, x)];
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), Elem{0});
  std::stable_sort(order.begin() + 1, order.end(), [&](Elem a, Elem b) {
    return std::pair(g.element_order(a), roots[a]) < std::pair(g.element_order(b), roots[b]);
  });
  std::vector<Elem> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<Elem>(i);
  std::uint64_t h1 = 1469598103934665603ull, h2 = 0x243f6a8885a308d3ull;
  auto mix = [&](std::uint64_t v) {
    h1 = (h1 ^ v) * 1099511628211ull;
    h2 += v + 0x9e3779b97f4a7c15ull;
    h2 = (h2 ^ (h2 >> 30)) * 0xbf58476d1ce4e5b9ull;
    h2 = (h2 ^ (h2 >> 27)) * 0x94d049bb133111ebull;
    h2 ^= h2 >> 31;
  };
  mix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mix(pos[g.mul(order[i], order[j])]);
  std::ostringstream out;
  out << "o" << n << "-" << std::hex;
  out.width(16);
  out.fill('0');
  out << h1;
  out.width(16);
  out << h2;
  return out.str();
}

}  // namespace bordcalc
