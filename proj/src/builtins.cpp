#include "bordcalc/builtins.hpp"

#include <charconv>
#include <numeric>
#include <optional>

#include "bordcalc/error.hpp"
#include "bordcalc/presentation.hpp"

namespace bordcalc {

namespace {

std::uint32_t parse_index(std::string_view digits, std::string_view name) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
    fail(ErrorKind::Input, "unknown builtin group '" + std::string(name) + "'");
  return v;
}

using Perm = std::vector<std::uint32_t>;

Perm cycle_perm(std::uint32_t degree, const std::vector<std::uint32_t>& cycle) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

}  // namespace

FiniteGroup quaternion8() { return group_from_presentation("<a,b | a^2=b^2, a*b*a^-1=b^-1>"); }

FiniteGroup g64() {
  auto c8 = cyclic_group(8, "c");
  auto q8 = quaternion8();
  std::vector<std::vector<Elem>> images(2, std::vector<Elem>(8));
  for (Elem m = 0; m < 8; ++m) {
    images[0][m] = (3 * m) % 8;
    images[1][m] = (5 * m) % 8;
  }
  return semidirect_product(c8, q8, extend_action(c8, q8, images));
}

FiniteGroup g243() { return group_from_presentation(kG243Presentation); }

FiniteGroup dihedral(std::uint32_t order) {
  if (order == 0 || order % 2 != 0) fail(ErrorKind::Input, "dihedral groups have even order");
  std::uint32_t k = order / 2;
  auto rot = cyclic_group(k, "r");
  auto flip = cyclic_group(2, "s");
  std::vector<Elem> inv(k);
  for (Elem m = 0; m < k; ++m) inv[m] = (k - m) % k;
  return semidirect_product(rot, flip, extend_action(rot, flip, {inv}));
}

FiniteGroup symmetric(std::uint32_t n) {
  if (n == 0 || n > 6) fail(ErrorKind::Input, "symmetric groups are built in for 1 <= n <= 6");
  if (n == 1) return from_permutations(1, {}, {});
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  if (n == 2) return from_permutations(2, {cycle_perm(2, {0, 1})}, {"s"});
  return from_permutations(n, {cycle_perm(n, {0, 1}), cycle_perm(n, all)}, {"s", "t"});
}

FiniteGroup alternating(std::uint32_t n) {
  if (n == 0 || n > 6) fail(ErrorKind::Input, "alternating groups are built in for 1 <= n <= 6");
  if (n < 3) return from_permutations(n, {}, {});
  std::vector<Perm> gens;
  std::vector<std::string> labels;
  for (std::uint32_t i = 2; i < n; ++i) {
    gens.push_back(cycle_perm(n, {0, 1, i}));
    labels.push_back("g" + std::to_string(i - 1));
  }
  return from_permutations(n, gens, labels);
}

FiniteGroup builtin(std::string_view name) {
  if (name.find('x') != std::string_view::npos) {
    std::optional<FiniteGroup> acc;
    std::size_t start = 0;
    while (start <= name.size()) {
      auto end = name.find('x', start);
      if (end == std::string_view::npos) end = name.size();
      auto factor = builtin(name.substr(start, end - start));
      acc = acc ? direct_product(*acc, factor) : factor;
      start = end + 1;
    }
    return *acc;
  }
  if (name == "G64" || name == "C8:Q8") return g64();
  if (name == "G243") return g243();
  if (name == "Q8") return quaternion8();
  if (name.empty()) fail(ErrorKind::Input, "empty builtin group name");
  auto rest = name.substr(1);
  switch (name[0]) {
    case 'C': {
      auto n = parse_index(rest, name);
      if (n == 0) fail(ErrorKind::Input, "cyclic group of order 0");
      return cyclic_group(n, "a");
    }
    case 'D': return dihedral(parse_index(rest, name));
    case 'S': return symmetric(parse_index(rest, name));
    case 'A': return alternating(parse_index(rest, name));
    default: break;
  }
  fail(ErrorKind::Input, "unknown builtin group '" + std::string(name) + "'");
}

std::vector<std::string> builtin_catalog() {
  std::vector<std::string> out;
  for (int n = 1; n <= 16; ++n) out.push_back("C" + std::to_string(n));
  for (int m = 2; m <= 6; ++m)
    for (int n = m; n <= 18 && m * n <= 36; ++n) out.push_back("C" + std::to_string(m) + "xC" + std::to_string(n));
  for (int k = 2; k <= 8; ++k) out.push_back("D" + std::to_string(2 * k));
  for (const char* s : {"Q8", "S3", "S4", "A4", "A5", "S5", "C2xQ8", "C2xC2xC2", "C3xS3", "C2xA4", "G64"})
    out.emplace_back(s);
  return out;
}

}  // namespace bordcalc
