#include "bordcalc/abelian.hpp"

#include <algorithm>
#include <map>

#include "bordcalc/error.hpp"

namespace bordcalc {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

AbelianGroupDescriptor::AbelianGroupDescriptor(std::uint64_t free_rank, std::vector<std::uint64_t> cyclic_orders)
    : free_rank_(free_rank) {
  // per prime, exponents sorted descending; the i-th largest of every prime goes into the i-th factor from the top
  std::map<std::uint64_t, std::vector<std::uint64_t>> powers;
  for (auto d : cyclic_orders) {
    if (d == 0) fail(ErrorKind::Domain, "cyclic order 0 in a torsion descriptor");
    for (auto [p, e] : factorize(d)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      powers[p].push_back(q);
    }
  }
  std::size_t len = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.rbegin(), v.rend());
    len = std::max(len, v.size());
  }
  std::vector<std::uint64_t> f(len, 1);
  for (const auto& [p, v] : powers)
    for (std::size_t i = 0; i < v.size(); ++i) f[len - 1 - i] *= v[i];
  factors_ = std::move(f);
}

std::uint64_t AbelianGroupDescriptor::torsion_order() const noexcept {
  std::uint64_t r = 1;
  for (auto d : factors_) r *= d;
  return r;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> AbelianGroupDescriptor::elementary_divisors() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto d : factors_)
    for (auto [p, e] : factorize(d)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      out.emplace_back(p, q);
    }
  std::sort(out.begin(), out.end());
  return out;
}

AbelianGroupDescriptor AbelianGroupDescriptor::primary_part(std::uint64_t p) const {
  std::vector<std::uint64_t> orders;
  for (auto [q, pe] : elementary_divisors())
    if (q == p) orders.push_back(pe);
  return {0, orders};
}

std::string AbelianGroupDescriptor::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank_ > 0) out = "Z^" + std::to_string(free_rank_);
  for (auto d : factors_) {
    if (!out.empty()) out += " + ";
    out += "Z/" + std::to_string(d);
  }
  return out;
}

AbelianGroupDescriptor operator+(const AbelianGroupDescriptor& a, const AbelianGroupDescriptor& b) {
  auto orders = a.factors_;
  orders.insert(orders.end(), b.factors_.begin(), b.factors_.end());
  return {a.free_rank_ + b.free_rank_, orders};
}

AbelianGroupDescriptor direct_sum(const std::vector<AbelianGroupDescriptor>& parts) {
  AbelianGroupDescriptor acc;
  for (const auto& p : parts) acc = acc + p;
  return acc;
}

AbelianGroupDescriptor abelian_invariants(const FiniteGroup& g) {
  if (!g.is_abelian()) fail(ErrorKind::Precondition, "abelian_invariants needs an abelian group");
  std::vector<std::uint64_t> orders;
  for (auto [p, e] : factorize(g.order())) {
    // count[i] = #{x : x^(p^i) = e} = p^(sum_j min(i, e_j))
    std::vector<unsigned> logcount{0};
    std::uint64_t q = 1;
    for (unsigned i = 1; i <= e; ++i) {
      q *= p;
      std::uint64_t c = 0;
      for (Elem x = 0; x < g.order(); ++x)
        if (q % g.element_order(x) == 0) ++c;
      unsigned lc = 0;
      while (c > 1) {
        c /= p;
        ++lc;
      }
      logcount.push_back(lc);
      if (lc == e) break;
    }
    // number of cyclic factors of exponent >= i is logcount[i] - logcount[i-1]
    std::vector<unsigned> at_least;
    for (std::size_t i = 1; i < logcount.size(); ++i) at_least.push_back(logcount[i] - logcount[i - 1]);
    for (std::size_t i = 0; i < at_least.size(); ++i) {
      unsigned next = i + 1 < at_least.size() ? at_least[i + 1] : 0;
      for (unsigned c = 0; c < at_least[i] - next; ++c) {
        std::uint64_t pe = 1;
        for (std::size_t j = 0; j <= i; ++j) pe *= p;
        orders.push_back(pe);
      }
    }
  }
  return {0, orders};
}

}  // namespace bordcalc
