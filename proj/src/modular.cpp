#include "bordcalc/modular.hpp"

#include <algorithm>

#include "bordcalc/error.hpp"

namespace bordcalc {

PrimePowerRing::PrimePowerRing(std::uint32_t p, unsigned k) : p_(p), k_(k) {
  if (p < 2 || k < 1) fail(ErrorKind::Precondition, "prime power ring needs p >= 2 and k >= 1");
  std::uint64_t q = 1;
  pow_.push_back(1);
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q >= (std::uint64_t{1} << 31)) fail(ErrorKind::Resource, "p^k must stay below 2^31");
    pow_.push_back(static_cast<std::uint32_t>(q));
  }
  q_ = static_cast<std::uint32_t>(q);
}

unsigned PrimePowerRing::valuation(std::uint32_t a) const noexcept {
  if (a == 0) return k_;
  unsigned v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

std::uint32_t PrimePowerRing::inverse(std::uint32_t unit) const {
  // extended Euclid on (unit, q)
  std::int64_t a = unit, b = q_, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t t = a / b;
    std::tie(a, b) = std::make_pair(b, a - t * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - t * x1);
  }
  if (a != 1) fail(ErrorKind::Domain, "element is not a unit");
  return reduce(x0);
}

std::pair<unsigned, std::uint32_t> PrimePowerRing::split(std::uint32_t a) const {
  unsigned v = valuation(a);
  return {v, a / pow_[v]};
}

std::uint64_t ModularQuotient::log_order() const noexcept {
  std::uint64_t s = static_cast<std::uint64_t>(full_summands) * k;
  for (auto e : torsion_exponents) s += e;
  return s;
}

ModularEchelon::ModularEchelon(PrimePowerRing ring, std::size_t dim)
    : ring_(ring), dim_(dim), pivot_row_(dim, -1), is_free_(dim, 1) {
  free_positions_.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) free_positions_[i] = static_cast<std::uint32_t>(i);
}

void ModularEchelon::axpy_free(std::vector<std::uint32_t>& dst, std::uint32_t f,
                               const std::vector<std::uint32_t>& src) const {
  if (f == 0) return;
  const std::uint64_t q = ring_.modulus();
  const std::uint64_t nf = q - f;
  for (auto j : free_positions_) {
    if (src[j] == 0) continue;
    dst[j] = static_cast<std::uint32_t>((dst[j] + nf * src[j]) % q);
  }
}

void ModularEchelon::insert(const Sparse& v) {
  std::vector<std::uint32_t> d(dim_, 0);
  for (const auto& [i, x] : v) d[i] = ring_.add(d[i], ring_.reduce(x));
  insert_dense(std::move(d));
}

void ModularEchelon::insert_dense(std::vector<std::uint32_t> v) {
  reduce_units(v);
  insert_reduced(std::move(v));
}

void ModularEchelon::reduce_units(std::vector<std::uint32_t>& v) const {
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] == 0 || is_free_[j]) continue;
    axpy_free(v, v[j], rows_[static_cast<std::size_t>(pivot_row_[j])]);
    v[j] = 0;
  }
}

void ModularEchelon::insert_reduced(std::vector<std::uint32_t> v) {
  std::size_t i = 0;
  while (i < free_positions_.size()) {
    const std::uint32_t j = free_positions_[i];
    if (v[j] == 0) {
      ++i;
      continue;
    }
    auto [val, unit] = ring_.split(v[j]);
    const std::int32_t r = pivot_row_[j];
    if (r >= 0 && row_exponent_[static_cast<std::size_t>(r)] <= val) {
      const auto e = row_exponent_[static_cast<std::size_t>(r)];
      axpy_free(v, v[j] / ring_.power(e), rows_[static_cast<std::size_t>(r)]);
      ++i;
      continue;
    }
    // v becomes the pivot row at j with leading entry p^val
    const std::uint32_t uinv = ring_.inverse(unit);
    for (auto& x : v) x = ring_.mul(x, uinv);
    if (r < 0) {
      rows_.push_back(std::move(v));
      row_pivot_.push_back(j);
      row_exponent_.push_back(val);
      pivot_row_[j] = static_cast<std::int32_t>(rows_.size() - 1);
      if (val == 0) add_unit_pivot(rows_.size() - 1);
      return;
    }
    const auto ru = static_cast<std::size_t>(r);
    const auto old_exp = row_exponent_[ru];
    std::swap(v, rows_[ru]);
    row_exponent_[ru] = val;
    axpy_free(v, ring_.power(old_exp - val), rows_[ru]);
    if (val == 0) add_unit_pivot(ru);
    // free_positions_ may have lost j; resume at the first position after j
    i = static_cast<std::size_t>(std::upper_bound(free_positions_.begin(), free_positions_.end(), j) -
                                 free_positions_.begin());
  }
}

void ModularEchelon::add_unit_pivot(std::size_t row) {
  const std::uint32_t j = row_pivot_[row];
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r == row || rows_[r][j] == 0) continue;
    axpy_free(rows_[r], rows_[r][j], rows_[row]);
  }
  is_free_[j] = 0;
  free_positions_.erase(std::lower_bound(free_positions_.begin(), free_positions_.end(), j));
}

ModularEchelon::Residual ModularEchelon::residual() const {
  Residual res;
  res.ring_ = ring_;
  res.free_positions_ = free_positions_;
  const std::size_t m = free_positions_.size();
  res.position_index_.assign(dim_, -1);
  for (std::size_t i = 0; i < m; ++i) res.position_index_[free_positions_[i]] = static_cast<std::int32_t>(i);
  res.unit_row_at_.assign(dim_, -1);
  std::vector<std::vector<std::uint32_t>> rel;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::vector<std::uint32_t> restricted(m);
    for (std::size_t i = 0; i < m; ++i) restricted[i] = rows_[r][free_positions_[i]];
    if (row_exponent_[r] == 0) {
      res.unit_row_at_[row_pivot_[r]] = static_cast<std::int32_t>(res.unit_rows_.size());
      res.unit_rows_.push_back(std::move(restricted));
    } else {
      rel.push_back(std::move(restricted));
    }
  }

  // Smith form of rel over Z/p^k, tracking column operations in V
  const auto& R = ring_;
  std::vector<std::vector<std::uint32_t>> V(m, std::vector<std::uint32_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) V[i][i] = 1;
  auto col_axpy = [&](std::vector<std::vector<std::uint32_t>>& a, std::size_t dst, std::size_t src, std::uint32_t f,
                      std::size_t from) {
    if (f == 0) return;
    for (std::size_t i = from; i < a.size(); ++i)
      if (a[i][src] != 0) a[i][dst] = R.sub(a[i][dst], R.mul(f, a[i][src]));
  };
  std::vector<unsigned> diag_exp;
  const std::size_t nr = rel.size();
  for (std::size_t t = 0; t < std::min(nr, m); ++t) {
    std::size_t bi = nr, bj = m;
    unsigned bv = R.k();
    for (std::size_t i = t; i < nr && bv > 0; ++i)
      for (std::size_t j = t; j < m; ++j) {
        if (rel[i][j] == 0) continue;
        auto v = R.valuation(rel[i][j]);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi == nr) break;
    std::swap(rel[t], rel[bi]);
    if (bj != t) {
      for (auto& row : rel) std::swap(row[t], row[bj]);
      for (auto& row : V) std::swap(row[t], row[bj]);
    }
    auto [v, u] = R.split(rel[t][t]);
    const auto uinv = R.inverse(u);
    for (std::size_t i = t; i < nr; ++i) rel[i][t] = R.mul(rel[i][t], uinv);
    for (auto& row : V) row[t] = R.mul(row[t], uinv);
    const auto pv = R.power(v);
    for (std::size_t i = t + 1; i < nr; ++i) {
      if (rel[i][t] == 0) continue;
      const std::uint32_t f = rel[i][t] / pv;
      for (std::size_t j = t; j < m; ++j)
        if (rel[t][j] != 0) rel[i][j] = R.sub(rel[i][j], R.mul(f, rel[t][j]));
    }
    for (std::size_t j = t + 1; j < m; ++j) {
      if (rel[t][j] == 0) continue;
      const std::uint32_t f = rel[t][j] / pv;
      col_axpy(rel, j, t, f, t);
      col_axpy(V, j, t, f, 0);
    }
    diag_exp.push_back(v);
  }
  res.transform_ = std::move(V);
  res.quotient_.p = R.p();
  res.quotient_.k = R.k();
  for (std::size_t t = 0; t < m; ++t) {
    unsigned e = t < diag_exp.size() ? diag_exp[t] : R.k();
    res.column_exponent_.push_back(e);
    if (e == 0) continue;
    if (e < R.k()) {
      res.torsion_columns_.push_back(t);
      res.quotient_.torsion_exponents.push_back(e);
    } else {
      res.full_columns_.push_back(t);
      ++res.quotient_.full_summands;
    }
  }
  return res;
}

std::vector<std::uint32_t> ModularEchelon::Residual::all_coordinates(const Sparse& v) const {
  const auto& R = ring_;
  const std::size_t m = free_positions_.size();
  std::vector<std::uint32_t> pi(m, 0);
  // unit pivot coordinates are eliminated: pi = x_F - sum_j x_j * row_j|F
  std::vector<std::pair<std::size_t, std::uint32_t>> unit_terms;
  for (const auto& [pos, x] : v) {
    auto xr = R.reduce(x);
    if (xr == 0) continue;
    if (position_index_[pos] >= 0) {
      auto idx = static_cast<std::size_t>(position_index_[pos]);
      pi[idx] = R.add(pi[idx], xr);
    } else {
      unit_terms.emplace_back(static_cast<std::size_t>(unit_row_at_[pos]), xr);
    }
  }
  for (const auto& [row, x] : unit_terms) {
    const auto& ur = unit_rows_[row];
    for (std::size_t i = 0; i < m; ++i)
      if (ur[i] != 0) pi[i] = R.sub(pi[i], R.mul(x, ur[i]));
  }
  std::vector<std::uint32_t> out;
  auto coord = [&](std::size_t t) {
    std::uint64_t s = 0;
    const std::uint64_t q = R.modulus();
    for (std::size_t i = 0; i < m; ++i)
      if (pi[i] != 0) s = (s + static_cast<std::uint64_t>(pi[i]) * transform_[i][t]) % q;
    return static_cast<std::uint32_t>(s % R.power(column_exponent_[t]));
  };
  for (auto t : torsion_columns_) out.push_back(coord(t));
  for (auto t : full_columns_) out.push_back(coord(t));
  return out;
}

std::vector<std::uint32_t> ModularEchelon::Residual::torsion_coordinates(const Sparse& v) const {
  auto all = all_coordinates(v);
  all.resize(torsion_columns_.size());
  return all;
}

}  // namespace bordcalc
