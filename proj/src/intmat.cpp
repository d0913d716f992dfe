#include "bordcalc/intmat.hpp"

#include <algorithm>
#include <numeric>

#include "bordcalc/error.hpp"

namespace bordcalc {

namespace {

using I128 = __int128;

I128 checked_mul(I128 a, I128 b) {
  I128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Overflow, "integer elimination overflowed 128 bits; use the modular method");
  return r;
}

I128 checked_sub(I128 a, I128 b) {
  I128 r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::Overflow, "integer elimination overflowed 128 bits; use the modular method");
  return r;
}

I128 abs128(I128 x) { return x < 0 ? -x : x; }

I128 gcd128(I128 a, I128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(I128 x) {
  if (x > INT64_MAX || x < INT64_MIN) fail(ErrorKind::Overflow, "integer result does not fit 64 bits");
  return static_cast<std::int64_t>(x);
}

using Dense = std::vector<std::vector<I128>>;

// Row operation r_dst -= f * r_src, then column variant below.
void row_axpy(Dense& m, std::size_t dst, std::size_t src, I128 f, std::size_t from = 0) {
  if (f == 0) return;
  for (std::size_t j = from; j < m[dst].size(); ++j)
    if (m[src][j] != 0) m[dst][j] = checked_sub(m[dst][j], checked_mul(f, m[src][j]));
}

void col_axpy(Dense& m, std::size_t dst, std::size_t src, I128 f, std::size_t from = 0) {
  if (f == 0) return;
  for (std::size_t i = from; i < m.size(); ++i)
    if (m[i][src] != 0) m[i][dst] = checked_sub(m[i][dst], checked_mul(f, m[i][src]));
}

SmithForm smith_dense(Dense m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<I128> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: least absolute value, then least row, then least column
    std::size_t pr = rows, pc = cols;
    I128 best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || abs128(m[i][j]) < best)) {
          best = abs128(m[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        row_axpy(m, i, t, m[i][t] / m[t][t], t);
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        col_axpy(m, j, t, m[t][j] / m[t][t], t);
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs128(m[t][t]));
    ++t;
  }
  // divisibility chain: (a, b) -> (gcd, lcm)
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      I128 g = gcd128(diag[i], diag[j]);
      if (g == diag[i]) continue;
      I128 l = checked_mul(diag[i] / g, diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  SmithForm out;
  out.rank = diag.size();
  for (auto d : diag) {
    if (d > static_cast<I128>(UINT64_MAX)) fail(ErrorKind::Overflow, "invariant factor does not fit 64 bits");
    out.diagonal.push_back(static_cast<std::uint64_t>(d));
  }
  return out;
}

}  // namespace

std::size_t SparseIntMat::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseIntMat::add(std::size_t row, std::size_t col, std::int64_t value) {
  if (row >= rows_ || col >= columns_.size()) fail(ErrorKind::Domain, "matrix index out of range");
  if (value == 0) return;
  auto& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, std::size_t r) { return e.first < r; });
  if (it != c.end() && it->first == row) {
    it->second += value;
    if (it->second == 0) c.erase(it);
  } else {
    c.insert(it, {static_cast<std::uint32_t>(row), value});
  }
}

std::int64_t SparseIntMat::at(std::size_t row, std::size_t col) const noexcept {
  const auto& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, std::size_t r) { return e.first < r; });
  return it != c.end() && it->first == row ? it->second : 0;
}

void SparseIntMat::push_column(const std::vector<Entry>& terms) {
  columns_.emplace_back();
  for (const auto& [r, v] : terms) add(r, columns_.size() - 1, v);
}

SmithForm smith_normal_form(const SparseIntMat& m) {
  // work on whichever orientation has fewer rows; SNF is transpose-invariant
  bool transpose = m.cols() < m.rows();
  std::size_t r = transpose ? m.cols() : m.rows(), c = transpose ? m.rows() : m.cols();
  Dense d(r, std::vector<I128>(c, 0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) (transpose ? d[j][i] : d[i][j]) = v;
  return smith_dense(std::move(d), c);
}

SmithForm smith_normal_form(const IntMatrix& rows, std::size_t cols) {
  Dense d;
  for (const auto& row : rows) {
    if (row.size() != cols) fail(ErrorKind::Domain, "ragged matrix");
    d.emplace_back(row.begin(), row.end());
  }
  return smith_dense(std::move(d), cols);
}

AbelianGroupDescriptor cokernel(const IntMatrix& relations, std::size_t dim) {
  auto s = smith_normal_form(relations, dim);
  std::vector<std::uint64_t> orders;
  for (auto d : s.diagonal)
    if (d > 1) orders.push_back(d);
  return {dim - s.rank, orders};
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols) {
  // column echelon form of A with the unimodular transform U (A U = E); kernel = U's columns over zero columns of E
  Dense m;
  for (const auto& row : a) {
    if (row.size() != cols) fail(ErrorKind::Domain, "ragged matrix");
    m.emplace_back(row.begin(), row.end());
  }
  Dense u(cols, std::vector<I128>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, I128 f) {
    col_axpy(m, dst, src, f);
    col_axpy(u, dst, src, f);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : m) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  std::size_t lead = 0;
  for (std::size_t i = 0; i < m.size() && lead < cols; ++i) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = lead; j < cols; ++j)
        if (m[i][j] != 0 && (best == cols || abs128(m[i][j]) < abs128(m[i][best]))) best = j;
      if (best == cols) break;
      col_swap(lead, best);
      bool done = true;
      for (std::size_t j = lead + 1; j < cols; ++j)
        if (m[i][j] != 0) {
          col_op(j, lead, m[i][j] / m[i][lead]);
          if (m[i][j] != 0) done = false;
        }
      if (done) {
        ++lead;
        break;
      }
    }
  }
  IntMatrix out;
  for (std::size_t j = lead; j < cols; ++j) {
    std::vector<std::int64_t> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = narrow(u[i][j]);
    out.push_back(std::move(v));
  }
  return out;
}

IntMatrix lattice_basis(const IntMatrix& generators, std::size_t dim) {
  Dense m;
  for (const auto& g : generators) {
    if (g.size() != dim) fail(ErrorKind::Domain, "ragged matrix");
    m.emplace_back(g.begin(), g.end());
  }
  std::size_t top = 0;
  for (std::size_t c = 0; c < dim && top < m.size(); ++c) {
    for (;;) {
      std::size_t best = m.size();
      for (std::size_t i = top; i < m.size(); ++i)
        if (m[i][c] != 0 && (best == m.size() || abs128(m[i][c]) < abs128(m[best][c]))) best = i;
      if (best == m.size()) break;
      std::swap(m[top], m[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < m.size(); ++i)
        if (m[i][c] != 0) {
          row_axpy(m, i, top, m[i][c] / m[top][c]);
          if (m[i][c] != 0) done = false;
        }
      if (done) {
        if (m[top][c] < 0)
          for (auto& x : m[top]) x = -x;
        ++top;
        break;
      }
    }
  }
  IntMatrix out;
  for (std::size_t i = 0; i < top; ++i) {
    std::vector<std::int64_t> v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = narrow(m[i][j]);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<std::int64_t>> solve_in_basis(const IntMatrix& basis, const std::vector<std::int64_t>& v) {
  std::vector<I128> rest(v.begin(), v.end());
  std::vector<std::int64_t> coords(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::size_t lead = 0;
    while (lead < basis[i].size() && basis[i][lead] == 0) ++lead;
    if (lead == basis[i].size()) continue;
    for (std::size_t j = 0; j < lead; ++j)
      if (rest[j] != 0) return std::nullopt;
    if (rest[lead] % basis[i][lead] != 0) return std::nullopt;
    I128 f = rest[lead] / basis[i][lead];
    coords[i] = narrow(f);
    for (std::size_t j = lead; j < rest.size(); ++j) rest[j] = checked_sub(rest[j], checked_mul(f, basis[i][j]));
  }
  for (auto x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

}  // namespace bordcalc
