#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bordcalc/abelian.hpp"

namespace bordcalc {

/// Column-major sparse integer matrix; no explicit zeros, no duplicate positions.
class SparseIntMat {
 public:
  using Entry = std::pair<std::uint32_t, std::int64_t>;  // (row, value)

  SparseIntMat(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::size_t nonzeros() const noexcept;

  /// Adds `value` at (row, col), merging with an existing entry and dropping zeros.
  void add(std::size_t row, std::size_t col, std::int64_t value);
  std::int64_t at(std::size_t row, std::size_t col) const noexcept;
  /// Appends a column given as (row, value) terms (merged and cleaned).
  void push_column(const std::vector<Entry>& terms);
  const std::vector<Entry>& column(std::size_t c) const noexcept { return columns_[c]; }

 private:
  std::size_t rows_;
  std::vector<std::vector<Entry>> columns_;  // each sorted by row
};

struct SmithForm {
  /// Nonzero diagonal entries as a divisibility chain (units included), length = rank.
  std::vector<std::uint64_t> diagonal;
  std::size_t rank = 0;
};

/// Dense elimination in 128-bit arithmetic; throws ErrorKind::Overflow if an entry escapes it.
SmithForm smith_normal_form(const SparseIntMat& m);

using IntMatrix = std::vector<std::vector<std::int64_t>>;  // row-major

SmithForm smith_normal_form(const IntMatrix& rows, std::size_t cols);

/// Z^dim / (row span of `relations`).
AbelianGroupDescriptor cokernel(const IntMatrix& relations, std::size_t dim);

/// Lattice basis {u : A u = 0} of the integer kernel, one vector per entry.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols);

/// Row echelon (Hermite) basis of the lattice spanned by `generators` in Z^dim.
IntMatrix lattice_basis(const IntMatrix& generators, std::size_t dim);

/// Integer coordinates of v in an echelon basis from lattice_basis, or nullopt if v is not in the lattice.
std::optional<std::vector<std::int64_t>> solve_in_basis(const IntMatrix& basis, const std::vector<std::int64_t>& v);

}  // namespace bordcalc
