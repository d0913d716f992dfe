#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace bordcalc {

/// Arithmetic in Z/p^k with p^k < 2^31.
class PrimePowerRing {
 public:
  PrimePowerRing(std::uint32_t p, unsigned k);

  std::uint32_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint32_t modulus() const noexcept { return q_; }
  std::uint32_t power(unsigned e) const noexcept { return pow_[e]; }

  std::uint32_t reduce(std::int64_t x) const noexcept {
    auto r = x % static_cast<std::int64_t>(q_);
    return static_cast<std::uint32_t>(r < 0 ? r + q_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
  /// p-adic valuation, k for zero.
  unsigned valuation(std::uint32_t a) const noexcept;
  /// Inverse of a unit.
  std::uint32_t inverse(std::uint32_t unit) const;
  /// Splits a nonzero a as p^v * u with u a unit; returns (v, u).
  std::pair<unsigned, std::uint32_t> split(std::uint32_t a) const;

 private:
  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> pow_;
};

/// Z/p^k-module quotient data: Q = (Z/p^k)^dim / span(inserted vectors) = (+) Z/p^(e_t) + (Z/p^k)^free.
struct ModularQuotient {
  std::uint32_t p = 0;
  unsigned k = 0;
  std::vector<unsigned> torsion_exponents;  // 0 < e < k, ascending
  std::size_t full_summands = 0;            // number of Z/p^k summands
  /// log_p |Q|
  std::uint64_t log_order() const noexcept;
};

/// Incremental span over Z/p^k of dense vectors, kept in echelon form with leading entries p^e.
/// Rows with unit leading entries are fully reduced against each other, so the quotient splits into
/// the non-unit positions plus a small relation block.
class ModularEchelon {
 public:
  using Sparse = std::vector<std::pair<std::uint32_t, std::int64_t>>;

  ModularEchelon(PrimePowerRing ring, std::size_t dim);

  const PrimePowerRing& ring() const noexcept { return ring_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t unit_pivots() const noexcept { return dim_ - free_positions_.size(); }
  std::size_t rows() const noexcept { return rows_.size(); }

  void insert(const Sparse& v);
  void insert_dense(std::vector<std::uint32_t> v);

  /// Smith form of the residual block, with a coordinate map for the quotient.
  class Residual {
   public:
    const ModularQuotient& quotient() const noexcept { return quotient_; }
    /// Torsion coordinates of v's image: one value mod p^(e_t) per torsion summand.
    std::vector<std::uint32_t> torsion_coordinates(const Sparse& v) const;
    /// Coordinates in every summand (torsion first, then the Z/p^k summands).
    std::vector<std::uint32_t> all_coordinates(const Sparse& v) const;

   private:
    friend class ModularEchelon;
    PrimePowerRing ring_{2, 1};
    ModularQuotient quotient_;
    std::vector<std::uint32_t> free_positions_;
    std::vector<std::int32_t> position_index_;       // dim -> index in free_positions_ or -1
    std::vector<std::int32_t> unit_row_at_;          // dim -> row of the unit pivot there or -1
    std::vector<std::vector<std::uint32_t>> unit_rows_;  // restricted to free positions
    std::vector<std::vector<std::uint32_t>> transform_;  // free x free, row vector times transform
    std::vector<std::size_t> torsion_columns_;
    std::vector<unsigned> column_exponent_;              // per transform column: e (k for full)
    std::vector<std::size_t> full_columns_;
  };

  Residual residual() const;

 private:
  void reduce_units(std::vector<std::uint32_t>& v) const;
  void insert_reduced(std::vector<std::uint32_t> v);
  void add_unit_pivot(std::size_t row);
  void axpy_free(std::vector<std::uint32_t>& dst, std::uint32_t f, const std::vector<std::uint32_t>& src) const;

  PrimePowerRing ring_;
  std::size_t dim_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::uint32_t> row_pivot_;
  std::vector<unsigned> row_exponent_;
  std::vector<std::int32_t> pivot_row_;       // position -> row or -1
  std::vector<std::uint32_t> free_positions_;  // positions without a unit pivot, ascending
  std::vector<char> is_free_;
};

}  // namespace bordcalc
