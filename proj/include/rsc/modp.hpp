#pragma once

// Exact linear algebra over GF(p) for sparse +-1 incidence columns.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rsc::modp {

using Prime = std::uint32_t;

bool is_prime(std::uint64_t n);

/// `count` distinct primes in [2^30, 2^31), drawn deterministically from `seed`.
std::vector<Prime> random_primes(std::size_t count, std::uint64_t seed);

std::uint32_t inverse(std::uint32_t a, Prime p);

/// A column given as parallel row-index / signed-value arrays.
struct ColumnView {
  std::span<const std::uint32_t> rows;
  std::span<const std::int32_t> values;
};

/// Row-echelon basis of a growing set of columns. Each stored column is normalised so that
/// its lowest nonzero row (the pivot) holds 1, and no two stored columns share a pivot.
class EchelonBasis {
 public:
  /// Scratch space for one reduction; one per thread when querying concurrently.
  class Workspace {
   public:
    explicit Workspace(std::size_t rows) : dense_(rows, 0) {}

   private:
    friend class EchelonBasis;
    std::vector<std::uint32_t> dense_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::uint32_t> heap_;
  };

  EchelonBasis(std::size_t rows, Prime p);

  /// Adds the column if it is independent of the basis. Returns true when it was added.
  bool insert(ColumnView column);

  /// True if the column lies in the span of the basis. Safe to call concurrently with
  /// distinct workspaces.
  bool in_span(ColumnView column, Workspace& ws) const;
  bool in_span(ColumnView column) const;

  std::size_t rank() const { return columns_.size(); }
  std::size_t rows() const { return pivot_of_row_.size(); }
  Prime prime() const { return p_; }

 private:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  // Reduces `column` into ws. Returns the leading row of the residual, or rows() if it vanished.
  std::size_t reduce(ColumnView column, Workspace& ws) const;
  void clear(Workspace& ws) const;

  Prime p_;
  std::vector<std::int64_t> pivot_of_row_;
  std::vector<std::vector<Entry>> columns_;
  Workspace scratch_;
};

}  // namespace rsc::modp
