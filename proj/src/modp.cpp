#include "rsc/modp.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace rsc::modp {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1U) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint32_t to_field(std::int32_t v, Prime p) {
  const std::int64_t r = static_cast<std::int64_t>(v) % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

}  // namespace

// Deterministic Miller-Rabin; bases {2, 7, 61} are exact below 4,759,123,141.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % q == 0) return n == q;
  }
  if (n >= 4759123141ULL) throw std::domain_error("is_prime: argument above the deterministic range");
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<Prime> random_primes(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(1U << 30U, (1U << 31U) - 1U);
  std::vector<Prime> out;
  while (out.size() < count) {
    const std::uint32_t candidate = dist(rng) | 1U;
    if (is_prime(candidate) && std::find(out.begin(), out.end(), candidate) == out.end()) {
      out.push_back(candidate);
    }
  }
  return out;
}

std::uint32_t inverse(std::uint32_t a, Prime p) {
  if (a % p == 0) throw std::domain_error("inverse of zero");
  return static_cast<std::uint32_t>(pow_mod(a, p - 2, p));
}

EchelonBasis::EchelonBasis(std::size_t rows, Prime p) : p_(p), pivot_of_row_(rows, -1), scratch_(rows) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("EchelonBasis needs an odd prime modulus");
}

void EchelonBasis::clear(Workspace& ws) const {
  for (const auto r : ws.touched_) ws.dense_[r] = 0;
  ws.touched_.clear();
  ws.heap_.clear();
}

std::size_t EchelonBasis::reduce(ColumnView column, Workspace& ws) const {
  auto& dense = ws.dense_;
  auto& heap = ws.heap_;
  const auto cmp = std::greater<>{};
  auto add = [&](std::uint32_t row, std::uint64_t value) {
    const bool was_zero = dense[row] == 0;
    dense[row] = static_cast<std::uint32_t>((dense[row] + value) % p_);
    if (was_zero && dense[row] != 0) {
      ws.touched_.push_back(row);
      heap.push_back(row);
      std::push_heap(heap.begin(), heap.end(), cmp);
    }
  };
  for (std::size_t i = 0; i < column.rows.size(); ++i) add(column.rows[i], to_field(column.values[i], p_));
  // Rows come off the heap in increasing order; eliminating with a pivot column only
  // touches rows at or below its pivot.
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const auto r = heap.back();
    heap.pop_back();
    const std::uint32_t coeff = dense[r];
    if (coeff == 0) continue;
    const auto pivot = pivot_of_row_[r];
    if (pivot < 0) return r;
    const std::uint64_t factor = p_ - coeff;
    for (const auto& [row, val] : columns_[static_cast<std::size_t>(pivot)]) add(row, factor * val % p_);
  }
  return rows();
}

bool EchelonBasis::in_span(ColumnView column, Workspace& ws) const {
  const bool dependent = reduce(column, ws) == rows();
  clear(ws);
  return dependent;
}

bool EchelonBasis::in_span(ColumnView column) const {
  Workspace ws(rows());
  return in_span(column, ws);
}

bool EchelonBasis::insert(ColumnView column) {
  auto& ws = scratch_;
  const auto lead = reduce(column, ws);
  if (lead == rows()) {
    clear(ws);
    return false;
  }
  const std::uint64_t scale = inverse(ws.dense_[lead], p_);
  std::vector<Entry> stored;
  stored.emplace_back(static_cast<std::uint32_t>(lead), 1U);
  auto rows_touched = ws.touched_;
  std::sort(rows_touched.begin(), rows_touched.end());
  rows_touched.erase(std::unique(rows_touched.begin(), rows_touched.end()), rows_touched.end());
  for (const auto r : rows_touched) {
    if (r <= lead || ws.dense_[r] == 0) continue;
    stored.emplace_back(r, static_cast<std::uint32_t>(ws.dense_[r] * scale % p_));
  }
  pivot_of_row_[lead] = static_cast<std::int64_t>(columns_.size());
  columns_.push_back(std::move(stored));
  clear(ws);
  return true;
}

}  // namespace rsc::modp
