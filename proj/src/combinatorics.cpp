#include "rsc/combinatorics.hpp"

#include <limits>
#include <string>

namespace rsc {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// Subsets preceding S lexicographically: for each position i, count subsets that agree on
// s_0..s_{i-1} and take a smaller value at position i. Summed with the hockey-stick identity.
FaceIndex lex_rank(std::span<const Vertex> subset, int n) {
  const auto k = static_cast<std::int64_t>(subset.size());
  FaceIndex rank = 0;
  std::int64_t prev = -1;
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t v = subset[static_cast<std::size_t>(i)];
    rank += binomial(n - (prev + 1), k - i) - binomial(n - v, k - i);
    prev = v;
  }
  return rank;
}

Simplex lex_unrank(FaceIndex rank, int n, int k) {
  Simplex out;
  out.reserve(static_cast<std::size_t>(k));
  Vertex v = 0;
  for (int i = 0; i < k; ++i) {
    for (;; ++v) {
      const auto block = binomial(n - v - 1, k - i - 1);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(v++);
  }
  return out;
}

void facet_ranks(std::span<const Vertex> subset, int n, std::span<FaceIndex> out) {
  Simplex facet(subset.size() - 1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (j != i) facet[w++] = subset[j];
    }
    out[i] = lex_rank(facet, n);
  }
}

}  // namespace rsc
