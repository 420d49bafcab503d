#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rsc {

using Vertex = int;
/// A face as a strictly increasing vertex tuple.
using Simplex = std::vector<Vertex>;
using FaceIndex = std::uint64_t;

/// Binomial coefficient; throws std::overflow_error if the result does not fit in 64 bits.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// Position of a sorted k-subset of [0, n) in lexicographic order of all k-subsets.
FaceIndex lex_rank(std::span<const Vertex> subset, int n);

/// Inverse of lex_rank.
Simplex lex_unrank(FaceIndex rank, int n, int k);

/// Writes the lex rank of subset minus its i-th vertex into out[i]; out must hold subset.size() entries.
void facet_ranks(std::span<const Vertex> subset, int n, std::span<FaceIndex> out);

}  // namespace rsc
