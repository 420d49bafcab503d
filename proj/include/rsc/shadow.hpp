#pragma once

#include <cstdint>
#include <vector>

#include "rsc/complex.hpp"
#include "rsc/homology.hpp"

namespace rsc {

/// SH_R(Y): the d-faces outside Y whose addition creates a new d-cycle.
struct ShadowReport {
  std::vector<Simplex> members;  // lexicographic order
  double density = 0.0;          // |members| / C(n, d+1)
  std::size_t boundary_completions = 0;
};

/// Largest n accepted by shadow_naive.
inline constexpr int kNaiveShadowMaxN = 14;

/// A candidate is a member iff its boundary column lies in the column space of boundary_d(Y).
/// Dependence found modulo the first prime is confirmed modulo a second one.
ShadowReport shadow(const Complex& y, std::uint64_t prime_seed = kDefaultPrimeSeed);

/// Recomputes dim H_d(Y + sigma) from scratch for every candidate. n <= kNaiveShadowMaxN.
ShadowReport shadow_naive(const Complex& y, std::uint64_t prime_seed = kDefaultPrimeSeed);

/// True if adding `face` to Y completes the boundary of some (d+1)-simplex.
bool completes_simplex_boundary(const Complex& y, std::span<const Vertex> face);

}  // namespace rsc
