#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rsc/complex.hpp"
#include "rsc/modp.hpp"

namespace rsc {

/// Rank over Q certified by agreement across random primes. The rank modulo any prime is a
/// lower bound on the rational rank, so `rank` is the maximum seen.
struct RankCertificate {
  std::int64_t rank = 0;
  std::vector<modp::Prime> primes;
  bool agreed = false;
};

struct HomologyProfile {
  std::int64_t dim_hd = 0;        // dim H_d = |F_d| - rank(boundary_d)
  std::int64_t dim_hd1 = 0;       // beta_{d-1}
  std::int64_t dim_ker_L = 0;     // left kernel of boundary_d
  std::int64_t n_faces_d = 0;
  std::int64_t n_faces_dm1 = 0;   // C(n, d)
  std::int64_t rank_d = 0;
  std::int64_t simplex_boundary_count = 0;
};

inline constexpr std::uint64_t kDefaultPrimeSeed = 0x5eed0f5eedULL;

std::int64_t rank_mod_p(const SignedIncidence& m, modp::Prime p);

/// Two primes; on disagreement keep adding primes (five at most) and report the maximum.
RankCertificate rank_q(const SignedIncidence& m, std::uint64_t prime_seed = kDefaultPrimeSeed);

/// rank of boundary_d(Y) via peeling: every elementary collapse contributes exactly one to the
/// rank, so only the core needs elimination.
RankCertificate boundary_rank(const Complex& y, std::uint64_t prime_seed = kDefaultPrimeSeed);

HomologyProfile homology_profile(const Complex& y, std::uint64_t prime_seed = kDefaultPrimeSeed);

/// Returns (beta_{d-1} - beta_d, C(n,d) - rank(boundary_{d-1}) - |F_d|); the two always agree.
std::pair<std::int64_t, std::int64_t> euler_check(const Complex& y, std::uint64_t prime_seed = kDefaultPrimeSeed);

/// (d+2)-subsets of vertices all of whose (d+1)-subsets are faces of Y.
std::vector<Simplex> simplex_boundaries(const Complex& y);
std::int64_t simplex_boundary_count(const Complex& y);

/// Dimension of the span of the (d+1)-simplex boundaries present in Y, as cycles of Y.
std::int64_t independent_simplex_boundaries(const Complex& y, std::uint64_t prime_seed = kDefaultPrimeSeed);

}  // namespace rsc
