#include "rsc/homology.hpp"

#include <algorithm>
#include <numeric>

namespace rsc {

namespace {

constexpr std::size_t kMaxPrimes = 5;

// Columns ordered by nonzero count, lightest first.
std::vector<std::int64_t> column_order(const SignedIncidence& m) {
  std::vector<std::int64_t> order(static_cast<std::size_t>(m.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto* outer = m.outerIndexPtr();
    return outer[a + 1] - outer[a] < outer[b + 1] - outer[b];
  });
  return order;
}

}  // namespace

std::int64_t rank_mod_p(const SignedIncidence& m, modp::Prime p) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  SignedIncidence compressed = m;
  compressed.makeCompressed();
  modp::EchelonBasis basis(static_cast<std::size_t>(compressed.rows()), p);
  std::vector<std::uint32_t> rows;
  std::vector<std::int32_t> values;
  for (const auto j : column_order(compressed)) {
    rows.clear();
    values.clear();
    for (SignedIncidence::InnerIterator it(compressed, j); it; ++it) {
      if (it.value() == 0) continue;
      rows.push_back(static_cast<std::uint32_t>(it.row()));
      values.push_back(it.value());
    }
    basis.insert({rows, values});
  }
  return static_cast<std::int64_t>(basis.rank());
}

RankCertificate rank_q(const SignedIncidence& m, std::uint64_t prime_seed) {
  const auto primes = modp::random_primes(kMaxPrimes, prime_seed);
  RankCertificate cert;
  std::vector<std::int64_t> seen;
  for (const auto p : primes) {
    cert.primes.push_back(p);
    seen.push_back(rank_mod_p(m, p));
    if (seen.size() >= 2 && seen[seen.size() - 1] == seen[seen.size() - 2]) {
      cert.agreed = std::all_of(seen.begin(), seen.end(), [&](auto r) { return r == seen.front(); });
      break;
    }
  }
  cert.rank = *std::max_element(seen.begin(), seen.end());
  return cert;
}

RankCertificate boundary_rank(const Complex& y, std::uint64_t prime_seed) {
  const auto peeled = collapse(y);
  auto cert = rank_q(boundary_matrix(peeled.core), prime_seed);
  cert.rank += static_cast<std::int64_t>(peeled.removed_pairs.size());
  return cert;
}

HomologyProfile homology_profile(const Complex& y, std::uint64_t prime_seed) {
  HomologyProfile h;
  const int n = y.n();
  const int d = y.d();
  h.n_faces_d = static_cast<std::int64_t>(y.size());
  h.n_faces_dm1 = static_cast<std::int64_t>(binomial(n, d));
  h.rank_d = boundary_rank(y, prime_seed).rank;
  // The full simplex is acyclic, so boundary_{d-1} of the full skeleton has rank C(n-1, d-1).
  const auto rank_dm1 = n > 0 ? static_cast<std::int64_t>(binomial(n - 1, d - 1)) : 0;
  h.dim_hd = h.n_faces_d - h.rank_d;
  h.dim_ker_L = h.n_faces_dm1 - h.rank_d;
  h.dim_hd1 = (h.n_faces_dm1 - rank_dm1) - h.rank_d;
  h.simplex_boundary_count = simplex_boundary_count(y);
  return h;
}

std::pair<std::int64_t, std::int64_t> euler_check(const Complex& y, std::uint64_t prime_seed) {
  const auto h = homology_profile(y, prime_seed);
  const auto rank_dm1 = y.n() > 0 ? static_cast<std::int64_t>(binomial(y.n() - 1, y.d() - 1)) : 0;
  return {h.dim_hd1 - h.dim_hd, h.n_faces_dm1 - rank_dm1 - h.n_faces_d};
}

std::vector<Simplex> simplex_boundaries(const Complex& y) {
  std::vector<Simplex> out;
  const int n = y.n();
  const auto k = static_cast<std::size_t>(y.d() + 1);
  Simplex big(k + 1);
  Simplex facet(k);
  // Each (d+2)-set is reached exactly once, from its facet that omits the largest vertex.
  for (std::size_t f = 0; f < y.size(); ++f) {
    const auto face = y.face(f);
    for (Vertex v = face.back() + 1; v < n; ++v) {
      std::copy(face.begin(), face.end(), big.begin());
      big[k] = v;
      bool complete = true;
      for (std::size_t omit = 0; omit + 1 < big.size() && complete; ++omit) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < big.size(); ++j) {
          if (j != omit) facet[w++] = big[j];
        }
        complete = y.contains(facet);
      }
      if (complete) out.push_back(big);
    }
  }
  return out;
}

std::int64_t simplex_boundary_count(const Complex& y) {
  return static_cast<std::int64_t>(simplex_boundaries(y).size());
}

std::int64_t independent_simplex_boundaries(const Complex& y, std::uint64_t prime_seed) {
  const auto cycles = simplex_boundaries(y);
  if (cycles.empty()) return 0;
  // Columns are boundary_{d+1} of each (d+2)-set, expressed on Y's faces (row = face index).
  SignedIncidence m(static_cast<std::int64_t>(y.size()), static_cast<std::int64_t>(cycles.size()));
  std::vector<Eigen::Triplet<std::int32_t, std::int64_t>> triplets;
  Simplex facet(static_cast<std::size_t>(y.d() + 1));
  for (std::size_t j = 0; j < cycles.size(); ++j) {
    const auto& big = cycles[j];
    for (std::size_t omit = 0; omit < big.size(); ++omit) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < big.size(); ++i) {
        if (i != omit) facet[w++] = big[i];
      }
      const auto rank = lex_rank(facet, y.n());
      const auto row = std::lower_bound(y.ranks().begin(), y.ranks().end(), rank) - y.ranks().begin();
      triplets.emplace_back(row, static_cast<std::int64_t>(j), omit % 2 == 0 ? 1 : -1);
    }
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  return rank_q(m, prime_seed).rank;
}

}  // namespace rsc
