#include "rsc/shadow.hpp"

#include <algorithm>
#include <string>

#include "rsc/errors.hpp"

namespace rsc {

namespace {

ShadowReport finish(const Complex& y, std::vector<Simplex> members) {
  ShadowReport report;
  report.members = std::move(members);
  report.density = static_cast<double>(report.members.size()) / static_cast<double>(binomial(y.n(), y.d() + 1));
  report.boundary_completions = static_cast<std::size_t>(std::count_if(
      report.members.begin(), report.members.end(), [&](const Simplex& s) { return completes_simplex_boundary(y, s); }));
  return report;
}

}  // namespace

bool completes_simplex_boundary(const Complex& y, std::span<const Vertex> face) {
  const auto k = face.size();
  Simplex big(k + 1);
  Simplex facet(k);
  for (Vertex v = 0; v < y.n(); ++v) {
    if (std::binary_search(face.begin(), face.end(), v)) continue;
    std::merge(face.begin(), face.end(), &v, &v + 1, big.begin());
    bool complete = true;
    for (std::size_t omit = 0; omit < big.size() && complete; ++omit) {
      if (big[omit] == v) continue;  // the facet that omits v is `face` itself
      std::size_t w = 0;
      for (std::size_t j = 0; j < big.size(); ++j) {
        if (j != omit) facet[w++] = big[j];
      }
      complete = y.contains(facet);
    }
    if (complete) return true;
  }
  return false;
}

ShadowReport shadow(const Complex& y, std::uint64_t prime_seed) {
  const int n = y.n();
  const int d = y.d();
  const auto rows = static_cast<std::size_t>(binomial(n, d));
  const auto primes = modp::random_primes(2, prime_seed);
  modp::EchelonBasis primary(rows, primes[0]);
  modp::EchelonBasis confirm(rows, primes[1]);
  std::vector<std::uint32_t> col_rows;
  std::vector<std::int32_t> col_signs;
  for (std::size_t f = 0; f < y.size(); ++f) {
    boundary_column(y.face(f), n, col_rows, col_signs);
    primary.insert({col_rows, col_signs});
    confirm.insert({col_rows, col_signs});
  }

  modp::EchelonBasis::Workspace ws_primary(rows);
  modp::EchelonBasis::Workspace ws_confirm(rows);
  std::vector<Simplex> members;
  const auto total = binomial(n, d + 1);
  for (FaceIndex r = 0; r < total; ++r) {
    if (y.contains_rank(r)) continue;
    auto face = lex_unrank(r, n, d + 1);
    boundary_column(face, n, col_rows, col_signs);
    const modp::ColumnView column{col_rows, col_signs};
    if (primary.in_span(column, ws_primary) && confirm.in_span(column, ws_confirm)) {
      members.push_back(std::move(face));
    }
  }
  return finish(y, std::move(members));
}

ShadowReport shadow_naive(const Complex& y, std::uint64_t prime_seed) {
  if (y.n() > kNaiveShadowMaxN) {
    throw ScaleExceeded("shadow_naive: n = " + std::to_string(y.n()) + " exceeds " +
                        std::to_string(kNaiveShadowMaxN));
  }
  const auto base = static_cast<std::int64_t>(y.size()) - rank_q(boundary_matrix(y), prime_seed).rank;
  std::vector<Simplex> members;
  const auto total = binomial(y.n(), y.d() + 1);
  for (FaceIndex r = 0; r < total; ++r) {
    if (y.contains_rank(r)) continue;
    const auto face = lex_unrank(r, y.n(), y.d() + 1);
    const auto bigger = y.with_face(face);
    const auto dim = static_cast<std::int64_t>(bigger.size()) - rank_q(boundary_matrix(bigger), prime_seed).rank;
    if (dim > base) members.push_back(face);
  }
  return finish(y, std::move(members));
}

}  // namespace rsc
