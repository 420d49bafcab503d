#include "rsc/complex.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "rsc/errors.hpp"
#include "rsc/modp.hpp"

namespace rsc {

namespace {

void require_shape(int n, int d) {
  if (d < 2) throw std::domain_error("dimension d must be >= 2");
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
}

void require_simplex(std::span<const Vertex> s, int n, int d) {
  if (static_cast<int>(s.size()) != d + 1) throw std::invalid_argument("face must have d+1 vertices");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= n) throw std::invalid_argument("face vertex out of range");
    if (i > 0 && s[i] <= s[i - 1]) throw std::invalid_argument("face vertices must be strictly increasing");
  }
}

constexpr std::uint64_t kHypertreePrimeSeed = 0x6879706572747265ULL;

}  // namespace

Complex::Complex(int n, int d) : n_(n), d_(d) { require_shape(n, d); }

Complex::Complex(int n, int d, const std::vector<Simplex>& faces) : n_(n), d_(d) {
  require_shape(n, d);
  ranks_.reserve(faces.size());
  for (const auto& f : faces) {
    require_simplex(f, n, d);
    ranks_.push_back(lex_rank(f, n));
  }
  std::sort(ranks_.begin(), ranks_.end());
  if (std::adjacent_find(ranks_.begin(), ranks_.end()) != ranks_.end()) {
    throw std::invalid_argument("duplicate face");
  }
  rebuild_vertices();
}

Complex Complex::from_ranks(int n, int d, std::vector<FaceIndex> ranks) {
  Complex y(n, d);
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  if (!ranks.empty() && ranks.back() >= binomial(n, d + 1)) throw std::invalid_argument("face rank out of range");
  y.ranks_ = std::move(ranks);
  y.rebuild_vertices();
  return y;
}

void Complex::rebuild_vertices() {
  vertices_.clear();
  vertices_.reserve(ranks_.size() * static_cast<std::size_t>(d_ + 1));
  for (const auto r : ranks_) {
    const auto s = lex_unrank(r, n_, d_ + 1);
    vertices_.insert(vertices_.end(), s.begin(), s.end());
  }
}

bool Complex::contains_rank(FaceIndex rank) const {
  return std::binary_search(ranks_.begin(), ranks_.end(), rank);
}

bool Complex::contains(std::span<const Vertex> simplex) const {
  return contains_rank(lex_rank(simplex, n_));
}

std::vector<Simplex> Complex::faces() const {
  std::vector<Simplex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(face(i).begin(), face(i).end());
  return out;
}

Complex Complex::with_face(std::span<const Vertex> simplex) const {
  require_simplex(simplex, n_, d_);
  const auto r = lex_rank(simplex, n_);
  if (contains_rank(r)) throw std::invalid_argument("face already present");
  auto ranks = ranks_;
  ranks.insert(std::upper_bound(ranks.begin(), ranks.end(), r), r);
  return from_ranks(n_, d_, std::move(ranks));
}

Complex sample(int n, int d, double c, std::uint64_t seed) {
  require_shape(n, d);
  if (!(c > 0.0) || c > static_cast<double>(n)) {
    throw InvalidProbability("sample: need 0 < c <= n, got c = " + std::to_string(c));
  }
  const double p = c / static_cast<double>(n);
  const std::uint64_t total = binomial(n, d + 1);
  std::vector<FaceIndex> ranks;
  if (p >= 1.0) {
    ranks.resize(total);
    std::iota(ranks.begin(), ranks.end(), FaceIndex{0});
  } else {
    // Skip ahead by geometric gaps so the cost is proportional to the number of faces kept.
    std::mt19937_64 rng(seed);
    std::geometric_distribution<std::uint64_t> gap(p);
    std::uint64_t next = gap(rng);
    while (next < total) {
      ranks.push_back(next);
      const auto skip = gap(rng);
      if (skip >= total - next) break;
      next += 1 + skip;
    }
  }
  return Complex::from_ranks(n, d, std::move(ranks));
}

Complex simplex_boundary(int n, int d) {
  if (n < d + 2) throw std::invalid_argument("simplex_boundary needs n >= d+2");
  std::vector<Simplex> faces;
  for (int omit = 0; omit < d + 2; ++omit) {
    Simplex f;
    for (int v = 0; v < d + 2; ++v) {
      if (v != omit) f.push_back(v);
    }
    faces.push_back(std::move(f));
  }
  return Complex(n, d, faces);
}

void boundary_column(std::span<const Vertex> face, int n, std::vector<std::uint32_t>& rows,
                     std::vector<std::int32_t>& signs) {
  rows.resize(face.size());
  signs.resize(face.size());
  std::vector<FaceIndex> facets(face.size());
  facet_ranks(face, n, facets);
  for (std::size_t i = 0; i < face.size(); ++i) {
    rows[i] = static_cast<std::uint32_t>(facets[i]);
    signs[i] = (i % 2 == 0) ? 1 : -1;
  }
}

namespace {

SignedIncidence assemble(std::int64_t rows, std::int64_t cols, int n, auto&& column_face) {
  SignedIncidence m(rows, cols);
  std::vector<Eigen::Triplet<std::int32_t, std::int64_t>> triplets;
  std::vector<std::uint32_t> r;
  std::vector<std::int32_t> s;
  for (std::int64_t j = 0; j < cols; ++j) {
    boundary_column(column_face(j), n, r, s);
    for (std::size_t i = 0; i < r.size(); ++i) triplets.emplace_back(r[i], j, s[i]);
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

SignedIncidence boundary_matrix(const Complex& y) {
  const auto rows = static_cast<std::int64_t>(binomial(y.n(), y.d()));
  return assemble(rows, static_cast<std::int64_t>(y.size()), y.n(),
                  [&](std::int64_t j) { return y.face(static_cast<std::size_t>(j)); });
}

SignedIncidence full_boundary_matrix(int n, int k) {
  if (k < 1) throw std::invalid_argument("full_boundary_matrix needs k >= 1");
  const auto rows = static_cast<std::int64_t>(binomial(n, k));
  const auto cols = static_cast<std::int64_t>(binomial(n, k + 1));
  Simplex scratch;
  return assemble(rows, cols, n, [&](std::int64_t j) -> std::span<const Vertex> {
    scratch = lex_unrank(static_cast<FaceIndex>(j), n, k + 1);
    return scratch;
  });
}

RidgeIncidence ridge_incidence(const Complex& y) {
  const int n = y.n();
  const auto k = static_cast<std::size_t>(y.d() + 1);
  const auto ridge_count = static_cast<std::size_t>(binomial(n, y.d()));
  RidgeIncidence inc;
  inc.facets.resize(y.size() * k);
  for (std::size_t f = 0; f < y.size(); ++f) facet_ranks(y.face(f), n, std::span(inc.facets).subspan(f * k, k));
  inc.offset.assign(ridge_count + 1, 0);
  for (const auto r : inc.facets) ++inc.offset[r + 1];
  std::partial_sum(inc.offset.begin(), inc.offset.end(), inc.offset.begin());
  inc.faces.resize(inc.facets.size());
  auto fill = inc.offset;
  for (std::size_t f = 0; f < y.size(); ++f) {
    for (std::size_t i = 0; i < k; ++i) inc.faces[fill[inc.facets[f * k + i]]++] = f;
  }
  return inc;
}

CollapseResult collapse(const Complex& y, std::optional<std::uint64_t> queue_shuffle_seed) {
  const int n = y.n();
  const int d = y.d();
  const auto k = static_cast<std::size_t>(d + 1);
  const auto ridge_count = static_cast<std::size_t>(binomial(n, d));

  const auto inc = ridge_incidence(y);
  const auto& facets = inc.facets;
  std::vector<std::uint32_t> degree(ridge_count);
  for (std::size_t r = 0; r < ridge_count; ++r) degree[r] = static_cast<std::uint32_t>(inc.degree(r));

  std::deque<std::size_t> queue;
  for (std::size_t r = 0; r < ridge_count; ++r) {
    if (degree[r] == 1) queue.push_back(r);
  }
  if (queue_shuffle_seed) {
    std::mt19937_64 rng(*queue_shuffle_seed);
    std::shuffle(queue.begin(), queue.end(), rng);
  }

  std::vector<bool> alive(y.size(), true);
  CollapseResult result{Complex(n, d), {}, 0};
  while (!queue.empty()) {
    const auto r = queue.front();
    queue.pop_front();
    if (degree[r] != 1) continue;  // stale entry
    std::size_t face = y.size();
    for (const auto f : inc.incident(r)) {
      if (alive[f]) {
        face = f;
        break;
      }
    }
    alive[face] = false;
    for (std::size_t i = 0; i < k; ++i) {
      const auto other = facets[face * k + i];
      if (--degree[other] == 1) queue.push_back(other);
    }
    const auto f = y.face(face);
    result.removed_pairs.push_back({lex_unrank(r, n, d), Simplex(f.begin(), f.end())});
  }

  std::vector<FaceIndex> core;
  for (std::size_t f = 0; f < y.size(); ++f) {
    if (alive[f]) core.push_back(y.ranks()[f]);
  }
  result.core = Complex::from_ranks(n, d, std::move(core));
  result.covered_remaining = static_cast<std::size_t>(std::count_if(degree.begin(), degree.end(), [](auto v) { return v > 0; }));
  return result;
}

Complex random_hypertree(int n, int d, std::uint64_t seed) {
  require_shape(n, d);
  if (n < d + 2) throw std::invalid_argument("random_hypertree needs n >= d+2");
  const auto total = binomial(n, d + 1);
  const auto target = binomial(n - 1, d);
  const auto rows = static_cast<std::size_t>(binomial(n, d));
  std::vector<FaceIndex> order(total);
  std::iota(order.begin(), order.end(), FaceIndex{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  // A column independent modulo some prime is independent over Q, so keep the face if either
  // basis accepts it and record it in both.
  const auto primes = modp::random_primes(2, kHypertreePrimeSeed);
  modp::EchelonBasis first(rows, primes[0]);
  modp::EchelonBasis second(rows, primes[1]);
  std::vector<FaceIndex> kept;
  std::vector<std::uint32_t> col_rows;
  std::vector<std::int32_t> col_signs;
  for (const auto rank : order) {
    if (kept.size() == target) break;
    const auto face = lex_unrank(rank, n, d + 1);
    boundary_column(face, n, col_rows, col_signs);
    const modp::ColumnView column{col_rows, col_signs};
    const bool a = first.insert(column);
    const bool b = second.insert(column);
    if (a || b) kept.push_back(rank);
  }
  return Complex::from_ranks(n, d, std::move(kept));
}

void write_complex(std::ostream& out, const Complex& y) {
  out << y.n() << ' ' << y.d() << '\n';
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto f = y.face(i);
    for (std::size_t j = 0; j < f.size(); ++j) out << (j ? " " : "") << f[j];
    out << '\n';
  }
}

Complex read_complex(std::istream& in) {
  int n = 0;
  int d = 0;
  if (!(in >> n >> d)) throw std::invalid_argument("complex: missing 'n d' header");
  require_shape(n, d);
  std::vector<Simplex> faces;
  Simplex f(static_cast<std::size_t>(d + 1));
  while (in >> f[0]) {
    for (std::size_t i = 1; i < f.size(); ++i) {
      if (!(in >> f[i])) throw std::invalid_argument("complex: truncated face line");
    }
    faces.push_back(f);
  }
  if (!in.eof()) throw std::invalid_argument("complex: malformed face line");
  return Complex(n, d, faces);
}

}  // namespace rsc
