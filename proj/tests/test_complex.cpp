#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "rsc/complex.hpp"
#include "rsc/errors.hpp"
#include "rsc/homology.hpp"

using namespace rsc;

namespace {

bool has_exposed_ridge(const Complex& y) {
  const auto inc = ridge_incidence(y);
  for (std::size_t r = 0; r + 1 < inc.offset.size(); ++r) {
    if (inc.degree(r) == 1) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("construction validates faces") {
  CHECK_THROWS_AS(Complex(5, 1), std::domain_error);
  CHECK_THROWS_AS(Complex(5, 2, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Complex(5, 2, {{0, 2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Complex(5, 2, {{0, 1, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(Complex(5, 2, {{0, 1, 2}, {0, 1, 2}}), std::invalid_argument);
  const Complex y(6, 2, {{2, 3, 5}, {0, 1, 2}});
  CHECK(y.size() == 2);
  CHECK(y.faces() == std::vector<Simplex>{{0, 1, 2}, {2, 3, 5}});
  CHECK(y.contains(Simplex{2, 3, 5}));
  CHECK_FALSE(y.contains(Simplex{1, 2, 3}));
  CHECK(y.with_face(Simplex{1, 2, 3}).size() == 3);
  CHECK_THROWS_AS(y.with_face(Simplex{0, 1, 2}), std::invalid_argument);
  CHECK(Complex::from_ranks(6, 2, y.ranks()) == y);
}

TEST_CASE("sample") {
  CHECK_THROWS_AS(sample(30, 2, 0.0, 1), InvalidProbability);
  CHECK_THROWS_AS(sample(30, 2, -1.0, 1), InvalidProbability);
  CHECK_THROWS_AS(sample(30, 2, 31.0, 1), InvalidProbability);
  CHECK(sample(30, 2, 1e-12, 1).empty());
  CHECK(sample(8, 2, 8.0, 1).size() == binomial(8, 3));
  CHECK(sample(50, 2, 3.0, 1) != sample(50, 2, 3.0, 2));
  CHECK(sample(50, 2, 3.0, 9) == sample(50, 2, 3.0, 9));

  const double p = 3.0 / 100;
  const double total = static_cast<double>(binomial(100, 3));
  const double sd = std::sqrt(total * p * (1 - p));
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto y = sample(100, 2, 3.0, seed);
    CHECK(std::abs(static_cast<double>(y.size()) - total * p) < 4 * sd);
    sum += static_cast<double>(y.size());
  }
  CHECK(std::abs(sum / 200 - 4851.0) < 3 * sd / std::sqrt(200.0));
}

TEST_CASE("sampled faces are canonical") {
  const auto y = sample(40, 3, 4.0, 5);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto f = y.face(i);
    CHECK(lex_rank(f, 40) == y.ranks()[i]);
    for (std::size_t j = 1; j < f.size(); ++j) CHECK(f[j - 1] < f[j]);
  }
}

TEST_CASE("boundary_matrix") {
  const Complex tri(3, 2, {{0, 1, 2}});
  const auto m = boundary_matrix(tri);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 1);
  // Rows in lex order: {0,1}, {0,2}, {1,2}.
  CHECK(m.coeff(0, 0) == 1);
  CHECK(m.coeff(1, 0) == -1);
  CHECK(m.coeff(2, 0) == 1);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 2 + static_cast<int>(seed % 2);
    const auto y = sample(9, d, 3.0, seed);
    const auto b = boundary_matrix(y);
    for (Eigen::Index j = 0; j < b.cols(); ++j) CHECK(b.col(j).nonZeros() == d + 1);
    const SignedIncidence prod = full_boundary_matrix(9, d - 1) * b;
    CHECK(prod.norm() == 0);
  }
}

TEST_CASE("two d-faces share at most one ridge") {
  const auto y = sample(15, 2, 6.0, 3);
  const auto b = boundary_matrix(y);
  Eigen::SparseMatrix<std::int32_t> abs_b = b.cast<std::int32_t>().cwiseAbs();
  const Eigen::SparseMatrix<std::int32_t> gram = abs_b.transpose() * abs_b;
  for (Eigen::Index j = 0; j < gram.outerSize(); ++j) {
    for (Eigen::SparseMatrix<std::int32_t>::InnerIterator it(gram, j); it; ++it) {
      if (it.row() != it.col()) CHECK(it.value() <= 1);
    }
  }
}

TEST_CASE("full boundary matrices compose to zero") {
  for (int k = 2; k <= 4; ++k) {
    const SignedIncidence prod = full_boundary_matrix(8, k - 1) * full_boundary_matrix(8, k);
    CHECK(prod.norm() == 0);
  }
}

TEST_CASE("collapse basics") {
  const auto sb = simplex_boundary(7, 2);
  CHECK(sb.size() == 4);
  const auto r = collapse(sb);
  CHECK(r.core == sb);
  CHECK(r.removed_pairs.empty());

  const Complex single(7, 2, {{1, 3, 4}});
  const auto s = collapse(single);
  CHECK(s.core.empty());
  REQUIRE(s.removed_pairs.size() == 1);
  CHECK(s.removed_pairs[0].face == Simplex{1, 3, 4});
}

TEST_CASE("collapse invariants on random complexes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto y = sample(30, 2, 1.5 + 0.05 * static_cast<double>(seed), seed);
    const auto r = collapse(y);
    CHECK(r.removed_pairs.size() + r.core.size() == y.size());
    CHECK_FALSE(has_exposed_ridge(r.core));
    for (const auto& pair : r.removed_pairs) {
      CHECK(y.contains(pair.face));
      CHECK_FALSE(r.core.contains(pair.face));
    }
    CHECK(collapse(y) == r);
  }
}

TEST_CASE("collapse core does not depend on queue order") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto y = sample(25, 2, 2.4, seed);
    const auto reference = collapse(y).core;
    for (std::uint64_t order = 1; order <= 20; ++order) CHECK(collapse(y, order).core == reference);
  }
}

TEST_CASE("a planted simplex boundary never collapses away") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto y = sample(40, 2, 0.5, seed);
    for (const Simplex& f : simplex_boundary(40, 2).faces()) {
      if (!y.contains(f)) y = y.with_face(f);
    }
    CHECK_FALSE(collapse(y).core.empty());
  }
}

TEST_CASE("collapse thresholds at desk scale") {
  // Below c_col the core is a bounded-size obstruction, above it a positive fraction of Y.
  int small_below = 0;
  int large_above = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto below = sample(60, 2, 2.0, seed);
    small_below += collapse(below).core.size() <= 20;
    const auto above = sample(60, 2, 3.0, seed);
    large_above += collapse(above).core.size() * 5 >= above.size();
  }
  CHECK(small_below >= 9);
  CHECK(large_above >= 9);
}

TEST_CASE("random_hypertree") {
  CHECK(random_hypertree(10, 2, 1).size() == 36);
  for (int n = 5; n <= 11; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto y = random_hypertree(n, 2, seed);
      CHECK(y.size() == binomial(n - 1, 2));
      CHECK(oracle::rational_rank(boundary_matrix(y)) == static_cast<std::int64_t>(binomial(n - 1, 2)));
    }
  }
  CHECK(random_hypertree(9, 3, 4).size() == binomial(8, 3));
  CHECK(random_hypertree(9, 2, 4) == random_hypertree(9, 2, 4));
  CHECK_THROWS_AS(random_hypertree(3, 2, 0), std::invalid_argument);
}

TEST_CASE("text round trip") {
  const auto y = sample(20, 3, 2.0, 8);
  std::stringstream ss;
  write_complex(ss, y);
  CHECK(read_complex(ss) == y);

  std::istringstream empty_body("7 2\n");
  CHECK(read_complex(empty_body) == Complex(7, 2));
  std::istringstream bad_header("seven 2\n");
  CHECK_THROWS_AS(read_complex(bad_header), std::invalid_argument);
  std::istringstream truncated("7 2\n0 1\n");
  CHECK_THROWS_AS(read_complex(truncated), std::invalid_argument);
  std::istringstream unsorted("7 2\n2 1 0\n");
  CHECK_THROWS_AS(read_complex(unsorted), std::invalid_argument);
}
