#pragma once

// Finite rooted d-trees and the kernel mass of their operator at the root.
//
// Only even-depth vertices are stored. Each one has m odd-depth children, and every odd
// vertex has exactly d children, so an even vertex with m children owns m*d grandchildren,
// stored contiguously in BFS order. The operator acts on even-depth vertices:
//   L(v, v) = number of odd neighbours of v,   L(v, w) = +1 if v, w share an odd neighbour.
// All edge marks are +1; any other marking is flip-equivalent on a tree.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rsc/errors.hpp"

namespace rsc {

class DTree {
 public:
  /// `child_counts[i]` is the number of odd children of the i-th even vertex in BFS order.
  /// Vertices at `truncation_depth` must have no children.
  DTree(int d, std::vector<int> child_counts, int truncation_depth);

  static DTree single_vertex(int d) { return DTree(d, {0}, 0); }
  /// Root with m children, each carrying d leaf grandchildren.
  static DTree depth_two(int d, int m);

  int d() const { return d_; }
  int truncation_depth() const { return truncation_depth_; }
  std::size_t even_count() const { return child_counts_.size(); }
  std::size_t odd_count() const { return odd_count_; }
  int child_count(std::size_t v) const { return child_counts_[v]; }
  int depth(std::size_t v) const { return depths_[v]; }
  /// Grandchild r (0-based) under odd child j of v is first_grandchild(v) + j*d + r.
  std::size_t first_grandchild(std::size_t v) const { return first_grandchild_[v]; }
  /// Number of even vertices at each even depth 0, 2, 4, ...
  std::vector<std::size_t> level_sizes() const;

 private:
  int d_;
  int truncation_depth_;
  std::vector<int> child_counts_;
  std::vector<int> depths_;
  std::vector<std::size_t> first_grandchild_;
  std::size_t odd_count_ = 0;
};

struct KernelMass {
  double x = 0.0;
};

/// Poisson(c) draw: inversion for c <= 30, the library sampler above.
int poisson_draw(double c, std::mt19937_64& rng);

/// Poisson d-tree with parameter c, cut at `truncation_depth` (even).
DTree sample_tree(int d, double c, int truncation_depth, std::uint64_t seed);

/// Even-by-odd incidence matrix; the operator is B * B^T.
template <typename Scalar = double>
Eigen::SparseMatrix<Scalar> incidence_matrix(const DTree& t) {
  Eigen::SparseMatrix<Scalar> b(static_cast<Eigen::Index>(t.even_count()), static_cast<Eigen::Index>(t.odd_count()));
  std::vector<Eigen::Triplet<Scalar>> entries;
  Eigen::Index odd = 0;
  for (std::size_t v = 0; v < t.even_count(); ++v) {
    for (int j = 0; j < t.child_count(v); ++j, ++odd) {
      entries.emplace_back(static_cast<Eigen::Index>(v), odd, Scalar(1));
      const auto first = t.first_grandchild(v) + static_cast<std::size_t>(j * t.d());
      for (int r = 0; r < t.d(); ++r) {
        entries.emplace_back(static_cast<Eigen::Index>(first + static_cast<std::size_t>(r)), odd, Scalar(1));
      }
    }
  }
  b.setFromTriplets(entries.begin(), entries.end());
  return b;
}

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> tree_operator(const DTree& t) {
  const auto b = incidence_matrix<Scalar>(t);
  return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(b * b.transpose());
}

/// Kernel-mass recursion, bottom-up. Leaves carry x = 1 (their operator is null).
KernelMass x_recursive(const DTree& t);

inline constexpr std::size_t kOracleMaxVertices = 4000;

/// Squared norm of the projection of the root indicator e onto ker L. Since L = B B^T,
/// ker L = ker B^T, and with B^T B = V diag(lambda) V^T the mass is
/// 1 - sum over lambda_i > 0 of (v_i . B^T e)^2 / lambda_i. B^T B is odd-by-odd, about d
/// times smaller than L. Eigenvalues below 1e-8 of the spectral radius count as zero.
template <typename Scalar = double>
KernelMass x_oracle(const DTree& t) {
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (t.even_count() > kOracleMaxVertices) {
    throw ScaleExceeded("x_oracle: " + std::to_string(t.even_count()) + " even vertices exceeds " +
                        std::to_string(kOracleMaxVertices));
  }
  if (t.odd_count() == 0) return {1.0};
  const auto b = incidence_matrix<Scalar>(t);
  const Dense gram = Dense(b.transpose() * b);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> root_row = Dense(b.row(0)).transpose();
  Eigen::SelfAdjointEigenSolver<Dense> solver(gram);
  const auto& values = solver.eigenvalues();
  const Scalar threshold = Scalar(1e-8) * values.cwiseAbs().maxCoeff();
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coords = solver.eigenvectors().transpose() * root_row;
  Scalar range_mass = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > threshold) range_mass += coords[i] * coords[i] / values[i];
  }
  return {static_cast<double>(Scalar(1) - range_mass)};
}

enum class PoolInit { AllOnes, AllZeros };

struct PopulationEstimate {
  double mean_x = 0.0;
  double p_positive = 0.0;
};

/// Population dynamics for the distributional fixed point of the kernel-mass recursion on a
/// Poisson d-tree. One sweep regenerates the whole pool from the previous one, so k sweeps
/// from the all-ones pool reproduce the depth-2k truncated recursion.
PopulationEstimate population_dynamics(int d, double c, std::size_t pool, int sweeps, std::uint64_t seed,
                                       PoolInit init = PoolInit::AllOnes);

/// t + c t (1-t)^d - c/(d+1) (1 - (1-t)^(d+1)) at a fixed point t of t = exp(-c(1-t)^d).
double expected_kernel_closed_form(int d, double c, double t);

}  // namespace rsc
