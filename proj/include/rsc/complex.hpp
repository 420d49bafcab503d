#pragma once

// n-vertex d-complexes with a full (d-1)-skeleton, stored as their set of d-faces.
//
// Orientation convention: every face is oriented by increasing vertex labels, and rows /
// columns of boundary matrices follow lexicographic order of vertex tuples. The boundary
// of (v_0 < ... < v_d) carries (-1)^i on the facet that omits v_i.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "rsc/combinatorics.hpp"

namespace rsc {

/// Sparse matrix form of a boundary operator: rows are (d-1)-faces, columns d-faces, entries +-1.
using SignedIncidence = Eigen::SparseMatrix<std::int32_t, Eigen::ColMajor, std::int64_t>;

class Complex {
 public:
  Complex(int n, int d);
  /// Faces may come in any order; each must be a strictly increasing (d+1)-subset of [0, n).
  Complex(int n, int d, const std::vector<Simplex>& faces);
  static Complex from_ranks(int n, int d, std::vector<FaceIndex> ranks);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t size() const { return ranks_.size(); }
  bool empty() const { return ranks_.empty(); }

  /// Vertices of the i-th face in lexicographic order.
  std::span<const Vertex> face(std::size_t i) const {
    const auto k = static_cast<std::size_t>(d_ + 1);
    return {vertices_.data() + i * k, k};
  }
  /// Lexicographic ranks of the faces among all (d+1)-subsets, ascending.
  const std::vector<FaceIndex>& ranks() const { return ranks_; }

  bool contains(std::span<const Vertex> simplex) const;
  bool contains_rank(FaceIndex rank) const;
  std::vector<Simplex> faces() const;

  /// Copy with one more face; throws if the face is already present.
  Complex with_face(std::span<const Vertex> simplex) const;

  friend bool operator==(const Complex&, const Complex&) = default;

 private:
  void rebuild_vertices();

  int n_;
  int d_;
  std::vector<FaceIndex> ranks_;
  std::vector<Vertex> vertices_;
};

/// Y_d(n, c/n): every (d+1)-subset is a face independently with probability c/n.
Complex sample(int n, int d, double c, std::uint64_t seed);

/// Boundary of the (d+1)-simplex on vertices {0, ..., d+1}, as a complex on n >= d+2 vertices.
Complex simplex_boundary(int n, int d);

SignedIncidence boundary_matrix(const Complex& y);

/// Boundary operator from all k-faces to all (k-1)-faces of the full simplex on n vertices.
SignedIncidence full_boundary_matrix(int n, int k);

/// Boundary column of one d-face, as (row, sign) pairs with rows indexing (d-1)-faces.
void boundary_column(std::span<const Vertex> face, int n, std::vector<std::uint32_t>& rows,
                     std::vector<std::int32_t>& signs);

/// Which d-faces contain each (d-1)-face, in CSR form. Ridges are indexed by lex rank.
struct RidgeIncidence {
  std::vector<std::size_t> offset;   // size C(n,d)+1
  std::vector<std::size_t> faces;    // face indices into Y, grouped by ridge
  std::vector<FaceIndex> facets;     // facets[f*(d+1) + i]: ridge omitting vertex i of face f

  std::size_t degree(FaceIndex ridge) const { return offset[ridge + 1] - offset[ridge]; }
  std::span<const std::size_t> incident(FaceIndex ridge) const {
    return {faces.data() + offset[ridge], degree(ridge)};
  }
};

RidgeIncidence ridge_incidence(const Complex& y);

struct ElementaryCollapse {
  Simplex ridge;  // the exposed (d-1)-face
  Simplex face;   // its unique containing d-face
  friend bool operator==(const ElementaryCollapse&, const ElementaryCollapse&) = default;
};

struct CollapseResult {
  Complex core;
  std::vector<ElementaryCollapse> removed_pairs;
  std::size_t covered_remaining = 0;
  friend bool operator==(const CollapseResult&, const CollapseResult&) = default;
};

/// Peels exposed (d-1)-faces until none is left. The queue starts with the exposed faces
/// in lexicographic order (or shuffled by `queue_shuffle_seed`) and is processed FIFO.
CollapseResult collapse(const Complex& y, std::optional<std::uint64_t> queue_shuffle_seed = std::nullopt);

/// Random hypertree: scan a seeded uniform order of all d-faces, keep a face iff its boundary
/// column is independent of those kept so far. Ends with C(n-1, d) faces.
Complex random_hypertree(int n, int d, std::uint64_t seed);

/// Text format: header "n d", then one face per line as space-separated vertex indices.
void write_complex(std::ostream& out, const Complex& y);
Complex read_complex(std::istream& in);

}  // namespace rsc
