#pragma once

#include "mvsumm/dataset.hpp"
#include "mvsumm/sparse_solvers.hpp"

#include <vector>

namespace mvsumm {

enum class LaplacianKind { kUnnormalized, kNormalized };

struct SimilarityConfig {
  SolverConfig solver;
  // Each column is coded with lambda = 2 max_i |a_i^T t| / rho_sim over the
  // atoms it may use.
  double rho_sim = 10.0;
  LaplacianKind laplacian = LaplacianKind::kUnnormalized;

  void validate() const;
};

struct SimilarityGraph {
  Matrix c_total;  // N x N, nonnegative, block layout by view
  Matrix w;        // symmetric, entries in [0, 1]
  Matrix l;        // graph Laplacian of w
  BlockIndex index;
};

/// |C|^T of the zero-diagonal self-expression of one view. A view with a
/// single shot yields a 1x1 zero matrix.
Matrix intra_view_similarity(const Matrix& view, const SimilarityConfig& cfg = {});

/// |C^(m,n)|^T: row i holds the similarity of shot i of view m to every shot
/// of view n.
Matrix inter_view_similarity(const Matrix& view_m, const Matrix& view_n,
                             const SimilarityConfig& cfg = {});

/// Places a K x K grid of blocks (blocks[m][n] is N_m x N_n) into one N x N
/// matrix. Throws InvalidArgument on inconsistent shapes.
Matrix assemble_total(const std::vector<std::vector<Matrix>>& blocks, BlockIndex* index = nullptr);

/// W0 = C + C^T, rows scaled by their infinity norm (zero rows stay zero),
/// then averaged with the transpose.
Matrix symmetrize_normalize(const Matrix& c_total);

Matrix laplacian(const Matrix& w, LaplacianKind kind = LaplacianKind::kUnnormalized);

/// Runs every intra and inter view solve and assembles the graph.
SimilarityGraph build_similarity_graph(const MultiViewDataset& data,
                                       const SimilarityConfig& cfg = {});

}  // namespace mvsumm
