#pragma once

#include "mvsumm/dataset.hpp"

namespace mvsumm {

struct Embedding {
  Matrix y;            // d x N, orthonormal rows
  Vector eigenvalues;  // the d selected eigenvalues, ascending
};

/// Laplacian eigenmap: eigenvectors of the d smallest eigenvalues of L that
/// exceed zero_tol * lambda_max. Throws NumericalError when fewer than d such
/// eigenvalues exist.
Embedding initial_embedding(const Matrix& l, int dim, double zero_tol = 1e-8);

/// Number of leading Laplacian eigenvalues before the widest gap among the
/// first max_dim + 1, capped by the count of nonzero eigenvalues so the result
/// is always a valid initial_embedding dimension. Ties go to the smaller d.
int eigengap_dimension(const Matrix& l, int max_dim, double zero_tol = 1e-8);

/// Symmetric matrix L + alpha (I - Z - Z^T + Z Z^T) minimized by the Y-step.
Matrix y_step_matrix(const Matrix& l, const Matrix& z, double alpha);

/// Eigenvectors of the d smallest eigenvalues of y_step_matrix(l, z, alpha).
Embedding y_step(const Matrix& l, const Matrix& z, double alpha, int dim);

/// Eigenvectors of the d smallest eigenvalues of a symmetric matrix, as rows,
/// with the first entry of each row above 1e-12 in magnitude made positive.
Embedding smallest_eigenvectors(const Matrix& symmetric, int dim);

}  // namespace mvsumm
