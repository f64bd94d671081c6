#pragma once

#include "mvsumm/dataset.hpp"

#include <optional>
#include <vector>

namespace mvsumm {

struct SolverConfig {
  double epsilon = 1e-8;  // smoothing constant in sqrt(c^2 + eps)
  int max_iters = 100;
  double rel_tol = 1e-6;  // relative objective change that stops the loop

  void validate() const;
};

struct L1ColumnResult {
  Vector code;
  std::vector<double> objectives;  // smoothed objective after each iteration
  bool converged = false;
};

/// Smoothed lasso objective ||t - A c||^2 + lambda * sum_i sqrt(c_i^2 + eps).
double smoothed_l1_objective(const Matrix& dictionary, const Vector& target, const Vector& code,
                             double lambda, double epsilon);

/// Iteratively reweighted solve of one smoothed lasso column. Alternates the
/// half-quadratic weights p_i = 1 / (2 sqrt(c_i^2 + eps)) with the ridge system
/// (A^T A + lambda diag(p)) c = A^T t, starting from p = 1. When
/// `excluded_atom` is set, that atom is removed from the dictionary and its
/// coefficient is exactly zero.
L1ColumnResult solve_l1_column(const Matrix& dictionary, const Vector& target, double lambda,
                               std::optional<int> excluded_atom, const SolverConfig& cfg);

/// Column-by-column smoothed l1 self-expression of `targets` over
/// `dictionary`. With `zero_diagonal` (requires a square problem) column j
/// never uses atom j.
Matrix solve_l1_selfexpress(const Matrix& dictionary, const Matrix& targets, double lambda,
                            bool zero_diagonal, const SolverConfig& cfg = {});

/// Same, with one lambda per target column.
Matrix solve_l1_selfexpress(const Matrix& dictionary, const Matrix& targets, const Vector& lambdas,
                            bool zero_diagonal, const SolverConfig& cfg = {});

/// Sum of the Euclidean norms of the rows.
double l21_norm(const Matrix& z);

/// Diagonal of the half-quadratic weight matrix for the (optionally
/// row-weighted) l2,1 penalty:
///   unweighted  P_ii = 1 / (2 sqrt(||z^i||^2 + eps))
///   weighted    P_ii = q_i^2 / (2 sqrt(q_i^2 ||z^i||^2 + eps))
Vector update_P(const Matrix& z, double epsilon, const std::optional<Vector>& row_weights = {});

/// Solves (Y^T Y + lambda diag(P)) Z = Y^T Y by Cholesky. Throws
/// NumericalError when the system is not positive definite.
Matrix z_step(const Matrix& y, const Vector& p, double lambda);

}  // namespace mvsumm
