#pragma once

#include "mvsumm/dataset.hpp"
#include "mvsumm/embedding.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mvsumm {

struct JointConfig {
  double alpha = 0.05;
  double rho = 10.0;  // lambda = lambda0 / rho
  double epsilon = 1e-8;
  int max_iters = 25;
  double rel_tol = 1e-6;
  int dim = 2;
  double zero_tol = 1e-8;  // passed to initial_embedding
  bool weighted = false;
  std::optional<Vector> shot_weights;  // q, required when weighted
  int restarts = 0;                    // extra starts from perturbed Y0
  double restart_scale = 0.1;
  std::uint64_t seed = 0;

  void validate(int num_shots) const;
};

struct TraceRecord {
  int iteration = 0;
  double augmented = 0.0;
  double true_objective = 0.0;
  double delta_z = 0.0;
  double delta_y = 0.0;
};

struct OptimizerTrace {
  std::vector<TraceRecord> records;
  int iterations_run = 0;
  bool converged = false;
};

struct ObjectiveValue {
  double augmented = 0.0;       // smoothed l2,1
  double true_objective = 0.0;  // exact l2,1
};

/// Smallest lambda for which Z = 0 minimizes ||Y - YZ||_F^2 + lambda ||Z||_2,1:
/// 2 max_i ||(Y^T Y)^i||_2.
double compute_lambda0(const Matrix& y);

/// tr(Y L Y^T) + alpha (||Y - YZ||_F^2 + lambda R(Z)) with R the exact l2,1
/// norm (true) or its smoothed form sum_i sqrt(||z^i||^2 + eps) (augmented).
/// With row weights q the penalty acts on diag(q) Z.
ObjectiveValue compute_objective(const Matrix& y, const Matrix& z, const Matrix& l, double alpha,
                                 double lambda, double epsilon,
                                 const std::optional<Vector>& row_weights = {});

struct JointState {
  Matrix y;
  Matrix z;
  Vector p;
};

/// One Z-step, Y-step, P-step sweep.
JointState joint_iteration(const Matrix& l, const JointState& state, double lambda,
                           const JointConfig& cfg);

struct JointResult {
  Embedding embedding;
  Matrix z;
  Vector p;
  OptimizerTrace trace;
  double lambda0 = 0.0;
  double lambda = 0.0;
  int start_index = 0;  // which start produced the result (0 = unperturbed)
};

/// Alternating half-quadratic minimization of the joint embedding and
/// row-sparse selection objective. Y starts at the Laplacian eigenmap, P at
/// the identity, lambda is fixed from the initial embedding.
JointResult optimize(const Matrix& l, const JointConfig& cfg);

}  // namespace mvsumm
