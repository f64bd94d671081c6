#include "mvsumm/joint_optimizer.hpp"

#include "mvsumm/error.hpp"
#include "mvsumm/sparse_solvers.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <random>

namespace mvsumm {

void JointConfig::validate(int num_shots) const {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be > 0");
  if (!(rho > 1.0)) throw InvalidArgument("rho must be > 1");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be > 0");
  if (dim < 1 || dim >= num_shots) throw InvalidArgument("embedding dimension must be in [1, N)");
  if (restarts < 0) throw InvalidArgument("restarts must be >= 0");
  if (weighted) {
    if (!shot_weights) throw InvalidArgument("weighted mode needs shot weights");
    if (shot_weights->size() != num_shots) throw InvalidArgument("one shot weight per shot required");
    if (!shot_weights->allFinite() || (shot_weights->array() <= 0.0).any()) {
      throw InvalidArgument("shot weights must be positive");
    }
  }
}

double compute_lambda0(const Matrix& y) {
  const Matrix gram = y.transpose() * y;
  return 2.0 * gram.rowwise().norm().maxCoeff();
}

ObjectiveValue compute_objective(const Matrix& y, const Matrix& z, const Matrix& l, double alpha,
                                 double lambda, double epsilon,
                                 const std::optional<Vector>& row_weights) {
  if (y.cols() != l.rows() || z.rows() != y.cols() || z.cols() != y.cols()) {
    throw InvalidArgument("inconsistent shapes in objective");
  }
  const double embed = (y * l * y.transpose()).trace();
  const double recon = (y - y * z).squaredNorm();
  Eigen::ArrayXd row_sq = z.rowwise().squaredNorm().array();
  if (row_weights) row_sq *= row_weights->array().square();
  ObjectiveValue v;
  v.true_objective = embed + alpha * (recon + lambda * row_sq.sqrt().sum());
  v.augmented = embed + alpha * (recon + lambda * (row_sq + epsilon).sqrt().sum());
  return v;
}

namespace {

std::optional<Vector> row_weights_of(const JointConfig& cfg) {
  if (cfg.weighted) return cfg.shot_weights;
  return std::nullopt;
}

// Re-orthonormalizes the rows of a d x N matrix.
Matrix orthonormal_rows(const Matrix& y) {
  Eigen::HouseholderQR<Matrix> qr(y.transpose());
  return (qr.householderQ() * Matrix::Identity(y.cols(), y.rows())).transpose();
}

struct RunOutput {
  JointState state;
  OptimizerTrace trace;
  double best = std::numeric_limits<double>::infinity();
};

RunOutput run_from(const Matrix& l, const Matrix& y0, double lambda, const JointConfig& cfg) {
  const auto q = row_weights_of(cfg);
  const Eigen::Index n = l.rows();
  JointState state{y0, Matrix::Zero(n, n), Vector::Ones(n)};
  RunOutput out;
  out.state = state;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= cfg.max_iters; ++it) {
    JointState next = joint_iteration(l, state, lambda, cfg);
    const ObjectiveValue obj = compute_objective(next.y, next.z, l, cfg.alpha, lambda, cfg.epsilon, q);
    TraceRecord rec;
    rec.iteration = it;
    rec.augmented = obj.augmented;
    rec.true_objective = obj.true_objective;
    rec.delta_z = (next.z - state.z).norm();
    rec.delta_y = (next.y - state.y).norm();
    out.trace.records.push_back(rec);
    out.trace.iterations_run = it;
    if (obj.augmented <= out.best) {
      out.best = obj.augmented;
      out.state = next;
    }
    state = std::move(next);
    if (it > 1) {
      const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
      if (std::abs(previous - obj.augmented) / scale < cfg.rel_tol) {
        out.trace.converged = true;
        break;
      }
    }
    previous = obj.augmented;
  }
  return out;
}

}  // namespace

JointState joint_iteration(const Matrix& l, const JointState& state, double lambda,
                           const JointConfig& cfg) {
  JointState next;
  next.z = z_step(state.y, state.p, lambda);
  next.y = y_step(l, next.z, cfg.alpha, static_cast<int>(state.y.rows())).y;
  next.p = update_P(next.z, cfg.epsilon, row_weights_of(cfg));
  return next;
}

JointResult optimize(const Matrix& l, const JointConfig& cfg) {
  if (l.rows() != l.cols()) throw InvalidArgument("L must be square");
  cfg.validate(static_cast<int>(l.rows()));
  const Embedding initial = initial_embedding(l, cfg.dim, cfg.zero_tol);

  JointResult result;
  result.lambda0 = compute_lambda0(initial.y);
  if (!(result.lambda0 > 0.0)) throw NumericalError("lambda0 is zero; embedding is degenerate");
  result.lambda = result.lambda0 / cfg.rho;

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RunOutput best;
  for (int start = 0; start <= cfg.restarts; ++start) {
    Matrix y0 = initial.y;
    if (start > 0) {
      Matrix noise(y0.rows(), y0.cols());
      for (Eigen::Index j = 0; j < noise.cols(); ++j)
        for (Eigen::Index i = 0; i < noise.rows(); ++i) noise(i, j) = normal(rng);
      y0 = orthonormal_rows(y0 + cfg.restart_scale * noise);
    }
    RunOutput run = run_from(l, y0, result.lambda, cfg);
    if (start == 0 || run.best < best.best) {
      best = std::move(run);
      result.start_index = start;
    }
  }

  result.z = best.state.z;
  result.p = best.state.p;
  result.embedding = y_step(l, result.z, cfg.alpha, cfg.dim);
  result.embedding.y = best.state.y;
  result.trace = std::move(best.trace);
  return result;
}

}  // namespace mvsumm
