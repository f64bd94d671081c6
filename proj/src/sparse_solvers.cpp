#include "mvsumm/sparse_solvers.hpp"

#include "mvsumm/error.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>

namespace mvsumm {

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("solver epsilon must be > 0");
  if (max_iters < 1) throw InvalidArgument("solver max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw InvalidArgument("solver rel_tol must be > 0");
}

double smoothed_l1_objective(const Matrix& dictionary, const Vector& target, const Vector& code,
                             double lambda, double epsilon) {
  const double fit = (target - dictionary * code).squaredNorm();
  const double penalty = (code.array().square() + epsilon).sqrt().sum();
  return fit + lambda * penalty;
}

namespace {

double relative_change(double previous, double current) {
  const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
  return std::abs(previous - current) / scale;
}

// IRLS on the normal equations. `gram` = A^T A, `rhs` = A^T t, `tt` = t^T t.
L1ColumnResult solve_on_gram(const Matrix& gram, const Vector& rhs, double tt, double lambda,
                             const SolverConfig& cfg) {
  const Eigen::Index n = gram.rows();
  L1ColumnResult res;
  res.code = Vector::Zero(n);
  auto objective = [&](const Vector& c) {
    const double fit = std::max(0.0, tt - 2.0 * rhs.dot(c) + c.dot(gram * c));
    return fit + lambda * (c.array().square() + cfg.epsilon).sqrt().sum();
  };
  if (n == 0 || rhs.cwiseAbs().maxCoeff() == 0.0) {
    res.objectives.push_back(objective(res.code));
    res.converged = true;
    return res;
  }

  Vector p = Vector::Ones(n);
  Eigen::LLT<Matrix> llt;
  for (int it = 0; it < cfg.max_iters; ++it) {
    Matrix system = gram;
    system.diagonal() += lambda * p;
    llt.compute(system);
    if (llt.info() != Eigen::Success) throw NumericalError("l1 subproblem is not positive definite");
    res.code = llt.solve(rhs);
    res.objectives.push_back(objective(res.code));
    const std::size_t k = res.objectives.size();
    if (k >= 2 && relative_change(res.objectives[k - 2], res.objectives[k - 1]) < cfg.rel_tol) {
      res.converged = true;
      break;
    }
    p = 0.5 / (res.code.array().square() + cfg.epsilon).sqrt();
  }
  return res;
}

void check_inputs(const Matrix& dictionary, const Matrix& targets, const Vector& lambdas) {
  if (dictionary.rows() != targets.rows()) {
    throw InvalidArgument("dictionary and targets must share the feature dimension");
  }
  if (lambdas.size() != targets.cols()) throw InvalidArgument("one lambda per target required");
  if (!lambdas.allFinite() || (lambdas.array() <= 0.0).any()) {
    throw InvalidArgument("lambda must be > 0");
  }
  if (!dictionary.allFinite() || !targets.allFinite()) throw DataError("non-finite solver input");
}

}  // namespace

L1ColumnResult solve_l1_column(const Matrix& dictionary, const Vector& target, double lambda,
                               std::optional<int> excluded_atom, const SolverConfig& cfg) {
  cfg.validate();
  check_inputs(dictionary, target, Vector::Constant(1, lambda));
  const Eigen::Index n = dictionary.cols();
  if (!excluded_atom) {
    return solve_on_gram(dictionary.transpose() * dictionary, dictionary.transpose() * target,
                         target.squaredNorm(), lambda, cfg);
  }
  const int skip = *excluded_atom;
  if (skip < 0 || skip >= n) throw InvalidArgument("excluded atom out of range");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != skip) keep.push_back(i);
  const Matrix sub = dictionary(Eigen::all, keep);
  L1ColumnResult inner = solve_on_gram(sub.transpose() * sub, sub.transpose() * target,
                                       target.squaredNorm(), lambda, cfg);
  L1ColumnResult res;
  res.code = Vector::Zero(n);
  for (std::size_t i = 0; i < keep.size(); ++i) res.code(keep[i]) = inner.code(static_cast<Eigen::Index>(i));
  // The pinned coefficient still contributes sqrt(eps) to the smoothed penalty.
  for (double f : inner.objectives) res.objectives.push_back(f + lambda * std::sqrt(cfg.epsilon));
  res.converged = inner.converged;
  return res;
}

Matrix solve_l1_selfexpress(const Matrix& dictionary, const Matrix& targets, double lambda,
                            bool zero_diagonal, const SolverConfig& cfg) {
  return solve_l1_selfexpress(dictionary, targets, Vector::Constant(targets.cols(), lambda),
                              zero_diagonal, cfg);
}

Matrix solve_l1_selfexpress(const Matrix& dictionary, const Matrix& targets, const Vector& lambdas,
                            bool zero_diagonal, const SolverConfig& cfg) {
  cfg.validate();
  check_inputs(dictionary, targets, lambdas);
  if (zero_diagonal && dictionary.cols() != targets.cols()) {
    throw InvalidArgument("zero_diagonal requires as many targets as atoms");
  }
  const Matrix gram = dictionary.transpose() * dictionary;
  const Matrix rhs = dictionary.transpose() * targets;
  const Eigen::Index n = dictionary.cols();
  Matrix codes = Matrix::Zero(n, targets.cols());
  for (Eigen::Index j = 0; j < targets.cols(); ++j) {
    const double tt = targets.col(j).squaredNorm();
    if (!zero_diagonal) {
      codes.col(j) = solve_on_gram(gram, rhs.col(j), tt, lambdas(j), cfg).code;
      continue;
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) keep.push_back(i);
    const Vector code = solve_on_gram(gram(keep, keep), rhs(keep, j), tt, lambdas(j), cfg).code;
    for (std::size_t i = 0; i < keep.size(); ++i) codes(keep[i], j) = code(static_cast<Eigen::Index>(i));
  }
  return codes;
}

double l21_norm(const Matrix& z) { return z.rowwise().norm().sum(); }

Vector update_P(const Matrix& z, double epsilon, const std::optional<Vector>& row_weights) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  const Vector sq = z.rowwise().squaredNorm();
  if (!row_weights) return 0.5 / (sq.array() + epsilon).sqrt();
  const Vector& q = *row_weights;
  if (q.size() != z.rows()) throw InvalidArgument("row weights must match the rows of Z");
  if ((q.array() <= 0.0).any()) throw InvalidArgument("row weights must be positive");
  const Eigen::ArrayXd q2 = q.array().square();
  return q2 / (2.0 * (q2 * sq.array() + epsilon).sqrt());
}

Matrix z_step(const Matrix& y, const Vector& p, double lambda) {
  if (p.size() != y.cols()) throw InvalidArgument("P must have one entry per shot");
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be > 0");
  const Matrix gram = y.transpose() * y;
  Matrix system = gram;
  system.diagonal() += lambda * p;
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) throw NumericalError("z-step system is not positive definite");
  Matrix z = llt.solve(gram);
  // One step of iterative refinement.
  z += llt.solve(gram - system * z);
  return z;
}

}  // namespace mvsumm
