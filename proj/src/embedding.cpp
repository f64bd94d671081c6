#include "mvsumm/embedding.hpp"

#include "mvsumm/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <vector>

namespace mvsumm {

namespace {

constexpr double kSignTol = 1e-12;

Eigen::SelfAdjointEigenSolver<Matrix> decompose(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix must be square");
  if (!m.allFinite()) throw NumericalError("non-finite matrix passed to eigensolver");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  return es;
}

Embedding take_rows(const Eigen::SelfAdjointEigenSolver<Matrix>& es,
                    const std::vector<Eigen::Index>& picks) {
  Embedding e;
  const Eigen::Index n = es.eigenvectors().rows();
  e.y.resize(static_cast<Eigen::Index>(picks.size()), n);
  e.eigenvalues.resize(static_cast<Eigen::Index>(picks.size()));
  for (std::size_t r = 0; r < picks.size(); ++r) {
    Vector v = es.eigenvectors().col(picks[r]);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) > kSignTol) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    e.y.row(static_cast<Eigen::Index>(r)) = v.transpose();
    e.eigenvalues(static_cast<Eigen::Index>(r)) = es.eigenvalues()(picks[r]);
  }
  return e;
}

}  // namespace

Embedding smallest_eigenvectors(const Matrix& symmetric, int dim) {
  if (dim < 1 || dim > symmetric.rows()) throw InvalidArgument("embedding dimension out of range");
  const auto es = decompose(symmetric);
  std::vector<Eigen::Index> picks;
  for (Eigen::Index i = 0; i < dim; ++i) picks.push_back(i);
  return take_rows(es, picks);
}

Embedding initial_embedding(const Matrix& l, int dim, double zero_tol) {
  if (dim < 1 || dim >= l.rows()) throw InvalidArgument("embedding dimension must be in [1, N)");
  if (!(zero_tol >= 0.0)) throw InvalidArgument("zero_tol must be >= 0");
  const auto es = decompose(0.5 * (l + l.transpose()));
  const Vector& values = es.eigenvalues();  // ascending
  const double cutoff = zero_tol * std::max(values(values.size() - 1), 0.0);
  std::vector<Eigen::Index> picks;
  for (Eigen::Index i = 0; i < values.size() && static_cast<int>(picks.size()) < dim; ++i)
    if (values(i) > cutoff) picks.push_back(i);
  if (static_cast<int>(picks.size()) < dim) {
    throw NumericalError("graph has only " + std::to_string(picks.size()) +
                         " nonzero Laplacian eigenvalues; cannot embed in dimension " +
                         std::to_string(dim));
  }
  return take_rows(es, picks);
}

int eigengap_dimension(const Matrix& l, int max_dim, double zero_tol) {
  if (l.rows() < 2) throw InvalidArgument("need at least two shots");
  if (max_dim < 1) throw InvalidArgument("max_dim must be >= 1");
  const Vector values = decompose(0.5 * (l + l.transpose())).eigenvalues();
  const double cutoff = zero_tol * std::max(values(values.size() - 1), 0.0);
  const auto nonzero = static_cast<int>((values.array() > cutoff).count());
  const int limit = std::min({max_dim, nonzero, static_cast<int>(l.rows()) - 1});
  if (limit < 1) throw NumericalError("graph Laplacian has no nonzero eigenvalues");
  int best = 1;
  double widest = -1.0;
  for (int d = 1; d <= limit; ++d) {
    const double gap = values(d) - values(d - 1);
    if (gap > widest) {
      widest = gap;
      best = d;
    }
  }
  return best;
}

Matrix y_step_matrix(const Matrix& l, const Matrix& z, double alpha) {
  if (l.rows() != l.cols() || z.rows() != l.rows() || z.cols() != l.cols()) {
    throw InvalidArgument("L and Z must be N x N");
  }
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be > 0");
  const Eigen::Index n = l.rows();
  Matrix m = l + alpha * (Matrix::Identity(n, n) - z - z.transpose() + z * z.transpose());
  return 0.5 * (m + m.transpose());
}

Embedding y_step(const Matrix& l, const Matrix& z, double alpha, int dim) {
  return smallest_eigenvectors(y_step_matrix(l, z, alpha), dim);
}

}  // namespace mvsumm
