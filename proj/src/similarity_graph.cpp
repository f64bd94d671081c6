#include "mvsumm/similarity_graph.hpp"

#include "mvsumm/error.hpp"

namespace mvsumm {

void SimilarityConfig::validate() const {
  solver.validate();
  if (!(rho_sim > 0.0)) throw InvalidArgument("rho_sim must be > 0");
}

namespace {

// lambda_j = 2 max_i |a_i^T t_j| / rho over the atoms column j may use. A
// column orthogonal to every usable atom codes to zero for any lambda, so it
// gets lambda = 1.
Vector column_lambdas(const Matrix& dictionary, const Matrix& targets, bool zero_diagonal,
                      double rho) {
  Matrix corr = (dictionary.transpose() * targets).cwiseAbs();
  if (zero_diagonal) corr.diagonal().setZero();
  Vector lambdas(targets.cols());
  for (Eigen::Index j = 0; j < targets.cols(); ++j) {
    const double lambda0 = corr.rows() ? 2.0 * corr.col(j).maxCoeff() : 0.0;
    lambdas(j) = lambda0 > 0.0 ? lambda0 / rho : 1.0;
  }
  return lambdas;
}

}  // namespace

Matrix intra_view_similarity(const Matrix& view, const SimilarityConfig& cfg) {
  cfg.validate();
  if (view.cols() < 2) return Matrix::Zero(1, 1);
  const Vector lambdas = column_lambdas(view, view, true, cfg.rho_sim);
  const Matrix c = solve_l1_selfexpress(view, view, lambdas, true, cfg.solver);
  return c.cwiseAbs().transpose();
}

Matrix inter_view_similarity(const Matrix& view_m, const Matrix& view_n,
                             const SimilarityConfig& cfg) {
  cfg.validate();
  if (view_m.rows() != view_n.rows()) throw InvalidArgument("views must share the feature dimension");
  const Vector lambdas = column_lambdas(view_n, view_m, false, cfg.rho_sim);
  // C^(m,n) is N_n x N_m: column i codes shot i of view m over view n.
  const Matrix c = solve_l1_selfexpress(view_n, view_m, lambdas, false, cfg.solver);
  return c.cwiseAbs().transpose();
}

Matrix assemble_total(const std::vector<std::vector<Matrix>>& blocks, BlockIndex* index) {
  const std::size_t k = blocks.size();
  std::vector<int> sizes(k, 0);
  for (std::size_t m = 0; m < k; ++m) {
    if (blocks[m].size() != k) throw InvalidArgument("block grid must be K x K");
    sizes[m] = static_cast<int>(blocks[m][m].rows());
  }
  BlockIndex idx(sizes);
  Matrix total = Matrix::Zero(idx.total(), idx.total());
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t n = 0; n < k; ++n) {
      const Matrix& b = blocks[m][n];
      if (b.rows() != sizes[m] || b.cols() != sizes[n]) {
        throw InvalidArgument("block (" + std::to_string(m + 1) + "," + std::to_string(n + 1) +
                              ") has inconsistent shape");
      }
      total.block(idx.view_offset(static_cast<int>(m) + 1), idx.view_offset(static_cast<int>(n) + 1),
                  b.rows(), b.cols()) = b;
    }
  }
  if (index) *index = idx;
  return total;
}

Matrix symmetrize_normalize(const Matrix& c_total) {
  if (c_total.rows() != c_total.cols()) throw InvalidArgument("similarity matrix must be square");
  Matrix w = c_total + c_total.transpose();
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    const double m = w.row(i).cwiseAbs().maxCoeff();
    if (m > 0.0) w.row(i) /= m;
  }
  return 0.5 * (w + w.transpose());
}

Matrix laplacian(const Matrix& w, LaplacianKind kind) {
  if (w.rows() != w.cols()) throw InvalidArgument("W must be square");
  const Vector degree = w.rowwise().sum();
  if (kind == LaplacianKind::kUnnormalized) {
    Matrix l = -w;
    l.diagonal() += degree;
    return l;
  }
  // I - D^-1/2 W D^-1/2, with isolated vertices contributing empty rows.
  Vector inv_sqrt = Vector::Zero(degree.size());
  for (Eigen::Index i = 0; i < degree.size(); ++i)
    if (degree(i) > 0.0) inv_sqrt(i) = 1.0 / std::sqrt(degree(i));
  Matrix l = -(inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal());
  for (Eigen::Index i = 0; i < degree.size(); ++i)
    if (degree(i) > 0.0) l(i, i) += 1.0;
  return 0.5 * (l + l.transpose());
}

SimilarityGraph build_similarity_graph(const MultiViewDataset& data, const SimilarityConfig& cfg) {
  cfg.validate();
  const int k = data.num_views();
  std::vector<std::vector<Matrix>> blocks(k, std::vector<Matrix>(k));
  for (int m = 0; m < k; ++m) {
    for (int n = 0; n < k; ++n) {
      if (m == n) {
        blocks[m][n] = data.views[m].cols() < 2 ? Matrix::Zero(data.views[m].cols(), data.views[m].cols())
                                                : intra_view_similarity(data.views[m], cfg);
      } else {
        blocks[m][n] = inter_view_similarity(data.views[m], data.views[n], cfg);
      }
    }
  }
  SimilarityGraph g;
  g.c_total = assemble_total(blocks, &g.index);
  g.w = symmetrize_normalize(g.c_total);
  g.l = laplacian(g.w, cfg.laplacian);
  return g;
}

}  // namespace mvsumm
