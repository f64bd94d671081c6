#include "../oracles.hpp"

#include "mvsumm/error.hpp"
#include "mvsumm/sparse_solvers.hpp"

#include <doctest.h>

#include <cmath>

#include <random>

using namespace mvsumm;

TEST_SUITE("sparse_solvers") {
  TEST_CASE("identity dictionary reproduces its own column") {
    const Matrix a = Matrix::Identity(2, 2);
    const Matrix t = a.col(0);
    const Matrix c = solve_l1_selfexpress(a, t, 1e-6, false);
    CHECK(c(0, 0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(c(1, 0)) < 1e-3);
  }

  TEST_CASE("lambda above the subgradient bound zeroes the code") {
    std::mt19937_64 rng(3);
    const Matrix a = oracle::gaussian(6, 8, rng);
    const Vector t = oracle::gaussian(6, 1, rng);
    const double bound = 2.0 * (a.transpose() * t).cwiseAbs().maxCoeff();
    const SolverConfig tight{1e-8, 5000, 1e-14};
    for (double factor : {1.01, 1.5, 4.0}) {
      const Matrix c = solve_l1_selfexpress(a, t, factor * bound, false, tight);
      CHECK(c.cwiseAbs().maxCoeff() <= 1e-3);
    }
    // Exactly at the bound the smoothed minimizer sits near (eps * lambda / (4 |a|^2))^(1/3).
    const Matrix edge = solve_l1_selfexpress(a, t, bound, false, tight);
    CHECK(edge.cwiseAbs().maxCoeff() <= std::cbrt(1e-8 * bound / (4.0 * a.colwise().squaredNorm().minCoeff())) * 1.5);
    CHECK(oracle::cd_lasso(a, t, bound).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("orthonormal pair matches the soft-threshold solution") {
    // Oracle: coordinate descent gives c_j = 1/sqrt(2) - lambda/2 for each atom.
    const Matrix a = Matrix::Identity(2, 2);
    Vector t(2);
    t << 0.70710678118654752, 0.70710678118654752;
    const Vector ref = oracle::cd_lasso(a, t, 0.1);
    CHECK(ref(0) == doctest::Approx(0.65710678118654752).epsilon(1e-14));
    const L1ColumnResult r = solve_l1_column(a, t, 0.1, std::nullopt, {});
    const L1ColumnResult tight = solve_l1_column(a, t, 0.1, std::nullopt, {1e-8, 5000, 1e-14});
    CHECK(tight.code(0) == doctest::Approx(0.65710678118654752).epsilon(1e-6));
    const double ours = smoothed_l1_objective(a, t, r.code, 0.1, 1e-8);
    const double theirs = oracle::lasso_objective(a, t, ref, 0.1, 1e-8);
    CHECK((ours - theirs) / theirs <= 1e-4);
  }

  TEST_CASE("objective never increases across reweighting steps") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix a = oracle::gaussian(10, 15, rng).colwise().normalized();
      const Vector t = oracle::gaussian(10, 1, rng);
      const double lambda = 0.2 * (a.transpose() * t).cwiseAbs().maxCoeff();
      const auto r = solve_l1_column(a, t, lambda, trial % 3 == 0 ? std::optional<int>(2) : std::nullopt, {});
      for (std::size_t i = 1; i < r.objectives.size(); ++i)
        CHECK(r.objectives[i] <= r.objectives[i - 1] + 1e-9);
      if (trial % 3 == 0) CHECK(r.code(2) == 0.0);
    }
  }

  TEST_CASE("zero diagonal is exact") {
    std::mt19937_64 rng(5);
    const Matrix a = oracle::gaussian(5, 7, rng).colwise().normalized();
    const Matrix c = solve_l1_selfexpress(a, a, 0.05, true);
    for (Eigen::Index j = 0; j < c.cols(); ++j) CHECK(c(j, j) == 0.0);
    CHECK_THROWS_AS(solve_l1_selfexpress(a, a.leftCols(3), 0.05, true), InvalidArgument);
  }

  TEST_CASE("per-column lambdas agree with single-column solves") {
    std::mt19937_64 rng(8);
    const Matrix a = oracle::gaussian(6, 9, rng);
    const Matrix t = oracle::gaussian(6, 3, rng);
    Vector lambdas(3);
    lambdas << 0.1, 0.5, 1.0;
    const Matrix c = solve_l1_selfexpress(a, t, lambdas, false);
    for (Eigen::Index j = 0; j < 3; ++j) {
      const auto single = solve_l1_column(a, t.col(j), lambdas(j), std::nullopt, {});
      CHECK((c.col(j) - single.code).norm() == 0.0);
    }
  }

  TEST_CASE("input validation") {
    const Matrix a = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(solve_l1_selfexpress(a, a, 0.0, false), InvalidArgument);
    CHECK_THROWS_AS(solve_l1_selfexpress(a, Matrix::Identity(4, 4), 0.1, false), InvalidArgument);
    Matrix bad = a;
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(solve_l1_selfexpress(bad, a, 0.1, false), DataError);
    SolverConfig cfg;
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  }

  TEST_CASE("l21 norm") {
    CHECK(l21_norm(Matrix::Identity(3, 3)) == 3.0);
    CHECK(l21_norm(Matrix::Zero(3, 3)) == 0.0);
    Matrix z(2, 2);
    z << 3, 4, 0, 0;
    CHECK(l21_norm(z) == 5.0);
  }

  TEST_CASE("update_P formulas") {
    Matrix z = Matrix::Zero(3, 2);
    z(1, 0) = 1.0;
    z(2, 0) = 0.6;
    z(2, 1) = 0.8;
    const Vector p = update_P(z, 1e-8);
    CHECK(p(0) == doctest::Approx(5000.0).epsilon(1e-12));
    CHECK(std::abs(p(1) - 0.5) <= 1e-8);
    CHECK((p.array() > 0.0).all());

    Vector q(3);
    q << 1.0, 2.0, 1.0;
    const Vector pw = update_P(z, 1e-8, q);
    CHECK(std::abs(pw(1) - 1.0) <= 1e-8);

    // 2 P_ii z^i is the gradient of sqrt(q_i^2 ||z^i||^2 + eps).
    const double eps = 1e-3;
    auto term = [&](double x) { return std::sqrt(q(1) * q(1) * x * x + eps); };
    const double h = 1e-6;
    const double grad = (term(1.0 + h) - term(1.0 - h)) / (2.0 * h);
    CHECK(2.0 * update_P(z, eps, q)(1) * 1.0 == doctest::Approx(grad).epsilon(1e-7));
    CHECK_THROWS_AS(update_P(z, 1e-8, Vector::Zero(3)), InvalidArgument);
  }

  TEST_CASE("z_step hand cases") {
    const Matrix z = z_step(Matrix::Identity(2, 2), Vector::Ones(2), 1.0);
    CHECK((z - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-15);

    const Matrix y = Matrix::Ones(1, 2);
    const Matrix z2 = z_step(y, Vector::Ones(2), 1.0);
    CHECK((z2 - Matrix::Constant(2, 2, 1.0 / 3.0)).norm() < 1e-14);

    std::mt19937_64 rng(2);
    const Matrix yf = oracle::gaussian(4, 4, rng);
    CHECK((z_step(yf, Vector::Ones(4), 1e-10) - Matrix::Identity(4, 4)).norm() < 1e-6);
    CHECK_THROWS_AS(z_step(y, Vector::Ones(2), 0.0), InvalidArgument);
    CHECK_THROWS_AS(z_step(y, -Vector::Ones(2), 1.0), NumericalError);
  }

  TEST_CASE("z_step residual on random instances") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(0.1, 5000.0);
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix y = oracle::random_orthonormal_rows(3, 12, rng);
      Vector p(12);
      for (Eigen::Index i = 0; i < 12; ++i) p(i) = unif(rng);
      const double lambda = 0.05;
      const Matrix z = z_step(y, p, lambda);
      const Matrix g = y.transpose() * y;
      const Matrix lhs = g + lambda * Matrix(p.asDiagonal());
      CHECK((lhs * z - g).norm() <= 1e-8 * g.norm());
    }
  }
}
