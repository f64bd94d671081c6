#include "helpers.hpp"

#include "mvsumm/dataset.hpp"
#include "mvsumm/error.hpp"
#include "mvsumm/io.hpp"

#include <doctest.h>

#include <random>

using namespace mvsumm;

namespace {

Matrix random_view(Eigen::Index d, Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(d, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = normal(rng);
  return m;
}

void check_tiling(const std::vector<FrameRange>& shots, std::int64_t total,
                  const SegmentationConfig& cfg) {
  REQUIRE_FALSE(shots.empty());
  CHECK(shots.front().start == 1);
  CHECK(shots.back().end == total);
  for (std::size_t i = 0; i < shots.size(); ++i) {
    CHECK(shots[i].length() >= cfg.min_len);
    CHECK(shots[i].length() <= cfg.max_len);
    if (i > 0) CHECK(shots[i].start == shots[i - 1].end + 1);
  }
}

}  // namespace

TEST_SUITE("dataset") {
  TEST_CASE("block index maps flat indices both ways") {
    BlockIndex idx({3, 1, 4});
    CHECK(idx.total() == 8);
    CHECK(idx.view_offset(3) == 4);
    for (int f = 0; f < idx.total(); ++f) {
      auto [view, shot] = idx.locate(f);
      CHECK(idx.flat(view, shot) == f);
    }
    CHECK(idx.locate(3) == std::pair{2, 1});
    CHECK_THROWS_AS(idx.flat(2, 2), InvalidArgument);
  }

  TEST_CASE("two views of 3 and 4 shots") {
    auto data = make_dataset({random_view(16, 3, 1), random_view(16, 4, 2)},
                             testing::consecutive_shots({3, 4}));
    CHECK(data.num_shots() == 7);
    CHECK(data.num_views() == 2);
    CHECK(data.dim() == 16);
    for (const auto& v : data.views)
      for (Eigen::Index j = 0; j < v.cols(); ++j) CHECK(v.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(data.stacked().cols() == 7);
    CHECK(data.durations()(4) == 10.0);
  }

  TEST_CASE("validation errors") {
    CHECK_THROWS_WITH_AS(make_dataset({random_view(16, 3, 1), random_view(32, 4, 2)},
                                      testing::consecutive_shots({3, 4})),
                         doctest::Contains("feature dimension mismatch"), DataError);
    Matrix z = random_view(4, 3, 3);
    z.col(1).setZero();
    CHECK_THROWS_WITH_AS(make_dataset({z}, testing::consecutive_shots({3})),
                         doctest::Contains("zero-norm descriptor"), DataError);
    CHECK_NOTHROW(make_dataset({z}, testing::consecutive_shots({3}), false));
    CHECK_THROWS_AS(make_dataset({random_view(4, 3, 4)}, testing::consecutive_shots({2})),
                    DataError);
    Matrix bad = random_view(4, 2, 5);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(make_dataset({bad}, testing::consecutive_shots({2})), DataError);
    auto overlapping = testing::consecutive_shots({2});
    overlapping[1].frame_start = overlapping[0].frame_end;
    CHECK_THROWS_AS(make_dataset({random_view(4, 2, 6)}, overlapping), DataError);
  }

  TEST_CASE("load_dataset round-trips written files") {
    testing::TempDir dir("load");
    auto data = make_dataset({random_view(16, 3, 7), random_view(16, 4, 8)},
                             testing::consecutive_shots({3, 4}));
    io::write_dataset(dir.path(), data);
    auto back = load_dataset(dir.path());
    REQUIRE(back.num_shots() == 7);
    CHECK(back.views[0].isApprox(data.views[0], 1e-15));
    CHECK(back.views[1].isApprox(data.views[1], 1e-15));
    CHECK(back.shots[5].frame_start == data.shots[5].frame_start);
  }

  TEST_CASE("load_dataset rejects mixed dimensions") {
    testing::TempDir dir("mixed");
    io::write_view_csv(dir.path() / "a.csv", 1, random_view(16, 3, 1));
    io::write_view_csv(dir.path() / "b.csv", 2, random_view(32, 4, 2));
    io::write_shots_json(dir.path() / "shots.json", testing::consecutive_shots({3, 4}));
    CHECK_THROWS_WITH_AS(load_dataset(dir.path()), doctest::Contains("feature dimension mismatch"),
                         DataError);
  }

  TEST_CASE("segment: identical frames form one shot") {
    Matrix frames = Matrix::Ones(64, 5);
    auto shots = segment_shots(frames, {});
    REQUIRE(shots.size() == 1);
    CHECK(shots[0] == FrameRange{1, 64});
  }

  TEST_CASE("segment: a single cut between two constant halves") {
    Matrix frames(80, 3);
    frames.topRows(40).rowwise() = Eigen::RowVector3d(1, 0, 0);
    frames.bottomRows(40).rowwise() = Eigen::RowVector3d(0, 5, 0);
    auto shots = segment_shots(frames, {});
    REQUIRE(shots.size() == 2);
    CHECK(shots[0] == FrameRange{1, 40});
    CHECK(shots[1] == FrameRange{41, 80});
  }

  TEST_CASE("segment: long static stream is split within bounds") {
    SegmentationConfig cfg;
    auto shots = segment_shots(Matrix::Zero(200, 2), cfg);
    check_tiling(shots, 200, cfg);
    CHECK(shots.size() == 3);
  }

  TEST_CASE("segment: tiling holds on random streams") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> len(32, 700);
    std::uniform_int_distribution<int> jump(0, 40);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const int total = len(rng);
      Matrix frames(total, 4);
      Eigen::RowVector4d level = Eigen::RowVector4d::Zero();
      for (int t = 0; t < total; ++t) {
        if (jump(rng) == 0) level = Eigen::RowVector4d::Random() * 10.0;
        for (int c = 0; c < 4; ++c) frames(t, c) = level(c) + 0.01 * normal(rng);
      }
      SegmentationConfig cfg;
      check_tiling(segment_shots(frames, cfg), total, cfg);
    }
  }

  TEST_CASE("segment: preconditions") {
    CHECK_THROWS_WITH_AS(segment_shots(Matrix::Zero(20, 2), {}),
                         doctest::Contains("sequence shorter than min_len"), InvalidArgument);
    CHECK_THROWS_AS(segment_shots(Matrix::Zero(40, 2), {0.75, 50, 40}), InvalidArgument);
  }

  TEST_CASE("mean pooling") {
    Matrix frames(2, 2);
    frames << 1, 0, 0, 1;
    Matrix f = pool_shot_features(frames, {{1, 2}});
    CHECK(f(0, 0) == doctest::Approx(0.70710678118654752));
    CHECK(f(1, 0) == doctest::Approx(0.70710678118654752));

    Matrix three(3, 2);
    three << 2, 0, 0, 2, 1, 1;
    Matrix g = pool_shot_features(three, {{1, 1}, {2, 3}});
    CHECK(g(0, 0) == doctest::Approx(1.0));
    CHECK(g(1, 0) == doctest::Approx(0.0));
    Matrix h = pool_shot_features(three, {{1, 3}});
    CHECK(h(0, 0) == doctest::Approx(0.70710678118654752));
    CHECK_THROWS_AS(pool_shot_features(three, {{1, 2}}), InvalidArgument);
    CHECK_THROWS_WITH_AS(pool_shot_features(three, {{1, 0}, {1, 3}}),
                         doctest::Contains("empty shot range"), InvalidArgument);
  }

  TEST_CASE("synthetic: shapes and noiseless duplicates") {
    auto s = generate_synthetic({2, 3, 2, 16, 0.0, 5, 48});
    CHECK(s.dataset.num_shots() == 12);
    CHECK(s.ground_truth.events.size() == 3);
    const Matrix x = s.dataset.stacked();
    int distinct = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      bool seen = false;
      for (Eigen::Index i = 0; i < j; ++i) seen = seen || (x.col(i) - x.col(j)).norm() < 1e-12;
      distinct += seen ? 0 : 1;
    }
    CHECK(distinct == 3);
    CHECK((s.prototypes.transpose() * s.prototypes - Matrix::Identity(3, 3)).norm() < 1e-12);
  }

  TEST_CASE("synthetic: deterministic per seed") {
    auto a = generate_synthetic({2, 4, 3, 16, 0.05, 9, 48});
    auto b = generate_synthetic({2, 4, 3, 16, 0.05, 9, 48});
    auto c = generate_synthetic({2, 4, 3, 16, 0.05, 10, 48});
    CHECK(a.dataset.stacked() == b.dataset.stacked());
    CHECK(a.dataset.stacked() != c.dataset.stacked());
    CHECK(a.dataset.stacked().cols() == c.dataset.stacked().cols());
  }

  TEST_CASE("synthetic: nearest prototype recovers planted labels") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto s = generate_synthetic({2, 4, 5, 16, 0.01, seed, 48});
      const Matrix x = s.dataset.stacked();
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        Eigen::Index best = 0;
        (s.prototypes.transpose() * x.col(j)).maxCoeff(&best);
        CHECK(best == s.labels[static_cast<std::size_t>(j)]);
      }
    }
  }

  TEST_CASE("ground truth validation") {
    GroundTruth gt{{{1, 1, 10, {}}, {1, 20, 30, {}}}};
    CHECK_THROWS_AS(validate_ground_truth(gt), DataError);
    gt.events[1].id = 2;
    CHECK_NOTHROW(validate_ground_truth(gt));
    gt.events[0].frame_end = 0;
    CHECK_THROWS_AS(validate_ground_truth(gt), DataError);
  }
}

TEST_SUITE("io") {
  TEST_CASE("view csv header must match content") {
    testing::TempDir dir("csv");
    io::write_text(dir.path() / "v.csv", "# view=1 dim=2 shots=3\n1,2,3\n4,5,6\n");
    auto vf = io::read_view_csv(dir.path() / "v.csv");
    CHECK(vf.view == 1);
    CHECK(vf.features(1, 2) == 6.0);
    io::write_text(dir.path() / "w.csv", "# view=1 dim=3 shots=3\n1,2,3\n4,5,6\n");
    CHECK_THROWS_AS(io::read_view_csv(dir.path() / "w.csv"), DataError);
    io::write_text(dir.path() / "x.csv", "1,2\n3,4\n");
    CHECK_THROWS_AS(io::read_view_csv(dir.path() / "x.csv"), DataError);
    io::write_text(dir.path() / "y.csv", "# view=1 dim=2 shots=2\n1,2\n3,oops\n");
    CHECK_THROWS_AS(io::read_view_csv(dir.path() / "y.csv"), DataError);
  }

  TEST_CASE("doubles survive a text round trip") {
    testing::TempDir dir("rt");
    Matrix m(2, 2);
    m << 0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567;
    io::write_matrix_csv(dir.path() / "m.csv", m);
    CHECK(io::read_matrix_csv(dir.path() / "m.csv") == m);
  }

  TEST_CASE("ground truth json") {
    testing::TempDir dir("gt");
    GroundTruth gt{{{1, 1, 10, {1, 2}}, {2, 11, 20, {}}}};
    io::write_ground_truth(dir.path() / "gt.json", gt);
    auto back = io::read_ground_truth(dir.path() / "gt.json");
    REQUIRE(back.events.size() == 2);
    CHECK(back.events[0].views == std::set<int>{1, 2});
    CHECK(back.events[1].applies_to(7));
    io::write_text(dir.path() / "bad.json", R"([{"event_id": 1, "frame_start": 3}])");
    CHECK_THROWS_AS(io::read_ground_truth(dir.path() / "bad.json"), DataError);
  }
}
