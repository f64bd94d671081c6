#include "mvsumm/dataset.hpp"

#include "mvsumm/error.hpp"
#include "mvsumm/io.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <map>
#include <cmath>
#include <random>
#include <string>

namespace mvsumm {

BlockIndex::BlockIndex(std::vector<int> view_sizes) : sizes_(std::move(view_sizes)) {
  offsets_.assign(sizes_.size() + 1, 0);
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    if (sizes_[k] < 0) throw InvalidArgument("negative view size");
    offsets_[k + 1] = offsets_[k] + sizes_[k];
  }
}

int BlockIndex::view_size(int view) const {
  if (view < 1 || view > num_views()) throw InvalidArgument("view id out of range");
  return sizes_[view - 1];
}

int BlockIndex::view_offset(int view) const {
  if (view < 1 || view > num_views()) throw InvalidArgument("view id out of range");
  return offsets_[view - 1];
}

int BlockIndex::flat(int view, int shot) const {
  if (shot < 1 || shot > view_size(view)) throw InvalidArgument("shot index out of range");
  return offsets_[view - 1] + shot - 1;
}

std::pair<int, int> BlockIndex::locate(int flat_index) const {
  if (flat_index < 0 || flat_index >= total()) throw InvalidArgument("flat index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat_index);
  const int view = static_cast<int>(it - offsets_.begin());
  return {view, flat_index - offsets_[view - 1] + 1};
}

Matrix MultiViewDataset::stacked() const {
  Matrix out(dim(), num_shots());
  int col = 0;
  for (const auto& v : views) {
    out.middleCols(col, v.cols()) = v;
    col += static_cast<int>(v.cols());
  }
  return out;
}

Vector MultiViewDataset::durations() const {
  Vector q(static_cast<Eigen::Index>(shots.size()));
  for (std::size_t i = 0; i < shots.size(); ++i) q(i) = static_cast<double>(shots[i].duration());
  return q;
}

void validate_dataset(MultiViewDataset& data, bool normalize) {
  if (data.views.empty()) throw DataError("dataset has no views");
  const auto dim = data.views.front().rows();
  if (dim < 1) throw DataError("feature dimension must be positive");
  std::vector<int> sizes;
  for (const auto& v : data.views) {
    if (v.rows() != dim) throw DataError("feature dimension mismatch");
    if (!v.allFinite()) throw DataError("non-finite feature value");
    sizes.push_back(static_cast<int>(v.cols()));
  }
  data.index = BlockIndex(sizes);
  if (static_cast<int>(data.shots.size()) != data.index.total()) {
    throw DataError("shot metadata count (" + std::to_string(data.shots.size()) +
                    ") does not match feature columns (" + std::to_string(data.index.total()) +
                    ")");
  }
  for (int f = 0; f < data.index.total(); ++f) {
    const auto [view, shot] = data.index.locate(f);
    const ShotRecord& s = data.shots[f];
    if (s.view != view || s.shot != shot) {
      throw DataError("shot metadata out of order at view " + std::to_string(view) + " shot " +
                      std::to_string(shot));
    }
    if (s.frame_start > s.frame_end) throw DataError("shot with frame_start > frame_end");
    if (shot > 1 && data.shots[f - 1].frame_end >= s.frame_start) {
      throw DataError("overlapping shots in view " + std::to_string(view));
    }
  }
  if (normalize) {
    for (auto& v : data.views) {
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const double n = v.col(j).norm();
        if (n == 0.0) throw DataError("zero-norm descriptor");
        v.col(j) /= n;
      }
    }
  }
}

MultiViewDataset make_dataset(std::vector<Matrix> views, std::vector<ShotRecord> shots,
                              bool normalize) {
  MultiViewDataset data;
  data.views = std::move(views);
  data.shots = std::move(shots);
  validate_dataset(data, normalize);
  return data;
}

MultiViewDataset load_dataset(const std::filesystem::path& dir, bool normalize) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::map<int, Matrix> by_view;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string text = io::read_text(path);
    if (text.rfind("# view=", 0) != 0) continue;
    io::ViewFile vf = io::read_view_csv(path);
    if (!by_view.emplace(vf.view, std::move(vf.features)).second) {
      throw DataError("duplicate feature file for view " + std::to_string(vf.view));
    }
  }
  if (by_view.empty()) throw DataError("no view feature files in " + dir.string());
  MultiViewDataset data;
  int expected = 1;
  for (auto& [view, m] : by_view) {
    if (view != expected) throw DataError("view ids must be 1..K without gaps");
    data.views.push_back(std::move(m));
    ++expected;
  }
  data.shots = io::read_shots_json(dir / "shots.json");
  std::stable_sort(data.shots.begin(), data.shots.end(), [](const auto& a, const auto& b) {
    return a.view != b.view ? a.view < b.view : a.shot < b.shot;
  });
  validate_dataset(data, normalize);
  return data;
}

void validate_ground_truth(const GroundTruth& gt) {
  std::set<int> ids;
  for (const auto& e : gt.events) {
    if (e.frame_start > e.frame_end) throw DataError("event with frame_start > frame_end");
    if (!ids.insert(e.id).second) throw DataError("duplicate event id " + std::to_string(e.id));
  }
}

namespace {

// Near-equal pieces of [start, end], the first (len % k) one frame longer.
void split_even(std::int64_t start, std::int64_t end, std::int64_t pieces,
                std::vector<FrameRange>& out) {
  const std::int64_t len = end - start + 1;
  const std::int64_t base = len / pieces;
  const std::int64_t extra = len % pieces;
  std::int64_t cursor = start;
  for (std::int64_t i = 0; i < pieces; ++i) {
    const std::int64_t n = base + (i < extra ? 1 : 0);
    out.push_back({cursor, cursor + n - 1});
    cursor += n;
  }
}

}  // namespace

std::vector<FrameRange> segment_shots(const Matrix& frames, const SegmentationConfig& cfg) {
  if (cfg.min_len < 1 || cfg.min_len > cfg.max_len) {
    throw InvalidArgument("segment_shots requires 1 <= min_len <= max_len");
  }
  if (!(cfg.change_fraction > 0.0)) throw InvalidArgument("change_fraction must be positive");
  const std::int64_t total = frames.rows();
  if (total == 0) throw InvalidArgument("empty frame sequence");
  if (total < cfg.min_len) throw InvalidArgument("sequence shorter than min_len");
  if (!frames.allFinite()) throw DataError("non-finite frame descriptor");

  // Change rule. Frame t (0-based) starts a new shot when the jump into it
  // exceeds the fraction of the running maximum inside the current shot.
  std::vector<std::int64_t> starts{0};
  double running_max = 0.0;
  for (std::int64_t t = 1; t < total; ++t) {
    const double change = (frames.row(t) - frames.row(t - 1)).norm();
    if (change > cfg.change_fraction * running_max) {
      starts.push_back(t);
      running_max = 0.0;
    } else {
      running_max = std::max(running_max, change);
    }
  }

  std::vector<FrameRange> raw;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::int64_t end = i + 1 < starts.size() ? starts[i + 1] - 1 : total - 1;
    raw.push_back({starts[i] + 1, end + 1});
  }

  // Merge short shots backwards; a short leading shot absorbs its successor.
  std::vector<FrameRange> merged;
  for (const auto& r : raw) {
    if (!merged.empty() && (r.length() < cfg.min_len || merged.back().length() < cfg.min_len)) {
      merged.back().end = r.end;
    } else {
      merged.push_back(r);
    }
  }

  std::vector<FrameRange> out;
  for (const auto& r : merged) {
    if (r.length() <= cfg.max_len) {
      out.push_back(r);
      continue;
    }
    const std::int64_t pieces = (r.length() + cfg.max_len - 1) / cfg.max_len;
    if (r.length() / pieces < cfg.min_len) {
      throw InvalidArgument("segment of " + std::to_string(r.length()) +
                            " frames cannot be split within [min_len, max_len]");
    }
    split_even(r.start, r.end, pieces, out);
  }
  return out;
}

Matrix pool_shot_features(const Matrix& frame_features, const std::vector<FrameRange>& shots) {
  const std::int64_t total = frame_features.rows();
  Matrix out(frame_features.cols(), static_cast<Eigen::Index>(shots.size()));
  std::int64_t expected = 1;
  for (std::size_t j = 0; j < shots.size(); ++j) {
    const FrameRange& r = shots[j];
    if (r.length() < 1) throw InvalidArgument("empty shot range");
    if (r.start != expected || r.end > total) {
      throw InvalidArgument("shot ranges must tile the frame sequence");
    }
    expected = r.end + 1;
    Vector mean = frame_features.middleRows(r.start - 1, r.length()).colwise().mean().transpose();
    const double n = mean.norm();
    if (n == 0.0) throw DataError("zero-norm descriptor");
    out.col(static_cast<Eigen::Index>(j)) = mean / n;
  }
  if (expected != total + 1) throw InvalidArgument("shot ranges must tile the frame sequence");
  return out;
}

SyntheticData generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.num_views < 1) throw InvalidArgument("num_views must be >= 1");
  if (cfg.prototypes < 1) throw InvalidArgument("prototypes must be >= 1");
  if (cfg.copies < 1) throw InvalidArgument("copies must be >= 1");
  if (cfg.dim < cfg.prototypes) throw InvalidArgument("dim must be >= prototypes");
  if (cfg.noise_sigma < 0.0) throw InvalidArgument("noise_sigma must be >= 0");
  if (cfg.shot_length < 1) throw InvalidArgument("shot_length must be >= 1");

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gaussian = [&](Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
    return m;
  };

  SyntheticData out;
  const Matrix seedm = gaussian(cfg.dim, cfg.prototypes);
  Eigen::HouseholderQR<Matrix> qr(seedm);
  out.prototypes = qr.householderQ() * Matrix::Identity(cfg.dim, cfg.prototypes);

  const int per_view = cfg.prototypes * cfg.copies;
  // Per-entry scale so the expected noise norm is sigma against unit prototypes.
  const double entry_sigma = cfg.noise_sigma / std::sqrt(static_cast<double>(cfg.dim));
  std::vector<Matrix> views;
  std::vector<ShotRecord> shots;
  for (int k = 1; k <= cfg.num_views; ++k) {
    Matrix v(cfg.dim, per_view);
    for (int p = 0; p < cfg.prototypes; ++p) {
      for (int c = 0; c < cfg.copies; ++c) {
        const int col = p * cfg.copies + c;
        v.col(col) = out.prototypes.col(p);
        if (cfg.noise_sigma > 0.0) v.col(col) += entry_sigma * gaussian(cfg.dim, 1);
        ShotRecord s;
        s.view = k;
        s.shot = col + 1;
        s.frame_start = static_cast<std::int64_t>(col) * cfg.shot_length + 1;
        s.frame_end = s.frame_start + cfg.shot_length - 1;
        shots.push_back(s);
        out.labels.push_back(p);
      }
    }
    views.push_back(std::move(v));
  }
  out.dataset = make_dataset(std::move(views), std::move(shots), true);

  const std::int64_t block = static_cast<std::int64_t>(cfg.copies) * cfg.shot_length;
  for (int p = 0; p < cfg.prototypes; ++p) {
    Event e;
    e.id = p + 1;
    e.frame_start = p * block + 1;
    e.frame_end = (p + 1) * block;
    for (int k = 1; k <= cfg.num_views; ++k) e.views.insert(k);
    out.ground_truth.events.push_back(e);
  }
  return out;
}

}  // namespace mvsumm
