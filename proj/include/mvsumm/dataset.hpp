#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <set>
#include <utility>
#include <vector>

namespace mvsumm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// One shot of one view. View ids and shot indices are 1-based; frame ranges
/// are 1-based and inclusive.
struct ShotRecord {
  int view = 1;
  int shot = 1;
  std::int64_t frame_start = 1;
  std::int64_t frame_end = 1;

  std::int64_t duration() const { return frame_end - frame_start + 1; }
};

/// Maps between (view, shot) pairs and flat indices in [0, N). Views are laid
/// out contiguously in view order.
class BlockIndex {
 public:
  BlockIndex() = default;
  explicit BlockIndex(std::vector<int> view_sizes);

  int num_views() const { return static_cast<int>(sizes_.size()); }
  int total() const { return offsets_.empty() ? 0 : offsets_.back(); }
  int view_size(int view) const;    // view is 1-based
  int view_offset(int view) const;  // flat index of the view's first shot
  const std::vector<int>& sizes() const { return sizes_; }

  int flat(int view, int shot) const;               // both 1-based
  std::pair<int, int> locate(int flat_index) const;  // -> (view, shot)

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;  // size K+1, offsets_[0] = 0
};

struct MultiViewDataset {
  std::vector<Matrix> views;      // D x N_k, one column per shot
  std::vector<ShotRecord> shots;  // flat-indexed, aligned with columns
  BlockIndex index;

  int num_views() const { return static_cast<int>(views.size()); }
  int num_shots() const { return index.total(); }
  int dim() const { return views.empty() ? 0 : static_cast<int>(views.front().rows()); }

  /// All views side by side (D x N), columns in flat order.
  Matrix stacked() const;
  /// Shot durations in flat order.
  Vector durations() const;
};

struct Event {
  int id = 0;
  std::int64_t frame_start = 1;
  std::int64_t frame_end = 1;
  std::set<int> views;  // empty means every view
  bool applies_to(int view) const { return views.empty() || views.count(view) > 0; }
  std::int64_t length() const { return frame_end - frame_start + 1; }
};

struct GroundTruth {
  std::vector<Event> events;
};

/// Checks the dataset invariants and optionally L2-normalizes every column.
/// Throws DataError on dimension or count mismatches, non-finite values and
/// zero-norm descriptors (when normalizing).
void validate_dataset(MultiViewDataset& data, bool normalize);

/// Builds a dataset from per-view matrices and flat shot metadata, then runs
/// validate_dataset. Shots must be grouped by view in view order.
MultiViewDataset make_dataset(std::vector<Matrix> views, std::vector<ShotRecord> shots,
                              bool normalize = true);

/// Reads every `*.csv` feature file carrying a `# view=` header plus
/// `shots.json` from `dir`.
MultiViewDataset load_dataset(const std::filesystem::path& dir, bool normalize = true);

void validate_ground_truth(const GroundTruth& gt);

struct FrameRange {
  std::int64_t start = 1;
  std::int64_t end = 1;
  std::int64_t length() const { return end - start + 1; }
  bool operator==(const FrameRange&) const = default;
};

struct SegmentationConfig {
  double change_fraction = 0.75;
  std::int64_t min_len = 32;
  std::int64_t max_len = 96;
};

/// Splits a per-frame descriptor stream (one row per frame) into shots.
///
/// A boundary opens a new shot at frame t when the distance between frames t-1
/// and t exceeds `change_fraction` times the largest inter-frame distance seen
/// so far inside the current shot. Shots shorter than `min_len` are then
/// merged into their predecessor (the first shot into its successor), and
/// shots longer than `max_len` are cut into ceil(len / max_len) near-equal
/// pieces. Throws InvalidArgument if the stream is shorter than `min_len` or a
/// segment admits no split inside [min_len, max_len].
std::vector<FrameRange> segment_shots(const Matrix& frame_descriptors,
                                      const SegmentationConfig& cfg = {});

/// Mean-pools the frames of each shot and L2-normalizes the result. Returns a
/// D x S matrix. `frame_features` has one row per frame.
Matrix pool_shot_features(const Matrix& frame_features, const std::vector<FrameRange>& shots);

struct SyntheticConfig {
  int num_views = 2;
  int prototypes = 3;
  int copies = 2;  // per prototype per view
  int dim = 16;
  double noise_sigma = 0.0;  // expected noise norm relative to unit prototypes
  std::uint64_t seed = 0;
  std::int64_t shot_length = 48;
};

struct SyntheticData {
  MultiViewDataset dataset;
  GroundTruth ground_truth;
  std::vector<int> labels;  // planted prototype (0-based) of each flat shot
  Matrix prototypes;        // D x m, orthonormal columns
};

/// Orthonormal prototypes with noisy copies in every view. Each view lists the
/// copies prototype by prototype on a shared timeline, so event p covers the
/// frames of prototype p's block in all views.
SyntheticData generate_synthetic(const SyntheticConfig& cfg);

}  // namespace mvsumm
