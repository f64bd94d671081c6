#pragma once

#include "mvsumm/dataset.hpp"

#include <span>
#include <vector>

namespace mvsumm {

/// Row l2 norms of Z, flat-indexed.
Vector weight_curve(const Matrix& z);

/// Per-view temporal local maxima of the curve. Index i qualifies when its
/// weight is positive, strictly above its predecessor and not below its
/// successor (missing neighbours are ignored), so a plateau yields its first
/// index only. Returned in flat order.
std::vector<int> local_maxima(const Vector& curve, const BlockIndex& index);

struct SummaryEntry {
  int flat_index = 0;
  int view = 1;
  int shot = 1;
  std::int64_t frame_start = 1;
  std::int64_t frame_end = 1;
  double weight = 0.0;
};

struct Summary {
  std::vector<SummaryEntry> entries;  // best first
  int requested_length = 0;
};

/// Picks up to `length` candidates with positive weight.
///
/// Without coverage: top candidates by weight, ties to the earlier
/// frame_start, then the lower view id. With coverage: the frame timeline of
/// all shots is cut into `length` equal bins, the best candidate starting in
/// each nonempty bin is taken, and leftover slots are filled by rank.
Summary select_summary(const std::vector<int>& candidates, const Vector& curve,
                       std::span<const ShotRecord> shots, int length, bool coverage = false);

}  // namespace mvsumm
