#include "mvsumm/summarizer.hpp"

#include "mvsumm/error.hpp"

#include <algorithm>
#include <set>

namespace mvsumm {

Vector weight_curve(const Matrix& z) {
  if (!z.allFinite()) throw InvalidArgument("Z must be finite");
  return z.rowwise().norm();
}

std::vector<int> local_maxima(const Vector& curve, const BlockIndex& index) {
  if (curve.size() != index.total()) throw InvalidArgument("curve length does not match the index");
  std::vector<int> out;
  for (int view = 1; view <= index.num_views(); ++view) {
    const int begin = index.view_offset(view);
    const int end = begin + index.view_size(view);
    for (int i = begin; i < end; ++i) {
      const double w = curve(i);
      if (!(w > 0.0)) continue;
      if (i > begin && !(w > curve(i - 1))) continue;
      if (i + 1 < end && w < curve(i + 1)) continue;
      out.push_back(i);
    }
  }
  return out;
}

Summary select_summary(const std::vector<int>& candidates, const Vector& curve,
                       std::span<const ShotRecord> shots, int length, bool coverage) {
  if (length < 1) throw InvalidArgument("summary length must be >= 1");
  if (static_cast<std::size_t>(curve.size()) != shots.size()) {
    throw InvalidArgument("curve and shot metadata disagree in length");
  }
  std::vector<int> ranked;
  for (int c : std::set<int>(candidates.begin(), candidates.end())) {
    if (c < 0 || c >= curve.size()) throw InvalidArgument("candidate index out of range");
    if (curve(c) > 0.0) ranked.push_back(c);
  }
  auto better = [&](int a, int b) {
    if (curve(a) != curve(b)) return curve(a) > curve(b);
    if (shots[a].frame_start != shots[b].frame_start) return shots[a].frame_start < shots[b].frame_start;
    if (shots[a].view != shots[b].view) return shots[a].view < shots[b].view;
    return a < b;
  };
  std::sort(ranked.begin(), ranked.end(), better);

  std::vector<int> chosen;
  if (!coverage) {
    chosen.assign(ranked.begin(), ranked.begin() + std::min<std::size_t>(ranked.size(), length));
  } else if (!ranked.empty()) {
    std::int64_t first = shots[0].frame_start;
    std::int64_t last = shots[0].frame_end;
    for (const auto& s : shots) {
      first = std::min(first, s.frame_start);
      last = std::max(last, s.frame_end);
    }
    const double span_len = static_cast<double>(last - first + 1);
    std::vector<int> best_in_bin(length, -1);
    for (int c : ranked) {  // ranked order, so the first hit per bin is its best
      auto bin = static_cast<int>(static_cast<double>(shots[c].frame_start - first) / span_len * length);
      bin = std::clamp(bin, 0, length - 1);
      if (best_in_bin[bin] < 0) best_in_bin[bin] = c;
    }
    std::set<int> taken;
    for (int c : best_in_bin)
      if (c >= 0) taken.insert(c);
    for (int c : ranked) {
      if (static_cast<int>(taken.size()) >= length) break;
      taken.insert(c);
    }
    for (int c : ranked)
      if (taken.count(c)) chosen.push_back(c);
  }

  Summary s;
  s.requested_length = length;
  for (int c : chosen) {
    const ShotRecord& r = shots[c];
    s.entries.push_back({c, r.view, r.shot, r.frame_start, r.frame_end, curve(c)});
  }
  return s;
}

}  // namespace mvsumm
