#include "mvsumm/evaluator.hpp"

#include "mvsumm/error.hpp"

#include <algorithm>
#include <map>

namespace mvsumm {

Assignment match_events(const Summary& summary, const GroundTruth& gt) {
  Assignment out;
  std::set<int> seen;
  for (const auto& entry : summary.entries) {
    if (entry.frame_start > entry.frame_end) throw InvalidArgument("summary shot with empty range");
    ShotMatch m;
    m.duration = entry.frame_end - entry.frame_start + 1;
    const Event* best = nullptr;
    std::int64_t best_overlap = 0;
    for (const auto& e : gt.events) {
      if (!e.applies_to(entry.view)) continue;
      const std::int64_t lo = std::max(entry.frame_start, e.frame_start);
      const std::int64_t hi = std::min(entry.frame_end, e.frame_end);
      const std::int64_t overlap = hi - lo + 1;
      if (overlap <= 0) continue;
      if (!best || overlap > best_overlap || (overlap == best_overlap && e.id < best->id)) {
        best = &e;
        best_overlap = overlap;
        m.overlap_start = lo;
        m.overlap_end = hi;
      }
    }
    if (best) {
      m.event_id = best->id;
      m.status = seen.insert(best->id).second ? MatchStatus::kTruePositive : MatchStatus::kRedundant;
    }
    out.shots.push_back(m);
  }
  return out;
}

double f_measure(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

namespace {

// Frames in the union of closed intervals.
std::int64_t union_length(std::vector<std::pair<std::int64_t, std::int64_t>> ranges) {
  std::sort(ranges.begin(), ranges.end());
  std::int64_t total = 0;
  std::int64_t cur_lo = 0, cur_hi = -1;
  bool open = false;
  for (const auto& [lo, hi] : ranges) {
    if (open && lo <= cur_hi + 1) {
      cur_hi = std::max(cur_hi, hi);
      continue;
    }
    if (open) total += cur_hi - cur_lo + 1;
    cur_lo = lo;
    cur_hi = hi;
    open = true;
  }
  if (open) total += cur_hi - cur_lo + 1;
  return total;
}

}  // namespace

Metrics precision_recall_f(const Assignment& assignment, const GroundTruth& gt, int summary_size,
                           ScoreMode mode) {
  if (gt.events.empty()) throw InvalidArgument("no events to score");
  if (summary_size < 0) throw InvalidArgument("summary size must be >= 0");
  Metrics m;
  std::map<int, std::vector<std::pair<std::int64_t, std::int64_t>>> covered;
  std::int64_t shot_frames = 0;
  for (const auto& s : assignment.shots) {
    shot_frames += s.duration;
    switch (s.status) {
      case MatchStatus::kTruePositive: m.matched_events.insert(*s.event_id); break;
      case MatchStatus::kRedundant: ++m.redundant_count; break;
      case MatchStatus::kUnmatched: ++m.unmatched_shot_count; break;
    }
    if (s.event_id) covered[*s.event_id].emplace_back(s.overlap_start, s.overlap_end);
  }

  if (mode == ScoreMode::kEvent) {
    m.recall = static_cast<double>(m.matched_events.size()) / static_cast<double>(gt.events.size());
    m.precision = summary_size > 0 ? static_cast<double>(m.matched_events.size()) / summary_size : 0.0;
  } else {
    std::int64_t event_frames = 0;
    std::int64_t hit_frames = 0;
    for (const auto& e : gt.events) {
      event_frames += e.length();
      if (auto it = covered.find(e.id); it != covered.end()) hit_frames += union_length(it->second);
    }
    m.recall = event_frames > 0 ? static_cast<double>(hit_frames) / static_cast<double>(event_frames) : 0.0;
    m.precision = shot_frames > 0 ? static_cast<double>(hit_frames) / static_cast<double>(shot_frames) : 0.0;
  }
  m.f_measure = f_measure(m.precision, m.recall);
  return m;
}

Metrics evaluate(const Summary& summary, const GroundTruth& gt, ScoreMode mode) {
  return precision_recall_f(match_events(summary, gt), gt, static_cast<int>(summary.entries.size()),
                            mode);
}

}  // namespace mvsumm
