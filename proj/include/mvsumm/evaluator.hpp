#pragma once

#include "mvsumm/dataset.hpp"
#include "mvsumm/summarizer.hpp"

#include <optional>
#include <set>
#include <vector>

namespace mvsumm {

enum class MatchStatus { kTruePositive, kRedundant, kUnmatched };

struct ShotMatch {
  std::optional<int> event_id;
  MatchStatus status = MatchStatus::kUnmatched;
  std::int64_t overlap_start = 0;  // shared frames with the assigned event,
  std::int64_t overlap_end = -1;   // empty when unmatched
  std::int64_t duration = 0;
  std::int64_t overlap() const { return overlap_end - overlap_start + 1; }
};

struct Assignment {
  std::vector<ShotMatch> shots;  // aligned with the summary entries
};

/// Assigns each summary shot to the overlapping applicable event with the
/// largest overlap (ties to the lower event id). The first shot of an event in
/// summary order is a true positive, later ones are redundant.
Assignment match_events(const Summary& summary, const GroundTruth& gt);

enum class ScoreMode { kEvent, kFrame };

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::set<int> matched_events;
  int redundant_count = 0;
  int unmatched_shot_count = 0;
};

double f_measure(double precision, double recall);

/// Event mode: recall = matched events / events, precision = matched events /
/// summary_size. Frame mode: the event frames covered by assigned shots
/// (counted once per event) over all event frames for recall, and over the
/// total duration of the summary shots for precision. Throws InvalidArgument
/// on empty ground truth.
Metrics precision_recall_f(const Assignment& assignment, const GroundTruth& gt, int summary_size,
                           ScoreMode mode = ScoreMode::kEvent);

Metrics evaluate(const Summary& summary, const GroundTruth& gt, ScoreMode mode = ScoreMode::kEvent);

}  // namespace mvsumm
