#pragma once

#include "mvsumm/dataset.hpp"
#include "mvsumm/joint_optimizer.hpp"
#include "mvsumm/similarity_graph.hpp"
#include "mvsumm/summarizer.hpp"

#include <vector>

namespace mvsumm {

struct PipelineConfig {
  SimilarityConfig similarity;
  JointConfig joint{.dim = 0};  // dim <= 0: eigengap_dimension(L, N / 2)
  bool coverage = false;
};

/// Everything one optimizer run produces. Summaries of any length are cut
/// from `curve` and `candidates` without touching the optimizer again.
struct Analysis {
  SimilarityGraph graph;
  JointResult result;
  Vector curve;
  std::vector<int> candidates;
  JointConfig resolved;  // joint config after defaults were filled in
};

/// Similarity graph, joint optimization, weight curve and local maxima.
/// In weighted mode the shot durations, scaled to mean 1, serve as q unless
/// explicit weights are configured.
Analysis analyze(const MultiViewDataset& data, const PipelineConfig& cfg);

Summary summarize(const Analysis& analysis, const MultiViewDataset& data, int length,
                  bool coverage = false);

}  // namespace mvsumm
