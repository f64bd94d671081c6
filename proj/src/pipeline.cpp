#include "mvsumm/pipeline.hpp"

#include "mvsumm/embedding.hpp"
#include "mvsumm/error.hpp"

#include <algorithm>

namespace mvsumm {

Analysis analyze(const MultiViewDataset& data, const PipelineConfig& cfg) {
  if (data.num_shots() < 2) throw DataError("need at least two shots to summarize");
  Analysis a;
  a.resolved = cfg.joint;
  if (a.resolved.weighted && !a.resolved.shot_weights) {
    const Vector q = data.durations();
    a.resolved.shot_weights = q / q.mean();
  }
  a.graph = build_similarity_graph(data, cfg.similarity);
  if (a.resolved.dim <= 0) {
    a.resolved.dim = eigengap_dimension(a.graph.l, std::max(1, data.num_shots() / 2),
                                        a.resolved.zero_tol);
  }
  a.result = optimize(a.graph.l, a.resolved);
  a.curve = weight_curve(a.result.z);
  a.candidates = local_maxima(a.curve, data.index);
  return a;
}

Summary summarize(const Analysis& analysis, const MultiViewDataset& data, int length,
                  bool coverage) {
  return select_summary(analysis.candidates, analysis.curve, data.shots, length, coverage);
}

}  // namespace mvsumm
