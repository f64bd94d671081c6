#pragma once

#include "mvsumm/evaluator.hpp"
#include "mvsumm/joint_optimizer.hpp"
#include "mvsumm/summarizer.hpp"

#include <filesystem>
#include <string>

// Output artifacts of a summarization run.
//
//   summary JSON   {"requested_length": L, "shots": [{"rank", "flat_index", "view",
//                   "shot", "frame_start", "frame_end", "weight"}, ...]}
//   curve CSV      flat_index,view,shot,weight
//   trace CSV      iteration,augmented_obj,true_obj,dZ,dY
//   metrics JSON   {"precision", "recall", "f_measure", "matched", "redundant",
//                   "unmatched"}
namespace mvsumm::io {

std::string summary_json(const Summary& summary);
Summary read_summary_json(const std::filesystem::path& path);

std::string curve_csv(const Vector& curve, const std::vector<ShotRecord>& shots);
std::string trace_csv(const OptimizerTrace& trace);
std::string metrics_json(const Metrics& metrics);

}  // namespace mvsumm::io
