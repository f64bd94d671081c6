#include "mvsumm/report.hpp"

#include "mvsumm/error.hpp"
#include "mvsumm/io.hpp"

#include <json.hpp>

namespace mvsumm::io {

using nlohmann::json;

std::string summary_json(const Summary& summary) {
  json shots = json::array();
  int rank = 1;
  for (const auto& e : summary.entries) {
    shots.push_back({{"rank", rank++},
                     {"flat_index", e.flat_index},
                     {"view", e.view},
                     {"shot", e.shot},
                     {"frame_start", e.frame_start},
                     {"frame_end", e.frame_end},
                     {"weight", e.weight}});
  }
  json doc = {{"requested_length", summary.requested_length}, {"shots", shots}};
  return doc.dump(2) + "\n";
}

Summary read_summary_json(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  Summary s;
  try {
    const json& shots = doc.is_array() ? doc : doc.at("shots");
    s.requested_length = doc.is_object() ? doc.value("requested_length", 0) : 0;
    for (const auto& item : shots) {
      SummaryEntry e;
      e.flat_index = item.value("flat_index", -1);
      e.view = item.at("view").get<int>();
      e.shot = item.value("shot", 0);
      e.frame_start = item.at("frame_start").get<std::int64_t>();
      e.frame_end = item.at("frame_end").get<std::int64_t>();
      e.weight = item.value("weight", 0.0);
      s.entries.push_back(e);
    }
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": malformed summary: " + e.what());
  }
  if (s.requested_length == 0) s.requested_length = static_cast<int>(s.entries.size());
  return s;
}

std::string curve_csv(const Vector& curve, const std::vector<ShotRecord>& shots) {
  std::string out = "flat_index,view,shot,weight\n";
  for (Eigen::Index i = 0; i < curve.size(); ++i) {
    const auto& s = shots[static_cast<std::size_t>(i)];
    out += std::to_string(i) + "," + std::to_string(s.view) + "," + std::to_string(s.shot) + "," +
           format_double(curve(i)) + "\n";
  }
  return out;
}

std::string trace_csv(const OptimizerTrace& trace) {
  std::string out = "iteration,augmented_obj,true_obj,dZ,dY\n";
  for (const auto& r : trace.records) {
    out += std::to_string(r.iteration) + "," + format_double(r.augmented) + "," +
           format_double(r.true_objective) + "," + format_double(r.delta_z) + "," +
           format_double(r.delta_y) + "\n";
  }
  return out;
}

std::string metrics_json(const Metrics& m) {
  json doc = {{"precision", m.precision},
              {"recall", m.recall},
              {"f_measure", m.f_measure},
              {"matched", std::vector<int>(m.matched_events.begin(), m.matched_events.end())},
              {"redundant", m.redundant_count},
              {"unmatched", m.unmatched_shot_count}};
  return doc.dump(2) + "\n";
}

}  // namespace mvsumm::io
