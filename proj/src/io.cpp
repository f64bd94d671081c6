#include "mvsumm/io.hpp"

#include "mvsumm/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace mvsumm::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<double> parse_row(const std::string& line, const fs::path& path, std::size_t lineno) {
  std::vector<double> row;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
    }
    row.push_back(v);
    p = next;
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p < end) {
      if (*p != ',') {
        throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected ','");
      }
      ++p;
    }
  }
  return row;
}

struct ParsedCsv {
  std::vector<std::string> comments;
  Matrix values;
};

ParsedCsv parse_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  ParsedCsv out;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') {
      out.comments.push_back(line);
      continue;
    }
    rows.push_back(parse_row(line, path, lineno));
    if (rows.back().size() != rows.front().size()) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": ragged row");
    }
  }
  const auto cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
  out.values.resize(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out.values(static_cast<Eigen::Index>(i), j) = rows[i][j];
  return out;
}

std::string matrix_rows(const Matrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ',';
      s += format_double(m(i, j));
    }
    s += '\n';
  }
  return s;
}

template <typename T>
T required(const json& obj, const char* key, const fs::path& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw DataError(path.string() + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw DataError(path.string() + ": bad value for '" + key + "'");
  }
}

json parse_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace

ViewFile read_view_csv(const fs::path& path) {
  ParsedCsv csv = parse_csv(path);
  static const std::regex header(R"(#\s*view=(\d+)\s+dim=(\d+)\s+shots=(\d+)\s*)");
  std::smatch m;
  if (csv.comments.empty() || !std::regex_match(csv.comments.front(), m, header)) {
    throw DataError(path.string() + ": missing '# view=<k> dim=<D> shots=<N>' header");
  }
  ViewFile vf;
  vf.view = std::stoi(m[1]);
  const long dim = std::stol(m[2]);
  const long shots = std::stol(m[3]);
  vf.features = std::move(csv.values);
  if (vf.features.rows() != dim || vf.features.cols() != shots) {
    throw DataError(path.string() + ": header says " + std::to_string(dim) + "x" +
                    std::to_string(shots) + " but file holds " +
                    std::to_string(vf.features.rows()) + "x" + std::to_string(vf.features.cols()));
  }
  return vf;
}

void write_view_csv(const fs::path& path, int view, const Matrix& features) {
  std::string s = "# view=" + std::to_string(view) + " dim=" + std::to_string(features.rows()) +
                  " shots=" + std::to_string(features.cols()) + "\n";
  write_text(path, s + matrix_rows(features));
}

std::vector<ShotRecord> read_shots_json(const fs::path& path) {
  const json doc = parse_json(path);
  if (!doc.is_array()) throw DataError(path.string() + ": expected a JSON array");
  std::vector<ShotRecord> shots;
  for (const auto& item : doc) {
    ShotRecord s;
    s.view = required<int>(item, "view", path);
    s.shot = required<int>(item, "shot", path);
    s.frame_start = required<std::int64_t>(item, "frame_start", path);
    s.frame_end = required<std::int64_t>(item, "frame_end", path);
    shots.push_back(s);
  }
  return shots;
}

void write_shots_json(const fs::path& path, const std::vector<ShotRecord>& shots) {
  json doc = json::array();
  for (const auto& s : shots) {
    doc.push_back({{"view", s.view},
                   {"shot", s.shot},
                   {"frame_start", s.frame_start},
                   {"frame_end", s.frame_end}});
  }
  write_text(path, doc.dump(2) + "\n");
}

GroundTruth read_ground_truth(const fs::path& path) {
  const json doc = parse_json(path);
  if (!doc.is_array()) throw DataError(path.string() + ": expected a JSON array");
  GroundTruth gt;
  for (const auto& item : doc) {
    Event e;
    e.id = required<int>(item, "event_id", path);
    e.frame_start = required<std::int64_t>(item, "frame_start", path);
    e.frame_end = required<std::int64_t>(item, "frame_end", path);
    if (item.contains("views") && !item.at("views").is_null()) {
      for (int v : required<std::vector<int>>(item, "views", path)) e.views.insert(v);
    }
    gt.events.push_back(std::move(e));
  }
  validate_ground_truth(gt);
  return gt;
}

void write_ground_truth(const fs::path& path, const GroundTruth& gt) {
  json doc = json::array();
  for (const auto& e : gt.events) {
    doc.push_back({{"event_id", e.id},
                   {"frame_start", e.frame_start},
                   {"frame_end", e.frame_end},
                   {"views", std::vector<int>(e.views.begin(), e.views.end())}});
  }
  write_text(path, doc.dump(2) + "\n");
}

Matrix read_matrix_csv(const fs::path& path) { return parse_csv(path).values; }

void write_matrix_csv(const fs::path& path, const Matrix& m) { write_text(path, matrix_rows(m)); }

void write_dataset(const fs::path& dir, const MultiViewDataset& data) {
  fs::create_directories(dir);
  for (int k = 0; k < data.num_views(); ++k) {
    write_view_csv(dir / ("view_" + std::to_string(k + 1) + ".csv"), k + 1, data.views[k]);
  }
  write_shots_json(dir / "shots.json", data.shots);
}

}  // namespace mvsumm::io
