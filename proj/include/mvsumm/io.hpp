#pragma once

#include "mvsumm/dataset.hpp"

#include <filesystem>
#include <string>
#include <vector>

// File formats shared by the library, the CLI and the Python module.
//
//   view feature file   CSV, header `# view=<k> dim=<D> shots=<N_k>`, then one
//                       row per feature dimension, one column per shot
//   shots.json          [{"view", "shot", "frame_start", "frame_end"}, ...]
//   ground truth        [{"event_id", "frame_start", "frame_end", "views"}, ...]
//   frame stream        CSV, one row per frame (lines starting with '#' skipped)
namespace mvsumm::io {

struct ViewFile {
  int view = 0;
  Matrix features;  // D x N_k
};

ViewFile read_view_csv(const std::filesystem::path& path);
void write_view_csv(const std::filesystem::path& path, int view, const Matrix& features);

std::vector<ShotRecord> read_shots_json(const std::filesystem::path& path);
void write_shots_json(const std::filesystem::path& path, const std::vector<ShotRecord>& shots);

GroundTruth read_ground_truth(const std::filesystem::path& path);
void write_ground_truth(const std::filesystem::path& path, const GroundTruth& gt);

/// Plain numeric CSV, one row per line. Blank lines and `#` comments skipped.
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

/// Writes `<dir>/view_<k>.csv` for each view and `<dir>/shots.json`.
void write_dataset(const std::filesystem::path& dir, const MultiViewDataset& data);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace mvsumm::io
