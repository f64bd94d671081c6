#pragma once

#include "mvsumm/dataset.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("mvsumm_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::vector<mvsumm::ShotRecord> consecutive_shots(const std::vector<int>& sizes,
                                                         std::int64_t length = 10) {
  std::vector<mvsumm::ShotRecord> shots;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    for (int s = 0; s < sizes[k]; ++s) {
      mvsumm::ShotRecord r;
      r.view = static_cast<int>(k) + 1;
      r.shot = s + 1;
      r.frame_start = s * length + 1;
      r.frame_end = (s + 1) * length;
      shots.push_back(r);
    }
  }
  return shots;
}

}  // namespace testing
