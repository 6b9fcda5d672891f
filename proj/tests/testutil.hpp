#pragma once

#include <torch/torch.h>

#include <filesystem>
#include <string>

#include "agricontrast/common.hpp"
#include "agricontrast/fieldstore/scene.hpp"

namespace agctest {

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("agc_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

inline torch::Tensor random_pixels(int64_t h, int64_t w, uint64_t seed,
                                   torch::Dtype dtype = torch::kUInt8) {
  agricontrast::Rng rng(seed);
  const int64_t max_val = dtype == torch::kUInt8 ? 256 : 65536;
  auto t = torch::empty({h, w, 4}, torch::kInt64);
  auto acc = t.accessor<int64_t, 3>();
  for (int64_t r = 0; r < h; ++r)
    for (int64_t c = 0; c < w; ++c)
      for (int64_t ch = 0; ch < 4; ++ch)
        acc[r][c][ch] = static_cast<int64_t>(rng() % max_val);
  return t.to(dtype);
}

inline agricontrast::fieldstore::FieldScene random_scene(const std::string& field_id,
                                                         const std::string& time,
                                                         int64_t h, int64_t w,
                                                         uint64_t seed) {
  agricontrast::fieldstore::FieldScene scene;
  scene.field_id = field_id;
  scene.flight_time = agricontrast::fieldstore::normalize_timestamp(time);
  scene.gsd_cm = 10.0;
  scene.pixels = random_pixels(h, w, seed);
  return scene;
}

}  // namespace agctest
