#pragma once

#include <torch/torch.h>

#include <array>
#include <string>
#include <vector>

#include "agricontrast/common.hpp"

namespace agricontrast::fieldstore {

// Channel order is fixed project-wide: R, G, B, NIR.
inline constexpr int64_t kNumChannels = 4;
inline constexpr std::array<const char*, 4> kChannelNames{"R", "G", "B", "NIR"};

// Accepts "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS[Z]" and returns the canonical
// "YYYY-MM-DDTHH:MM:SSZ" form. Canonical strings sort lexicographically in
// time order, which is what the revisit index relies on.
std::string normalize_timestamp(const std::string& ts);

// One full-field multi-channel raster captured by a single flight.
struct FieldScene {
  std::string field_id;
  std::string flight_time;  // canonical ISO-8601 UTC
  double gsd_cm = 10.0;     // ground sample distance, cm/pixel
  torch::Tensor pixels;     // H x W x 4, kUInt8 or kUInt16, CPU contiguous

  int64_t height() const { return pixels.size(0); }
  int64_t width() const { return pixels.size(1); }
};

// Throws ContractError if the scene violates its invariants.
void validate_scene(const FieldScene& scene);

struct TileRecord {
  std::string field_id;
  std::string flight_time;
  int64_t row_origin = 0;
  int64_t col_origin = 0;
  int64_t tile_size = 512;
  torch::Tensor pixels;  // tile_size x tile_size x 4, same dtype as parent
};

// All flights of one field, sorted by flight_time. Groups with fewer than
// three flights are indexed but ineligible for temporal sampling.
struct RevisitGroup {
  std::string field_id;
  std::vector<FieldScene> scenes;

  bool temporal_eligible() const { return scenes.size() >= 3; }
};

struct ManifestEntry {
  std::string field_id;
  std::string flight_time;
  int64_t row_origin = 0;
  int64_t col_origin = 0;
  int64_t tile_size = 0;
  std::string tile_uri;
};

struct TileManifest {
  std::vector<ManifestEntry> entries;
};

}  // namespace agricontrast::fieldstore
