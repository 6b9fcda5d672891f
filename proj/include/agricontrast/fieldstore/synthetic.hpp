#pragma once

#include <filesystem>
#include <optional>

#include "agricontrast/fieldstore/scene.hpp"

namespace agricontrast::fieldstore {

// Pixel-level classes emitted by the generator.
enum SyntheticClass : uint8_t {
  kSoil = 0,
  kCrop = 1,
  kWeed = 2,
  kUnmanaged = 3,
};
inline constexpr int kNumSyntheticClasses = 4;

// Field appearance profiles double as tile-level classification labels.
// Crop coverage is matched across profiles (spacing/width scale together) so
// the row-texture frequency, not mean intensity, separates 0 from 1 and 2
// from 3; weed presence separates {0,1} from {2,3}.
inline constexpr int kNumSyntheticProfiles = 4;

struct SyntheticFieldConfig {
  int64_t height = 128;
  int64_t width = 128;
  int num_flights = 3;
  double gsd_cm = 10.0;
  int profile = -1;  // -1: drawn per field; else fixed 0..3
  // Scales every flight-to-flight change (canopy growth, weed expansion,
  // illumination drift). Zero makes all flights pixel-identical.
  double growth_rate = 1.0;
  double noise_level = 0.02;
  int bit_depth = 8;  // 8 or 16
  std::string field_id = "field-0000";
  std::string first_flight = "2020-05-01T00:00:00Z";
  int revisit_days = 21;
  // Profile defaults can be pinned explicitly:
  std::optional<double> row_spacing;
  std::optional<double> row_width;
  std::optional<double> weed_density;  // expected blobs per 1024 px
  bool unmanaged_margin = true;
};

struct SyntheticSeries {
  RevisitGroup group;
  std::vector<torch::Tensor> masks;  // one H x W uint8 class mask per flight
  int profile = 0;
};

// Deterministic in (seed, config): same inputs give bit-identical scenes and
// masks. Crop rows run at a per-field angle, weed blobs grow monotonically
// across flights, and NIR tracks the vegetation mask.
SyntheticSeries synthesize_field_series(uint64_t seed, const SyntheticFieldConfig& config);

// A corpus of fields with ids field-0000.., profiles cycling through all four
// unless the config pins one, and flight times staggered per field.
std::vector<SyntheticSeries> synthesize_corpus(uint64_t seed, int num_fields,
                                               const SyntheticFieldConfig& base);

// Writes a corpus as a dataset directory: scenes.csv plus per-scene pixel
// files (raw containers) and class masks; labels.csv maps field_id to profile.
void write_corpus_dir(const std::vector<SyntheticSeries>& corpus,
                      const std::filesystem::path& dir, bool raw_container = true);

}  // namespace agricontrast::fieldstore
