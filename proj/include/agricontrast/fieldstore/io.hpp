#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "agricontrast/fieldstore/scene.hpp"

namespace agricontrast::fieldstore {

// Descriptor accompanying a storage locator when ingesting raw imagery.
struct SceneMetadata {
  std::string field_id;
  std::string flight_time;
  double gsd_cm = 10.0;
};

// Resolves `uri` to pixel data and returns a validated FieldScene with the
// channel order normalized to R,G,B,NIR. Accepted layouts:
//   <uri>.raw4                      single 4-channel raw container
//   <uri>_rgb.png + <uri>_nir.png   lossless image pair sharing a basename
FieldScene ingest_scene(const std::string& uri, const SceneMetadata& metadata);

// Writes `pixels` (H x W x 4, uint8/uint16) under the basename `uri`, either
// as an RGB+NIR png pair (default) or as a single raw container.
void save_pixels(const torch::Tensor& pixels, const std::string& uri,
                 bool raw_container = false);
torch::Tensor load_pixels(const std::string& uri);

void save_raw_container(const torch::Tensor& pixels, const std::filesystem::path& path);
torch::Tensor load_raw_container(const std::filesystem::path& path);

// Manifest file: header field_id,flight_time,row_origin,col_origin,tile_size,tile_uri
// one row per tile, UTF-8, LF line endings.
void write_manifest(const TileManifest& manifest, const std::filesystem::path& path);
TileManifest read_manifest(const std::filesystem::path& path);

// Scene index: a dataset directory holds scenes.csv with header
// field_id,flight_time,gsd_cm,uri where uri is relative to the directory.
struct SceneIndexRow {
  SceneMetadata metadata;
  std::string uri;
};
void write_scene_index(const std::vector<SceneIndexRow>& rows,
                       const std::filesystem::path& dir);
std::vector<SceneIndexRow> read_scene_index(const std::filesystem::path& dir);

// Loads every scene listed in a dataset directory's scenes.csv.
std::vector<FieldScene> load_scene_dir(const std::filesystem::path& dir);

// Per-pixel class masks (single channel uint8) stored next to synthetic
// scenes as <uri>_mask.png.
void save_mask(const torch::Tensor& mask, const std::string& uri);
torch::Tensor load_mask(const std::string& uri);
bool has_mask(const std::string& uri);

}  // namespace agricontrast::fieldstore
