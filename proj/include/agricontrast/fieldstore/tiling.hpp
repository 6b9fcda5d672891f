#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "agricontrast/fieldstore/scene.hpp"

namespace agricontrast::fieldstore {

// Regular non-overlapping grid anchored at (0,0); residual border pixels are
// excluded and recorded only through the covered extent.
struct TileGrid {
  int64_t rows = 0;
  int64_t cols = 0;
  int64_t covered_h = 0;  // rows * tile_size
  int64_t covered_w = 0;

  int64_t count() const { return rows * cols; }
};

TileGrid plan_tile_grid(int64_t height, int64_t width, int64_t tile_size);

// Cuts the scene into disjoint tiles on the grid and emits one manifest entry
// per tile. tile_uri is "<uri_prefix><field_id>/<flight_time>/r<row>_c<col>".
std::pair<std::vector<TileRecord>, TileManifest> tile_scene(
    const FieldScene& scene, int64_t tile_size, std::string_view uri_prefix = {});

// Re-assembles the rectangular region covered by the manifest. The result is
// bit-identical to the source scene over that region. Missing tiles are
// reported by their grid coordinates; overlapping entries are rejected.
FieldScene reconstruct_region(const TileManifest& manifest,
                              const std::vector<TileRecord>& tiles);

// Groups scenes by field_id and sorts each group by flight_time. Fields whose
// scenes disagree on dimensions or gsd are rejected with diagnostics.
std::vector<RevisitGroup> build_revisit_index(std::vector<FieldScene> scenes);

}  // namespace agricontrast::fieldstore
