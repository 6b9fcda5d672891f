#include "agricontrast/fieldstore/tiling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace agricontrast::fieldstore {

TileGrid plan_tile_grid(int64_t height, int64_t width, int64_t tile_size) {
  require(tile_size >= 1, "tile_size must be >= 1");
  require(height >= tile_size && width >= tile_size,
          "scene " + std::to_string(height) + "x" + std::to_string(width) +
              " is smaller than tile_size " + std::to_string(tile_size) +
              "; tiling would produce no tiles");
  TileGrid grid;
  grid.rows = height / tile_size;
  grid.cols = width / tile_size;
  grid.covered_h = grid.rows * tile_size;
  grid.covered_w = grid.cols * tile_size;
  return grid;
}

std::pair<std::vector<TileRecord>, TileManifest> tile_scene(
    const FieldScene& scene, int64_t tile_size, std::string_view uri_prefix) {
  validate_scene(scene);
  const TileGrid grid = plan_tile_grid(scene.height(), scene.width(), tile_size);

  std::vector<TileRecord> tiles;
  tiles.reserve(static_cast<size_t>(grid.count()));
  TileManifest manifest;
  manifest.entries.reserve(static_cast<size_t>(grid.count()));

  auto pixels = scene.pixels.contiguous();
  for (int64_t r = 0; r < grid.rows; ++r) {
    for (int64_t c = 0; c < grid.cols; ++c) {
      TileRecord tile;
      tile.field_id = scene.field_id;
      tile.flight_time = scene.flight_time;
      tile.row_origin = r * tile_size;
      tile.col_origin = c * tile_size;
      tile.tile_size = tile_size;
      tile.pixels = pixels
                        .slice(0, tile.row_origin, tile.row_origin + tile_size)
                        .slice(1, tile.col_origin, tile.col_origin + tile_size)
                        .clone();
      std::ostringstream uri;
      uri << uri_prefix << scene.field_id << "/" << scene.flight_time << "/r"
          << tile.row_origin << "_c" << tile.col_origin;
      manifest.entries.push_back({scene.field_id, scene.flight_time,
                                  tile.row_origin, tile.col_origin, tile_size,
                                  uri.str()});
      tiles.push_back(std::move(tile));
    }
  }
  return {std::move(tiles), std::move(manifest)};
}

FieldScene reconstruct_region(const TileManifest& manifest,
                              const std::vector<TileRecord>& tiles) {
  require(!manifest.entries.empty(), "manifest is empty");
  const auto& first = manifest.entries.front();
  const int64_t ts = first.tile_size;
  require(ts >= 1, "manifest tile_size must be >= 1");

  int64_t min_r = first.row_origin, max_r = first.row_origin;
  int64_t min_c = first.col_origin, max_c = first.col_origin;
  std::set<std::pair<int64_t, int64_t>> origins;
  for (const auto& e : manifest.entries) {
    require(e.field_id == first.field_id && e.flight_time == first.flight_time,
            "manifest mixes tiles from different scenes (" + e.field_id + "@" +
                e.flight_time + " vs " + first.field_id + "@" + first.flight_time + ")");
    require(e.tile_size == ts, "manifest mixes tile sizes");
    if (!origins.insert({e.row_origin, e.col_origin}).second)
      fail("manifest has overlapping entries at origin (" +
           std::to_string(e.row_origin) + "," + std::to_string(e.col_origin) + ")");
    min_r = std::min(min_r, e.row_origin);
    max_r = std::max(max_r, e.row_origin);
    min_c = std::min(min_c, e.col_origin);
    max_c = std::max(max_c, e.col_origin);
  }
  for (const auto& e : manifest.entries) {
    require((e.row_origin - min_r) % ts == 0 && (e.col_origin - min_c) % ts == 0,
            "entry at (" + std::to_string(e.row_origin) + "," +
                std::to_string(e.col_origin) + ") is off the tile grid");
  }

  // The covered region is the bounding rectangle; every grid cell must be
  // present exactly once.
  std::vector<std::pair<int64_t, int64_t>> gaps;
  for (int64_t r = min_r; r <= max_r; r += ts)
    for (int64_t c = min_c; c <= max_c; c += ts)
      if (!origins.count({r, c})) gaps.push_back({(r - min_r) / ts, (c - min_c) / ts});
  if (!gaps.empty()) {
    std::ostringstream msg;
    msg << "manifest does not cover its region; missing grid cells:";
    for (const auto& [gr, gc] : gaps) msg << " (" << gr << "," << gc << ")";
    fail(msg.str());
  }

  std::map<std::pair<int64_t, int64_t>, const TileRecord*> by_origin;
  for (const auto& t : tiles) {
    require(t.tile_size == ts, "tile size mismatch against manifest");
    by_origin[{t.row_origin, t.col_origin}] = &t;
  }

  const int64_t out_h = max_r - min_r + ts;
  const int64_t out_w = max_c - min_c + ts;
  torch::Tensor out;
  for (const auto& e : manifest.entries) {
    auto it = by_origin.find({e.row_origin, e.col_origin});
    require(it != by_origin.end(),
            "tile listed in manifest is absent at origin (" +
                std::to_string(e.row_origin) + "," + std::to_string(e.col_origin) + ")");
    const TileRecord& t = *it->second;
    require(t.pixels.dim() == 3 && t.pixels.size(0) == ts && t.pixels.size(1) == ts &&
                t.pixels.size(2) == kNumChannels,
            "tile at (" + std::to_string(t.row_origin) + "," +
                std::to_string(t.col_origin) + ") has wrong shape");
    if (!out.defined())
      out = torch::empty({out_h, out_w, kNumChannels}, t.pixels.options());
    out.slice(0, e.row_origin - min_r, e.row_origin - min_r + ts)
        .slice(1, e.col_origin - min_c, e.col_origin - min_c + ts)
        .copy_(t.pixels);
  }

  FieldScene fragment;
  fragment.field_id = first.field_id;
  fragment.flight_time = first.flight_time;
  fragment.pixels = out;
  return fragment;
}

std::vector<RevisitGroup> build_revisit_index(std::vector<FieldScene> scenes) {
  std::map<std::string, std::vector<FieldScene>> by_field;
  for (auto& s : scenes) {
    validate_scene(s);
    by_field[s.field_id].push_back(std::move(s));
  }

  std::vector<RevisitGroup> groups;
  groups.reserve(by_field.size());
  for (auto& [field_id, members] : by_field) {
    const auto& head = members.front();
    for (const auto& s : members) {
      if (s.height() != head.height() || s.width() != head.width() ||
          s.gsd_cm != head.gsd_cm) {
        std::ostringstream msg;
        msg << "field " << field_id << " has inconsistent scenes: " << head.height()
            << "x" << head.width() << " @" << head.gsd_cm << "cm vs " << s.height()
            << "x" << s.width() << " @" << s.gsd_cm << "cm (flight " << s.flight_time
            << ")";
        fail(msg.str());
      }
    }
    std::sort(members.begin(), members.end(),
              [](const FieldScene& a, const FieldScene& b) {
                return a.flight_time < b.flight_time;
              });
    groups.push_back({field_id, std::move(members)});
  }
  return groups;
}

}  // namespace agricontrast::fieldstore
