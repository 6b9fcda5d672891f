#include "agricontrast/fieldstore/io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cstring>
#include <fstream>
#include <sstream>

namespace agricontrast::fieldstore {

namespace fs = std::filesystem;

namespace {

constexpr char kRaw4Magic[4] = {'A', 'G', 'R', '4'};

cv::Mat tensor_to_mat(const torch::Tensor& t) {
  auto c = t.contiguous();
  const int type = c.dtype() == torch::kUInt8
                       ? CV_MAKETYPE(CV_8U, static_cast<int>(c.size(2)))
                       : CV_MAKETYPE(CV_16U, static_cast<int>(c.size(2)));
  cv::Mat m(static_cast<int>(c.size(0)), static_cast<int>(c.size(1)), type);
  std::memcpy(m.data, c.data_ptr(), c.numel() * c.element_size());
  return m;
}

torch::Tensor mat_to_tensor(const cv::Mat& m) {
  require(m.depth() == CV_8U || m.depth() == CV_16U,
          "image must be 8-bit or 16-bit");
  auto dtype = m.depth() == CV_8U ? torch::kUInt8 : torch::kUInt16;
  auto t = torch::empty({m.rows, m.cols, m.channels()}, dtype);
  require(m.isContinuous(), "decoded image is not contiguous");
  std::memcpy(t.data_ptr(), m.data, t.numel() * t.element_size());
  return t;
}

// PNG I/O goes through OpenCV, which orders color channels as BGR.
cv::Mat swap_rb(const cv::Mat& src) {
  cv::Mat dst(src.rows, src.cols, src.type());
  const int from_to[] = {0, 2, 1, 1, 2, 0};
  cv::mixChannels(&src, 1, &dst, 1, from_to, 3);
  return dst;
}

}  // namespace

// -------- png pair + raw container --------

static void imwrite_checked(const cv::Mat& m, const fs::path& path) {
  std::vector<int> params{cv::IMWRITE_PNG_COMPRESSION, 6};
  require(cv::imwrite(path.string(), m, params), "failed to write " + path.string());
}

static cv::Mat imread_checked(const fs::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  require(!m.empty(), "failed to read image " + path.string());
  return m;
}

void save_raw_container(const torch::Tensor& pixels, const fs::path& path) {
  require(pixels.dim() == 3 && pixels.size(2) == kNumChannels,
          "raw container expects H x W x 4 pixels");
  auto c = pixels.contiguous();
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open " + path.string() + " for writing");
  out.write(kRaw4Magic, 4);
  const uint8_t version = 1;
  const uint8_t dtype = c.dtype() == torch::kUInt8 ? 1 : 2;
  require(c.dtype() == torch::kUInt8 || c.dtype() == torch::kUInt16,
          "raw container expects uint8/uint16 samples");
  uint16_t pad = 0;
  uint64_t h = static_cast<uint64_t>(c.size(0));
  uint64_t w = static_cast<uint64_t>(c.size(1));
  out.write(reinterpret_cast<const char*>(&version), 1);
  out.write(reinterpret_cast<const char*>(&dtype), 1);
  out.write(reinterpret_cast<const char*>(&pad), 2);
  out.write(reinterpret_cast<const char*>(&h), 8);
  out.write(reinterpret_cast<const char*>(&w), 8);
  out.write(reinterpret_cast<const char*>(c.data_ptr()),
            static_cast<std::streamsize>(c.numel() * c.element_size()));
  require(out.good(), "short write to " + path.string());
}

torch::Tensor load_raw_container(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open " + path.string());
  char magic[4];
  uint8_t version = 0, dtype = 0;
  uint16_t pad = 0;
  uint64_t h = 0, w = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 1);
  in.read(reinterpret_cast<char*>(&dtype), 1);
  in.read(reinterpret_cast<char*>(&pad), 2);
  in.read(reinterpret_cast<char*>(&h), 8);
  in.read(reinterpret_cast<char*>(&w), 8);
  require(in.good() && std::memcmp(magic, kRaw4Magic, 4) == 0,
          path.string() + " is not a raw 4-channel container");
  require(version == 1, "unsupported raw container version");
  require(dtype == 1 || dtype == 2, "unsupported raw container dtype");
  auto t = torch::empty({static_cast<int64_t>(h), static_cast<int64_t>(w), kNumChannels},
                        dtype == 1 ? torch::kUInt8 : torch::kUInt16);
  in.read(reinterpret_cast<char*>(t.data_ptr()),
          static_cast<std::streamsize>(t.numel() * t.element_size()));
  require(in.good(), "truncated raw container " + path.string());
  return t;
}

void save_pixels(const torch::Tensor& pixels, const std::string& uri, bool raw_container) {
  require(pixels.dim() == 3 && pixels.size(2) == kNumChannels,
          "save_pixels expects H x W x 4");
  fs::path base(uri);
  if (base.has_parent_path()) fs::create_directories(base.parent_path());
  if (raw_container) {
    save_raw_container(pixels, uri + ".raw4");
    return;
  }
  auto c = pixels.contiguous();
  auto rgb = c.slice(2, 0, 3).contiguous();
  imwrite_checked(swap_rb(tensor_to_mat(rgb)), uri + "_rgb.png");
  auto nir = c.slice(2, 3, 4).contiguous();
  imwrite_checked(tensor_to_mat(nir), uri + "_nir.png");
}

torch::Tensor load_pixels(const std::string& uri) {
  if (fs::exists(uri + ".raw4")) return load_raw_container(uri + ".raw4");
  const fs::path rgb_path = uri + "_rgb.png";
  const fs::path nir_path = uri + "_nir.png";
  require(fs::exists(rgb_path), "no pixel data found under basename " + uri);
  require(fs::exists(nir_path), "missing NIR companion " + nir_path.string());
  cv::Mat bgr = imread_checked(rgb_path);
  require(bgr.channels() == 3, rgb_path.string() + ": expected a 3-channel image, got " +
                                   std::to_string(bgr.channels()) + " channels");
  cv::Mat rgb = swap_rb(bgr);
  cv::Mat nir = imread_checked(nir_path);
  require(nir.channels() == 1, nir_path.string() + ": expected a single-channel image");
  if (nir.rows != bgr.rows || nir.cols != bgr.cols) {
    std::ostringstream msg;
    msg << "dimension mismatch between RGB and NIR: rgb " << bgr.rows << "x" << bgr.cols
        << " vs nir " << nir.rows << "x" << nir.cols;
    fail(msg.str());
  }
  require(nir.depth() == bgr.depth(), "RGB and NIR bit depths differ");
  auto rgb_t = mat_to_tensor(rgb);
  auto nir_t = mat_to_tensor(nir);
  return torch::cat({rgb_t, nir_t}, 2).contiguous();
}

FieldScene ingest_scene(const std::string& uri, const SceneMetadata& metadata) {
  FieldScene scene;
  scene.field_id = metadata.field_id;
  scene.flight_time = normalize_timestamp(metadata.flight_time);
  scene.gsd_cm = metadata.gsd_cm;
  scene.pixels = load_pixels(uri);
  validate_scene(scene);
  return scene;
}

// -------- manifest --------

void write_manifest(const TileManifest& manifest, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  require(out.good(), "cannot open " + path.string() + " for writing");
  out << "field_id,flight_time,row_origin,col_origin,tile_size,tile_uri\n";
  for (const auto& e : manifest.entries) {
    out << e.field_id << ',' << e.flight_time << ',' << e.row_origin << ','
        << e.col_origin << ',' << e.tile_size << ',' << e.tile_uri << '\n';
  }
  require(out.good(), "short write to " + path.string());
}

static std::vector<std::string> split_csv_row(const std::string& line, size_t expect) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  require(cells.size() == expect,
          "malformed csv row (expected " + std::to_string(expect) + " cells): " + line);
  return cells;
}

TileManifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open manifest " + path.string());
  std::string line;
  require(std::getline(in, line), "manifest " + path.string() + " is empty");
  require(line == "field_id,flight_time,row_origin,col_origin,tile_size,tile_uri",
          "manifest " + path.string() + " has an unexpected header: " + line);
  TileManifest manifest;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_row(line, 6);
    manifest.entries.push_back({cells[0], cells[1], std::stoll(cells[2]),
                                std::stoll(cells[3]), std::stoll(cells[4]), cells[5]});
  }
  return manifest;
}

// -------- scene index --------

void write_scene_index(const std::vector<SceneIndexRow>& rows, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream out(dir / "scenes.csv", std::ios::binary);
  require(out.good(), "cannot write scenes.csv in " + dir.string());
  out << "field_id,flight_time,gsd_cm,uri\n";
  for (const auto& r : rows) {
    out << r.metadata.field_id << ',' << r.metadata.flight_time << ','
        << r.metadata.gsd_cm << ',' << r.uri << '\n';
  }
}

std::vector<SceneIndexRow> read_scene_index(const fs::path& dir) {
  std::ifstream in(dir / "scenes.csv");
  require(in.good(), "no scenes.csv in " + dir.string());
  std::string line;
  require(std::getline(in, line) && line == "field_id,flight_time,gsd_cm,uri",
          (dir / "scenes.csv").string() + " has an unexpected header");
  std::vector<SceneIndexRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_row(line, 4);
    rows.push_back({{cells[0], cells[1], std::stod(cells[2])}, cells[3]});
  }
  return rows;
}

std::vector<FieldScene> load_scene_dir(const fs::path& dir) {
  std::vector<FieldScene> scenes;
  for (const auto& row : read_scene_index(dir))
    scenes.push_back(ingest_scene((dir / row.uri).string(), row.metadata));
  return scenes;
}

// -------- masks --------

void save_mask(const torch::Tensor& mask, const std::string& uri) {
  require(mask.dim() == 2 && mask.dtype() == torch::kUInt8,
          "mask must be H x W uint8");
  auto c = mask.unsqueeze(2).contiguous();
  imwrite_checked(tensor_to_mat(c), uri + "_mask.png");
}

torch::Tensor load_mask(const std::string& uri) {
  cv::Mat m = imread_checked(uri + "_mask.png");
  require(m.channels() == 1 && m.depth() == CV_8U, "mask must be single-channel uint8");
  return mat_to_tensor(m).squeeze(2);
}

bool has_mask(const std::string& uri) { return fs::exists(uri + "_mask.png"); }

}  // namespace agricontrast::fieldstore
