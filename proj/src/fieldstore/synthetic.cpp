#include "agricontrast/fieldstore/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "agricontrast/fieldstore/io.hpp"

namespace agricontrast::fieldstore {

namespace {

struct WeedBlob {
  double row, col;     // center
  double r0;           // base radius, pixels
  double elongation;   // axis ratio
  double angle;
};

struct ProfileParams {
  double spacing;
  double width;
  double weed_density;
};

// Equal crop coverage (width/spacing = 1/3) across profiles.
ProfileParams profile_params(int profile) {
  switch (profile) {
    case 0: return {6.0, 2.0, 0.0};
    case 1: return {12.0, 4.0, 0.0};
    case 2: return {6.0, 2.0, 0.35};
    default: return {12.0, 4.0, 0.35};
  }
}

// Base reflectance per class, channel order R,G,B,NIR, in [0,1].
constexpr double kSoilTone[4] = {0.47, 0.39, 0.31, 0.24};
constexpr double kCropTone[4] = {0.24, 0.43, 0.20, 0.63};
constexpr double kWeedTone[4] = {0.27, 0.47, 0.22, 0.78};
constexpr double kUnmanagedTone[4] = {0.35, 0.35, 0.35, 0.16};

std::string shift_days(const std::string& iso, int days) {
  // civil date <-> day count (Hinnant's algorithm), enough for flight spacing
  int y = std::stoi(iso.substr(0, 4));
  int m = std::stoi(iso.substr(5, 2));
  int d = std::stoi(iso.substr(8, 2));
  auto days_from_civil = [](int y, int m, int d) -> long {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
  };
  auto civil_from_days = [](long z, int& y, int& m, int& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += (m <= 2);
  };
  int yy, mm, dd;
  civil_from_days(days_from_civil(y, m, d) + days, yy, mm, dd);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", yy, mm, dd);
  return std::string(buf) + iso.substr(10);
}

}  // namespace

SyntheticSeries synthesize_field_series(uint64_t seed, const SyntheticFieldConfig& cfg) {
  require(cfg.height > 0 && cfg.width > 0, "synthetic field dimensions must be positive");
  require(cfg.num_flights >= 1, "synthetic field needs at least one flight");
  require(cfg.bit_depth == 8 || cfg.bit_depth == 16, "bit_depth must be 8 or 16");

  Rng rng = make_rng(seed, "field:" + cfg.field_id);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  int profile = cfg.profile;
  if (profile < 0) profile = static_cast<int>(rng() % kNumSyntheticProfiles);
  require(profile < kNumSyntheticProfiles, "profile out of range");
  ProfileParams params = profile_params(profile);
  if (cfg.row_spacing) params.spacing = *cfg.row_spacing;
  if (cfg.row_width) params.width = *cfg.row_width;
  if (cfg.weed_density) params.weed_density = *cfg.weed_density;

  const double angle = unit(rng) * M_PI;
  const double phase = unit(rng) * params.spacing;
  const double ca = std::cos(angle), sa = std::sin(angle);

  // Per-field tone jitter, shared by all flights.
  double soil[4], crop[4], weed[4], unmanaged[4];
  for (int c = 0; c < 4; ++c) {
    soil[c] = kSoilTone[c] + (unit(rng) - 0.5) * 0.06;
    crop[c] = kCropTone[c] + (unit(rng) - 0.5) * 0.05;
    weed[c] = kWeedTone[c] + (unit(rng) - 0.5) * 0.05;
    unmanaged[c] = kUnmanagedTone[c] + (unit(rng) - 0.5) * 0.04;
  }

  const int64_t H = cfg.height, W = cfg.width;
  std::vector<WeedBlob> blobs;
  const double expected = params.weed_density * static_cast<double>(H * W) / 1024.0;
  const int num_blobs = static_cast<int>(std::floor(expected));
  const int extra = (unit(rng) < expected - num_blobs) ? 1 : 0;
  for (int b = 0; b < num_blobs + extra; ++b) {
    WeedBlob blob;
    blob.row = unit(rng) * H;
    blob.col = unit(rng) * W;
    blob.r0 = 2.0 + unit(rng) * 3.0;
    blob.elongation = 1.0 + unit(rng) * 1.5;
    blob.angle = unit(rng) * M_PI;
    blobs.push_back(blob);
  }

  const double margin = cfg.unmanaged_margin ? std::max<double>(3.0, H * 0.06) : 0.0;

  // Field-static noise so that growth_rate == 0 leaves flights identical.
  torch::Tensor noise = torch::empty({H, W, 4}, torch::kFloat32);
  {
    auto acc = noise.accessor<float, 3>();
    for (int64_t r = 0; r < H; ++r)
      for (int64_t c = 0; c < W; ++c)
        for (int ch = 0; ch < 4; ++ch)
          acc[r][c][ch] = static_cast<float>((unit(rng) - 0.5) * 2.0 * cfg.noise_level);
  }

  SyntheticSeries series;
  series.profile = profile;
  series.group.field_id = cfg.field_id;
  const std::string t0 = normalize_timestamp(cfg.first_flight);

  const double max_val = cfg.bit_depth == 8 ? 255.0 : 65535.0;
  for (int t = 0; t < cfg.num_flights; ++t) {
    const double g = cfg.growth_rate * t;
    const double row_width = params.width * (1.0 + 0.18 * g);
    const double canopy = std::min(1.0, 0.65 + 0.15 * g);  // canopy vigor
    const double drift = 0.02 * g;                          // illumination drift
    const double weed_scale = 1.0 + 0.45 * g;

    torch::Tensor img = torch::empty({H, W, 4}, torch::kFloat32);
    torch::Tensor mask = torch::empty({H, W}, torch::kUInt8);
    auto im = img.accessor<float, 3>();
    auto mk = mask.accessor<uint8_t, 2>();
    auto nz = noise.accessor<float, 3>();

    for (int64_t r = 0; r < H; ++r) {
      for (int64_t c = 0; c < W; ++c) {
        uint8_t cls = kSoil;
        if (r < margin) {
          cls = kUnmanaged;
        } else {
          const double u = r * ca + c * sa + phase;
          const double in_row = u - params.spacing * std::floor(u / params.spacing);
          if (in_row < row_width) cls = kCrop;
          for (const auto& blob : blobs) {
            const double dr = r - blob.row, dc = c - blob.col;
            const double x = dr * std::cos(blob.angle) + dc * std::sin(blob.angle);
            const double y = -dr * std::sin(blob.angle) + dc * std::cos(blob.angle);
            const double rr = blob.r0 * weed_scale;
            if ((x * x) / (rr * rr * blob.elongation * blob.elongation) +
                    (y * y) / (rr * rr) <=
                1.0) {
              cls = kWeed;
              break;
            }
          }
        }
        mk[r][c] = cls;
        const double* tone = cls == kSoil        ? soil
                             : cls == kCrop      ? crop
                             : cls == kWeed      ? weed
                                                 : unmanaged;
        for (int ch = 0; ch < 4; ++ch) {
          double v = tone[ch];
          if (cls == kCrop || cls == kWeed) {
            // vegetation darkens slightly in RGB and brightens in NIR as it grows
            v = (ch == 3) ? v * canopy / 0.65 : v * (1.0 - 0.08 * g);
          }
          v += drift + nz[r][c][ch];
          im[r][c][ch] = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
      }
    }

    FieldScene scene;
    scene.field_id = cfg.field_id;
    scene.flight_time = shift_days(t0, t * cfg.revisit_days);
    scene.gsd_cm = cfg.gsd_cm;
    auto quantized = (img * max_val).round().clamp(0, max_val);
    scene.pixels = cfg.bit_depth == 8 ? quantized.to(torch::kUInt8)
                                      : quantized.to(torch::kUInt16);
    validate_scene(scene);
    series.group.scenes.push_back(std::move(scene));
    series.masks.push_back(mask);
  }
  return series;
}

std::vector<SyntheticSeries> synthesize_corpus(uint64_t seed, int num_fields,
                                               const SyntheticFieldConfig& base) {
  require(num_fields >= 1, "corpus needs at least one field");
  std::vector<SyntheticSeries> corpus;
  corpus.reserve(num_fields);
  for (int i = 0; i < num_fields; ++i) {
    SyntheticFieldConfig cfg = base;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "field-%04d", i);
    cfg.field_id = buf;
    if (base.profile < 0) cfg.profile = i % kNumSyntheticProfiles;
    // stagger flight dates a little per field
    cfg.first_flight = shift_days(normalize_timestamp(base.first_flight),
                                  static_cast<int>(i % 7));
    corpus.push_back(synthesize_field_series(derive_seed(seed, buf), cfg));
  }
  return corpus;
}

void write_corpus_dir(const std::vector<SyntheticSeries>& corpus,
                      const std::filesystem::path& dir, bool raw_container) {
  std::filesystem::create_directories(dir);
  std::vector<SceneIndexRow> rows;
  std::ofstream labels(dir / "labels.csv", std::ios::binary);
  require(labels.good(), "cannot write labels.csv in " + dir.string());
  labels << "field_id,profile\n";
  for (const auto& series : corpus) {
    labels << series.group.field_id << ',' << series.profile << '\n';
    for (size_t t = 0; t < series.group.scenes.size(); ++t) {
      const auto& scene = series.group.scenes[t];
      std::string rel = scene.field_id + "/flight" + std::to_string(t);
      std::string base = (dir / rel).string();
      save_pixels(scene.pixels, base, raw_container);
      save_mask(series.masks[t], base);
      rows.push_back({{scene.field_id, scene.flight_time, scene.gsd_cm}, rel});
    }
  }
  write_scene_index(rows, dir);
}

}  // namespace agricontrast::fieldstore
