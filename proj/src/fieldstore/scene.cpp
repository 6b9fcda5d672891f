#include "agricontrast/fieldstore/scene.hpp"

#include <cctype>

namespace agricontrast::fieldstore {

namespace {

bool all_digits(std::string_view s) {
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return !s.empty();
}

}  // namespace

std::string normalize_timestamp(const std::string& ts) {
  std::string date, time = "00:00:00";
  if (ts.size() >= 10) {
    date = ts.substr(0, 10);
    if (ts.size() > 10) {
      require(ts[10] == 'T' || ts[10] == ' ',
              "timestamp '" + ts + "': expected 'T' separator");
      std::string rest = ts.substr(11);
      if (!rest.empty() && rest.back() == 'Z') rest.pop_back();
      require(rest.size() == 8, "timestamp '" + ts + "': expected HH:MM:SS time");
      time = rest;
    }
  }
  require(date.size() == 10 && date[4] == '-' && date[7] == '-' &&
              all_digits(date.substr(0, 4)) && all_digits(date.substr(5, 2)) &&
              all_digits(date.substr(8, 2)),
          "timestamp '" + ts + "': expected YYYY-MM-DD date");
  require(time[2] == ':' && time[5] == ':' && all_digits(time.substr(0, 2)) &&
              all_digits(time.substr(3, 2)) && all_digits(time.substr(6, 2)),
          "timestamp '" + ts + "': expected HH:MM:SS time");
  int month = std::stoi(date.substr(5, 2));
  int day = std::stoi(date.substr(8, 2));
  int hh = std::stoi(time.substr(0, 2));
  int mm = std::stoi(time.substr(3, 2));
  int ss = std::stoi(time.substr(6, 2));
  require(month >= 1 && month <= 12 && day >= 1 && day <= 31,
          "timestamp '" + ts + "': date out of range");
  require(hh < 24 && mm < 60 && ss < 60, "timestamp '" + ts + "': time out of range");
  return date + "T" + time + "Z";
}

void validate_scene(const FieldScene& scene) {
  require(!scene.field_id.empty(), "scene has empty field_id");
  require(!scene.flight_time.empty(), "scene has empty flight_time");
  require(scene.gsd_cm > 0.0, "scene gsd_cm must be positive");
  require(scene.pixels.defined(), "scene has no pixel data");
  require(scene.pixels.dim() == 3, "scene pixels must be H x W x C");
  require(scene.pixels.size(2) == kNumChannels,
          "scene must have exactly " + std::to_string(kNumChannels) +
              " channels, got " + std::to_string(scene.pixels.size(2)));
  require(scene.pixels.dtype() == torch::kUInt8 || scene.pixels.dtype() == torch::kUInt16,
          "scene pixels must be 8-bit or 16-bit unsigned");
  require(scene.height() > 0 && scene.width() > 0, "scene dimensions must be positive");
}

}  // namespace agricontrast::fieldstore
