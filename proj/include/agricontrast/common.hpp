#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace agricontrast {

// Thrown on violated operation contracts (bad arguments, malformed files,
// inconsistent state). The CLI maps it to the usage/config exit code.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw ContractError(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic sub-stream derivation: one master seed, one tag per purpose.
inline uint64_t derive_seed(uint64_t seed, std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
  return splitmix64(seed ^ h);
}

inline Rng make_rng(uint64_t seed, std::string_view tag) {
  return Rng(derive_seed(seed, tag));
}

inline std::string serialize_rng(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

inline Rng deserialize_rng(const std::string& state) {
  Rng rng;
  std::istringstream is(state);
  is >> rng;
  require(!is.fail(), "invalid rng state string");
  return rng;
}

}  // namespace agricontrast
