#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

namespace uavsem {

// Legal measurement envelopes.
inline constexpr double kRsrpMin = -130.0, kRsrpMax = -50.0;
inline constexpr double kRsrqMin = -25.0, kRsrqMax = -3.0;
inline constexpr int kCqiMin = 1, kCqiMax = 15;
inline constexpr int kSpeedMin = 0, kSpeedMax = 40;
inline constexpr int kBufferMin = 0, kBufferMax = 100;
inline constexpr int kBsIdMin = 1, kBsIdMax = 10;

// Order matches the mission group of the label schema.
enum class Mission : std::uint8_t { LowLatency = 0, Standard = 1, HighThroughput = 2 };

struct BsMeasurement {
  int bs_id = 1;
  double rsrp = -90.0;  // dBm
  double rsrq = -10.0;  // dB
  int cqi = 7;

  friend auto operator<=>(const BsMeasurement&, const BsMeasurement&) = default;
};

struct Scenario {
  int speed = 0;   // m/s
  int buffer = 0;  // percent
  Mission mission = Mission::Standard;
  BsMeasurement serving;
  BsMeasurement target;
  BsMeasurement neighbor;

  friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

// Throws Errc::range naming the first field outside its envelope, including
// non-distinct BS ids.
void check_scenario(const Scenario& s);

// "Low-Latency" / "Standard" / "High-Throughput"
std::string_view mission_text(Mission m) noexcept;
// "LowLatency" / "Standard" / "HighThroughput"
std::string_view mission_key(Mission m) noexcept;
// Accepts either spelling; throws Errc::parse otherwise.
Mission mission_from_string(std::string_view text);

}  // namespace uavsem
