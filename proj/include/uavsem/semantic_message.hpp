#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavsem/inference.hpp"
#include "uavsem/scenario.hpp"

namespace uavsem {

// One-line, human-readable assessment for the serving BS.
std::string compose(const Assessment& a, const Scenario& s);

// Wire format v1, 16 bytes:
//   0      version (0x01)
//   1      bits 0-1 decision, bits 2-7 zero
//   2..4   group tag offsets packed LSB-first, widths 3,3,2,2,2,2,2,2,3 in
//          group order; the top 3 bits of byte 4 are zero
//   5      bits 0-3 independent-tag mask, bits 4-7 zero
//   6      speed (m/s)
//   7      buffer (%)
//   8..10  serving, target, neighbor BS id
//   11..12 serving rsrp, u16 LE, round((rsrp + 130) / 0.25)
//   13..14 target rsrp, same scheme
//   15     xor of bytes 0..14
inline constexpr std::size_t kWireSize = 16;
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr double kRsrpStep = 0.25;
inline constexpr double kRsrpOffset = 130.0;
inline constexpr std::array<unsigned, kGroupCount> kGroupBitWidths = {3, 3, 2, 2, 2, 2, 2, 2, 3};

using WireFrame = std::array<std::uint8_t, kWireSize>;

struct ScenarioDigest {
  int speed = 0;
  int buffer = 0;
  int serving_id = 0;
  int target_id = 0;
  int neighbor_id = 0;
  double serving_rsrp = 0.0;  // dequantized
  double target_rsrp = 0.0;

  friend bool operator==(const ScenarioDigest&, const ScenarioDigest&) = default;
};

struct DecodedFrame {
  Assessment assessment;  // no probabilities
  ScenarioDigest digest;
};

// Errc::encoding when a field does not fit: speed [0,255], buffer [0,100],
// rsrp [-130,-50], bs ids [1,255], tag offsets within their group.
WireFrame encode(const Assessment& a, const Scenario& s);

// Checks, in order: length, version, checksum, reserved bits and tag ranges.
// Each failure has its own Errc (wire_length, wire_version, wire_checksum,
// wire_reserved).
DecodedFrame decode(std::span<const std::uint8_t> wire);

std::uint16_t rsrp_to_wire(double rsrp);
double rsrp_from_wire(std::uint16_t q) noexcept;

struct OverheadReport {
  std::size_t text_bytes = 0;     // rendered scenario text
  std::size_t message_bytes = 0;  // composed semantic message
  std::size_t wire_bytes = 0;
  double text_to_wire = 0.0;
  double message_to_wire = 0.0;
};

OverheadReport overhead_report(const Scenario& s, const Assessment& a);

std::string to_hex(std::span<const std::uint8_t> bytes);
// Errc::parse on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace uavsem
