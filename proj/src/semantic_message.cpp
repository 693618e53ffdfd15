#include "uavsem/semantic_message.hpp"

#include <cmath>

#include <fmt/format.h>

#include "uavsem/errors.hpp"
#include "uavsem/text_codec.hpp"

namespace uavsem {

std::string compose(const Assessment& a, const Scenario& s) {
  std::string msg = "UAV Assessment: ";
  switch (a.decision) {
    case Decision::ExecuteHandoverOptimal:
      msg += fmt::format("Proposing handover to Target BS BS{}.", s.target.bs_id);
      break;
    case Decision::RejectTargetWeak:
      msg += fmt::format("Rejecting handover to Target BS BS{} due to weak signal.", s.target.bs_id);
      break;
    case Decision::RejectCurrentBetter:
      msg += fmt::format("Maintaining current connection with BS BS{}.", s.serving.bs_id);
      break;
    case Decision::QuestionConflictingData:
      msg += fmt::format("Handover to Target BS BS{} requires review due to conflicting/unclear data.",
                         s.target.bs_id);
      break;
  }

  const auto words = [&](Group g) { return tag_words(g, a.group_tag(g)); };
  msg += fmt::format(" Key Factors: RSRP Relation: {}; Target Signal (RSRP {}, CQI {})", words(Group::Advantage),
                     words(Group::TargetRsrp), words(Group::TargetCqi));
  if (a.has(Independent::ConflictingTarget)) msg += "; target RSRP/CQI conflicting";
  if (a.has(Independent::UnclearBenefit)) msg += "; unclear benefit (buffer/mission constraint)";
  msg += fmt::format(". UAV Context: Speed {}m/s (Interpreted as: {}), Buffer {}", s.speed, words(Group::Speed),
                     s.buffer);
  return msg;
}

std::uint16_t rsrp_to_wire(double rsrp) {
  if (!(rsrp >= kRsrpMin && rsrp <= kRsrpMax)) {
    throw Error(Errc::encoding, fmt::format("rsrp {} outside [{}, {}]", rsrp, kRsrpMin, kRsrpMax));
  }
  return static_cast<std::uint16_t>(std::lround((rsrp + kRsrpOffset) / kRsrpStep));
}

double rsrp_from_wire(std::uint16_t q) noexcept { return static_cast<double>(q) * kRsrpStep - kRsrpOffset; }

namespace {

std::uint8_t checksum(std::span<const std::uint8_t> bytes) {
  std::uint8_t x = 0;
  for (auto b : bytes) x ^= b;
  return x;
}

std::uint8_t byte_field(int value, int lo, int hi, const char* name) {
  if (value < lo || value > hi) {
    throw Error(Errc::encoding, fmt::format("{} {} outside [{}, {}]", name, value, lo, hi));
  }
  return static_cast<std::uint8_t>(value);
}

void put_u16(WireFrame& w, std::size_t at, std::uint16_t v) {
  w[at] = static_cast<std::uint8_t>(v & 0xFF);
  w[at + 1] = static_cast<std::uint8_t>(v >> 8);
}

std::uint16_t get_u16(std::span<const std::uint8_t> w, std::size_t at) {
  return static_cast<std::uint16_t>(w[at] | (w[at + 1] << 8));
}

}  // namespace

WireFrame encode(const Assessment& a, const Scenario& s) {
  const auto& schema = canonical_schema();
  WireFrame w{};
  w[0] = kWireVersion;
  w[1] = static_cast<std::uint8_t>(a.decision) & 0x03;

  std::uint32_t packed = 0;
  unsigned shift = 0;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    if (a.groups[g] >= schema.groups()[g].size) {
      throw Error(Errc::encoding, fmt::format("tag offset {} invalid for group {}", a.groups[g],
                                              group_name(static_cast<Group>(g))));
    }
    packed |= static_cast<std::uint32_t>(a.groups[g]) << shift;
    shift += kGroupBitWidths[g];
  }
  w[2] = static_cast<std::uint8_t>(packed & 0xFF);
  w[3] = static_cast<std::uint8_t>((packed >> 8) & 0xFF);
  w[4] = static_cast<std::uint8_t>((packed >> 16) & 0xFF);
  w[5] = static_cast<std::uint8_t>(a.independents.to_ulong() & 0x0F);

  w[6] = byte_field(s.speed, 0, 255, "speed");
  w[7] = byte_field(s.buffer, 0, 100, "buffer");
  w[8] = byte_field(s.serving.bs_id, 1, 255, "serving bs_id");
  w[9] = byte_field(s.target.bs_id, 1, 255, "target bs_id");
  w[10] = byte_field(s.neighbor.bs_id, 1, 255, "neighbor bs_id");
  put_u16(w, 11, rsrp_to_wire(s.serving.rsrp));
  put_u16(w, 13, rsrp_to_wire(s.target.rsrp));
  w[15] = checksum(std::span(w).first(15));
  return w;
}

DecodedFrame decode(std::span<const std::uint8_t> wire) {
  if (wire.size() != kWireSize) {
    throw Error(Errc::wire_length, fmt::format("frame has {} bytes, expected {}", wire.size(), kWireSize));
  }
  if (wire[0] != kWireVersion) {
    throw Error(Errc::wire_version, fmt::format("unsupported wire version 0x{:02x}", wire[0]));
  }
  if (checksum(wire.first(15)) != wire[15]) {
    throw Error(Errc::wire_checksum, "checksum mismatch");
  }
  if ((wire[1] & 0xFC) != 0) throw Error(Errc::wire_reserved, "reserved bits set in decision byte");
  if ((wire[4] & 0xE0) != 0) throw Error(Errc::wire_reserved, "reserved bits set in group padding");
  if ((wire[5] & 0xF0) != 0) throw Error(Errc::wire_reserved, "reserved bits set in independent mask");

  const auto& schema = canonical_schema();
  DecodedFrame out;
  auto& a = out.assessment;
  a.decision = static_cast<Decision>(wire[1] & 0x03);
  const std::uint32_t packed = wire[2] | (wire[3] << 8) | (wire[4] << 16);
  unsigned shift = 0;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    const auto value = (packed >> shift) & ((1u << kGroupBitWidths[g]) - 1u);
    if (value >= schema.groups()[g].size) {
      throw Error(Errc::wire_reserved,
                  fmt::format("reserved tag code {} in group {}", value, group_name(static_cast<Group>(g))));
    }
    a.groups[g] = static_cast<std::uint8_t>(value);
    shift += kGroupBitWidths[g];
  }
  a.independents = IndependentSet(wire[5] & 0x0F);

  auto& d = out.digest;
  d.speed = wire[6];
  d.buffer = wire[7];
  d.serving_id = wire[8];
  d.target_id = wire[9];
  d.neighbor_id = wire[10];
  d.serving_rsrp = rsrp_from_wire(get_u16(wire, 11));
  d.target_rsrp = rsrp_from_wire(get_u16(wire, 13));
  return out;
}

OverheadReport overhead_report(const Scenario& s, const Assessment& a) {
  OverheadReport r;
  r.text_bytes = render(s).size();
  r.message_bytes = compose(a, s).size();
  r.wire_bytes = encode(a, s).size();
  r.text_to_wire = static_cast<double>(r.text_bytes) / static_cast<double>(r.wire_bytes);
  r.message_to_wire = static_cast<double>(r.message_bytes) / static_cast<double>(r.wire_bytes);
  return r;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) out += fmt::format("{:02x}", b);
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw Error(Errc::parse, "hex string has odd length");
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::parse, fmt::format("invalid hex digit at offset {}", i));
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

}  // namespace uavsem
