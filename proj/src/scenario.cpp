#include "uavsem/scenario.hpp"

#include <fmt/format.h>

#include "uavsem/errors.hpp"

namespace uavsem {
namespace {

void check_bs(const BsMeasurement& bs, std::string_view role) {
  if (bs.bs_id < kBsIdMin || bs.bs_id > kBsIdMax) {
    throw Error(Errc::range, fmt::format("{} bs_id {} outside [{}, {}]", role, bs.bs_id, kBsIdMin, kBsIdMax));
  }
  if (!(bs.rsrp >= kRsrpMin && bs.rsrp <= kRsrpMax)) {
    throw Error(Errc::range, fmt::format("{} rsrp {} outside [{}, {}]", role, bs.rsrp, kRsrpMin, kRsrpMax));
  }
  if (!(bs.rsrq >= kRsrqMin && bs.rsrq <= kRsrqMax)) {
    throw Error(Errc::range, fmt::format("{} rsrq {} outside [{}, {}]", role, bs.rsrq, kRsrqMin, kRsrqMax));
  }
  if (bs.cqi < kCqiMin || bs.cqi > kCqiMax) {
    throw Error(Errc::range, fmt::format("{} cqi {} outside [{}, {}]", role, bs.cqi, kCqiMin, kCqiMax));
  }
}

}  // namespace

void check_scenario(const Scenario& s) {
  if (s.speed < kSpeedMin || s.speed > kSpeedMax) {
    throw Error(Errc::range, fmt::format("speed {} outside [{}, {}]", s.speed, kSpeedMin, kSpeedMax));
  }
  if (s.buffer < kBufferMin || s.buffer > kBufferMax) {
    throw Error(Errc::range, fmt::format("buffer {} outside [{}, {}]", s.buffer, kBufferMin, kBufferMax));
  }
  if (static_cast<unsigned>(s.mission) > 2) {
    throw Error(Errc::range, "mission out of range");
  }
  check_bs(s.serving, "serving");
  check_bs(s.target, "target");
  check_bs(s.neighbor, "neighbor");
  if (s.serving.bs_id == s.target.bs_id || s.serving.bs_id == s.neighbor.bs_id ||
      s.target.bs_id == s.neighbor.bs_id) {
    throw Error(Errc::range, fmt::format("bs ids not distinct: serving BS{}, target BS{}, neighbor BS{}",
                                         s.serving.bs_id, s.target.bs_id, s.neighbor.bs_id));
  }
}

std::string_view mission_text(Mission m) noexcept {
  switch (m) {
    case Mission::LowLatency: return "Low-Latency";
    case Mission::Standard: return "Standard";
    case Mission::HighThroughput: return "High-Throughput";
  }
  return "?";
}

std::string_view mission_key(Mission m) noexcept {
  switch (m) {
    case Mission::LowLatency: return "LowLatency";
    case Mission::Standard: return "Standard";
    case Mission::HighThroughput: return "HighThroughput";
  }
  return "?";
}

Mission mission_from_string(std::string_view text) {
  for (auto m : {Mission::LowLatency, Mission::Standard, Mission::HighThroughput}) {
    if (text == mission_text(m) || text == mission_key(m)) return m;
  }
  throw Error(Errc::parse, fmt::format("unknown mission '{}'", text));
}

}  // namespace uavsem
