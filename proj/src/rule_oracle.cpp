#include "uavsem/rule_oracle.hpp"

#include <string>

#include "uavsem/errors.hpp"

namespace uavsem {

void BandThresholds::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(Errc::config, std::string("band thresholds: ") + what);
  };
  require(rsrp_excellent_min > rsrp_good_min && rsrp_good_min > rsrp_mediocre_min &&
              rsrp_mediocre_min > rsrp_poor_min,
          "rsrp edges must be strictly decreasing");
  require(cqi_high_min > cqi_medium_min, "cqi edges must be strictly ordered");
  require(speed_high_min > speed_medium_min, "speed edges must be strictly ordered");
  require(buffer_high_min > buffer_sufficient_min, "buffer edges must be strictly ordered");
  require(advantage_margin_db >= 0.0, "advantage margin must be non-negative");
  require(neighbor_stronger_margin_db >= 0.0, "neighbor margin must be non-negative");
}

GroupTags BandTags::to_group_tags() const noexcept {
  const auto u = [](auto e) { return static_cast<std::uint8_t>(e); };
  return {u(target_rsrp), u(current_rsrp), u(target_cqi), u(current_cqi), u(advantage),
          u(speed),       u(buffer),       u(mission),    u(neighbor_rsrp)};
}

RsrpBand rsrp_band(double rsrp, const BandThresholds& t) noexcept {
  if (rsrp >= t.rsrp_excellent_min) return RsrpBand::Excellent;
  if (rsrp >= t.rsrp_good_min) return RsrpBand::Good;
  if (rsrp >= t.rsrp_mediocre_min) return RsrpBand::Mediocre;
  if (rsrp >= t.rsrp_poor_min) return RsrpBand::Poor;
  return RsrpBand::VeryPoor;
}

CqiBand cqi_band(int cqi, const BandThresholds& t) noexcept {
  if (cqi >= t.cqi_high_min) return CqiBand::High;
  if (cqi >= t.cqi_medium_min) return CqiBand::Medium;
  return CqiBand::Low;
}

Advantage advantage_of(double target_rsrp, double serving_rsrp, const BandThresholds& t) noexcept {
  const double delta = target_rsrp - serving_rsrp;
  if (delta > t.advantage_margin_db) return Advantage::ClearTarget;
  if (delta < -t.advantage_margin_db) return Advantage::ClearCurrent;
  return Advantage::Similar;
}

SpeedBand speed_band(int speed, const BandThresholds& t) noexcept {
  if (speed >= t.speed_high_min) return SpeedBand::High;
  if (speed >= t.speed_medium_min) return SpeedBand::Medium;
  return SpeedBand::Low;
}

BufferBand buffer_band(int buffer, const BandThresholds& t) noexcept {
  if (buffer >= t.buffer_high_min) return BufferBand::High;
  if (buffer >= t.buffer_sufficient_min) return BufferBand::Sufficient;
  return BufferBand::CriticalLow;
}

BandTags band_tags(const Scenario& s, const BandThresholds& t) {
  BandTags b;
  b.target_rsrp = rsrp_band(s.target.rsrp, t);
  b.current_rsrp = rsrp_band(s.serving.rsrp, t);
  b.target_cqi = cqi_band(s.target.cqi, t);
  b.current_cqi = cqi_band(s.serving.cqi, t);
  b.advantage = advantage_of(s.target.rsrp, s.serving.rsrp, t);
  b.speed = speed_band(s.speed, t);
  b.buffer = buffer_band(s.buffer, t);
  b.mission = s.mission;
  b.neighbor_rsrp = rsrp_band(s.neighbor.rsrp, t);
  return b;
}

namespace {

bool strong(RsrpBand b) { return b == RsrpBand::Excellent || b == RsrpBand::Good; }
bool weak(RsrpBand b) { return b == RsrpBand::Poor || b == RsrpBand::VeryPoor; }

// Strong RSRP with low CQI, or weak RSRP with high CQI.
bool conflicting(RsrpBand rsrp, CqiBand cqi) {
  return (strong(rsrp) && cqi == CqiBand::Low) || (weak(rsrp) && cqi == CqiBand::High);
}

}  // namespace

IndependentSet independent_tags(const Scenario& s, const BandTags& bands, const BandThresholds& t) {
  IndependentSet out;
  const double margin = t.neighbor_stronger_margin_db;
  out.set(static_cast<std::size_t>(Independent::NeighborStronger),
          s.neighbor.rsrp >= s.serving.rsrp + margin && s.neighbor.rsrp >= s.target.rsrp + margin);
  out.set(static_cast<std::size_t>(Independent::ConflictingTarget), conflicting(bands.target_rsrp, bands.target_cqi));
  out.set(static_cast<std::size_t>(Independent::ConflictingCurrent),
          conflicting(bands.current_rsrp, bands.current_cqi));
  const bool starved_throughput = bands.buffer == BufferBand::CriticalLow && bands.mission == Mission::HighThroughput;
  const bool latency_vs_speed = bands.mission == Mission::LowLatency && bands.speed == SpeedBand::High &&
                                bands.advantage == Advantage::Similar;
  out.set(static_cast<std::size_t>(Independent::UnclearBenefit), starved_throughput || latency_vs_speed);
  return out;
}

Decision main_decision(const Scenario& s, const BandTags& bands, const IndependentSet& independents,
                       const BandThresholds& t) {
  if (s.target.rsrp < t.weak_target_rsrp_below && s.target.cqi <= t.weak_target_cqi_max) {
    return Decision::RejectTargetWeak;
  }
  if (independents.test(static_cast<std::size_t>(Independent::ConflictingTarget)) ||
      independents.test(static_cast<std::size_t>(Independent::UnclearBenefit))) {
    return Decision::QuestionConflictingData;
  }
  if (bands.advantage == Advantage::ClearTarget) return Decision::ExecuteHandoverOptimal;
  return Decision::RejectCurrentBetter;
}

OracleResult assess_with_rules(const Scenario& s, const BandThresholds& t) {
  const BandTags bands = band_tags(s, t);
  const IndependentSet ind = independent_tags(s, bands, t);
  return {main_decision(s, bands, ind, t), bands, ind};
}

LabelVector label(const Scenario& s, const BandThresholds& t) {
  const auto r = assess_with_rules(s, t);
  return make_label_vector(r.decision, r.bands.to_group_tags(), r.independents);
}

}  // namespace uavsem
