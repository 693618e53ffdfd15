#pragma once

// Deterministic ground-truth labeler. Maps a Scenario to nine band tags, the
// independent tags and one main decision.

#include <string_view>

#include "uavsem/label_schema.hpp"
#include "uavsem/scenario.hpp"

namespace uavsem {

inline constexpr std::string_view kOracleVersion = "oracle-v1";

// Enumerator order equals the tag offset inside the corresponding group.
enum class RsrpBand : std::uint8_t { Excellent, Good, Mediocre, Poor, VeryPoor };
enum class CqiBand : std::uint8_t { High, Medium, Low };
enum class Advantage : std::uint8_t { ClearTarget, Similar, ClearCurrent };
enum class SpeedBand : std::uint8_t { High, Medium, Low };
enum class BufferBand : std::uint8_t { CriticalLow, Sufficient, High };

// Lower edges are inclusive: rsrp >= excellent_min is Excellent, and so on.
struct BandThresholds {
  double rsrp_excellent_min = -70.0;
  double rsrp_good_min = -85.0;
  double rsrp_mediocre_min = -95.0;
  double rsrp_poor_min = -110.0;
  int cqi_high_min = 12;
  int cqi_medium_min = 7;
  double advantage_margin_db = 10.0;
  int speed_high_min = 25;
  int speed_medium_min = 15;
  int buffer_high_min = 40;
  int buffer_sufficient_min = 20;
  double weak_target_rsrp_below = -100.0;
  int weak_target_cqi_max = 4;
  double neighbor_stronger_margin_db = 10.0;

  // Throws Errc::config unless every family is strictly ordered and margins
  // are non-negative.
  void validate() const;

  friend bool operator==(const BandThresholds&, const BandThresholds&) = default;
};

struct BandTags {
  RsrpBand target_rsrp = RsrpBand::Excellent;
  RsrpBand current_rsrp = RsrpBand::Excellent;
  CqiBand target_cqi = CqiBand::High;
  CqiBand current_cqi = CqiBand::High;
  Advantage advantage = Advantage::Similar;
  SpeedBand speed = SpeedBand::Low;
  BufferBand buffer = BufferBand::High;
  Mission mission = Mission::Standard;
  RsrpBand neighbor_rsrp = RsrpBand::Excellent;

  GroupTags to_group_tags() const noexcept;
  friend bool operator==(const BandTags&, const BandTags&) = default;
};

RsrpBand rsrp_band(double rsrp, const BandThresholds& t) noexcept;
CqiBand cqi_band(int cqi, const BandThresholds& t) noexcept;
Advantage advantage_of(double target_rsrp, double serving_rsrp, const BandThresholds& t) noexcept;
SpeedBand speed_band(int speed, const BandThresholds& t) noexcept;
BufferBand buffer_band(int buffer, const BandThresholds& t) noexcept;

BandTags band_tags(const Scenario& s, const BandThresholds& t = {});
IndependentSet independent_tags(const Scenario& s, const BandTags& bands, const BandThresholds& t = {});

// First matching rule wins:
//   weak target (rsrp below edge and cqi <= max)  -> RejectTargetWeak
//   conflicting target or unclear benefit          -> QuestionConflictingData
//   clear target advantage                         -> ExecuteHandoverOptimal
//   otherwise                                      -> RejectCurrentBetter
Decision main_decision(const Scenario& s, const BandTags& bands, const IndependentSet& independents,
                       const BandThresholds& t = {});

struct OracleResult {
  Decision decision;
  BandTags bands;
  IndependentSet independents;
};

OracleResult assess_with_rules(const Scenario& s, const BandThresholds& t = {});
LabelVector label(const Scenario& s, const BandThresholds& t = {});

}  // namespace uavsem
