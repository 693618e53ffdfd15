#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "uavsem/label_schema.hpp"
#include "uavsem/rule_oracle.hpp"
#include "uavsem/scenario.hpp"

namespace uavsem {

template <typename T>
struct Bounds {
  T min{};
  T max{};

  constexpr bool contains(T v) const noexcept { return v >= min && v <= max; }
  friend constexpr bool operator==(const Bounds&, const Bounds&) = default;
};

struct SamplingRanges {
  Bounds<double> rsrp{-120.0, -60.0};
  Bounds<double> rsrq{-20.0, -5.0};
  Bounds<int> cqi{kCqiMin, kCqiMax};
  Bounds<int> speed{kSpeedMin, kSpeedMax};
  Bounds<int> buffer{kBufferMin, kBufferMax};
  Bounds<int> bs_id{kBsIdMin, kBsIdMax};

  friend bool operator==(const SamplingRanges&, const SamplingRanges&) = default;
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t count = 5000;
  // Target share of each main decision, indexed by Decision.
  std::array<double, kMainCount> class_mix{0.25, 0.25, 0.25, 0.25};
  SamplingRanges ranges;
  BandThresholds thresholds;

  // Throws Errc::config on min > max, ranges outside the legal envelopes,
  // fewer than three BS ids, bad weights or a zero count.
  void validate() const;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

// rsrp/rsrq uniform on the configured interval rounded to two decimals;
// speed, buffer and cqi uniform integers; mission uniform; three distinct BS
// ids drawn without replacement.
Scenario sample_scenario(std::mt19937_64& rng, const GenConfig& config);

struct LabeledScenario {
  Scenario scenario;
  LabelVector labels{};

  friend bool operator==(const LabeledScenario&, const LabeledScenario&) = default;
};

// Exact per-class counts for `count` samples (largest remainder, ties to the
// lower class index).
std::array<std::size_t, kMainCount> class_quotas(std::size_t count, const std::array<double, kMainCount>& mix);

inline constexpr std::uint64_t kMaxGenerationDraws = 10'000'000;
inline constexpr std::size_t kGenerationChunk = 2048;

// Rejection-samples config.count unique scenarios whose main-decision counts
// equal class_quotas(). Candidates come in chunks of kGenerationChunk, each
// chunk from its own rng substream of the seed, merged in chunk order, so the
// output does not depend on `threads`.
// Throws Errc::generation_exhausted naming the starved class.
std::vector<LabeledScenario> generate_dataset(const GenConfig& config, unsigned threads = 1);

}  // namespace uavsem
