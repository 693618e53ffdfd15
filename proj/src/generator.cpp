#include "uavsem/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "uavsem/errors.hpp"

namespace uavsem {
namespace {

template <typename T>
void check_bounds(const Bounds<T>& b, T legal_min, T legal_max, const char* name) {
  if (b.min > b.max) {
    throw Error(Errc::config, fmt::format("range {}: min {} > max {}", name, b.min, b.max));
  }
  if (b.min < legal_min || b.max > legal_max) {
    throw Error(Errc::config, fmt::format("range {}: [{}, {}] exceeds legal [{}, {}]", name, b.min, b.max,
                                          legal_min, legal_max));
  }
}

double draw_centi(std::mt19937_64& rng, const Bounds<double>& b) {
  std::uniform_real_distribution<double> dist(b.min, b.max);
  return std::round(dist(rng) * 100.0) / 100.0;
}

int draw_int(std::mt19937_64& rng, const Bounds<int>& b) {
  return std::uniform_int_distribution<int>(b.min, b.max)(rng);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::vector<LabeledScenario> draw_chunk(const GenConfig& config, std::uint64_t index) {
  auto rng = substream(config.seed, index);
  std::vector<LabeledScenario> out;
  out.reserve(kGenerationChunk);
  for (std::size_t i = 0; i < kGenerationChunk; ++i) {
    LabeledScenario ls;
    ls.scenario = sample_scenario(rng, config);
    ls.labels = label(ls.scenario, config.thresholds);
    out.push_back(ls);
  }
  return out;
}

Decision decision_of(const LabelVector& v) {
  for (std::size_t i = 0; i < kMainCount; ++i) {
    if (v[i]) return static_cast<Decision>(i);
  }
  return Decision::ExecuteHandoverOptimal;
}

}  // namespace

void GenConfig::validate() const {
  if (count == 0) throw Error(Errc::config, "count must be positive");
  double sum = 0.0;
  for (double w : class_mix) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(Errc::config, "class_mix weights must be finite and >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(Errc::config, fmt::format("class_mix weights sum to {}, expected 1", sum));
  }
  check_bounds(ranges.rsrp, kRsrpMin, kRsrpMax, "rsrp");
  check_bounds(ranges.rsrq, kRsrqMin, kRsrqMax, "rsrq");
  check_bounds(ranges.cqi, kCqiMin, kCqiMax, "cqi");
  check_bounds(ranges.speed, kSpeedMin, kSpeedMax, "speed");
  check_bounds(ranges.buffer, kBufferMin, kBufferMax, "buffer");
  check_bounds(ranges.bs_id, kBsIdMin, kBsIdMax, "bs_id");
  if (ranges.bs_id.max - ranges.bs_id.min < 2) {
    throw Error(Errc::config, "range bs_id must hold at least three ids");
  }
  thresholds.validate();
}

Scenario sample_scenario(std::mt19937_64& rng, const GenConfig& config) {
  const auto& r = config.ranges;
  if (r.rsrp.min > r.rsrp.max || r.rsrq.min > r.rsrq.max || r.cqi.min > r.cqi.max || r.speed.min > r.speed.max ||
      r.buffer.min > r.buffer.max || r.bs_id.max - r.bs_id.min < 2) {
    throw Error(Errc::config, "degenerate sampling range");
  }

  Scenario s;
  s.speed = draw_int(rng, r.speed);
  s.buffer = draw_int(rng, r.buffer);
  s.mission = static_cast<Mission>(std::uniform_int_distribution<int>(0, 2)(rng));

  std::vector<int> ids(static_cast<std::size_t>(r.bs_id.max - r.bs_id.min + 1));
  std::iota(ids.begin(), ids.end(), r.bs_id.min);
  const auto take_id = [&] {
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    const auto k = pick(rng);
    const int id = ids[k];
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(k));
    return id;
  };

  for (BsMeasurement* bs : {&s.serving, &s.target, &s.neighbor}) {
    bs->bs_id = take_id();
    bs->rsrp = draw_centi(rng, r.rsrp);
    bs->rsrq = draw_centi(rng, r.rsrq);
    bs->cqi = draw_int(rng, r.cqi);
  }
  return s;
}

std::array<std::size_t, kMainCount> class_quotas(std::size_t count, const std::array<double, kMainCount>& mix) {
  std::array<std::size_t, kMainCount> quota{};
  std::array<double, kMainCount> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < kMainCount; ++c) {
    const double exact = mix[c] * static_cast<double>(count);
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
    assigned += quota[c];
  }
  while (assigned < count) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kMainCount; ++c) {
      if (remainder[c] > remainder[best]) best = c;
    }
    ++quota[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  return quota;
}

std::vector<LabeledScenario> generate_dataset(const GenConfig& config, unsigned threads) {
  config.validate();
  threads = std::max(1u, threads);

  auto remaining = class_quotas(config.count, config.class_mix);
  std::vector<LabeledScenario> out;
  out.reserve(config.count);
  std::set<Scenario> seen;

  std::uint64_t next_chunk = 0;
  std::uint64_t draws = 0;
  while (out.size() < config.count) {
    if (draws >= kMaxGenerationDraws) {
      std::size_t starved = 0;
      while (remaining[starved] == 0) ++starved;
      throw Error(Errc::generation_exhausted,
                  fmt::format("quota for {} unreachable after {} draws ({} still missing)",
                              decision_name(static_cast<Decision>(starved)), draws, remaining[starved]));
    }

    // One wave: `threads` chunks drawn concurrently, consumed in chunk order.
    std::vector<std::vector<LabeledScenario>> wave(threads);
    if (threads == 1) {
      wave[0] = draw_chunk(config, next_chunk);
    } else {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] { wave[t] = draw_chunk(config, next_chunk + t); });
      }
    }
    next_chunk += threads;

    for (const auto& chunk : wave) {
      for (const auto& candidate : chunk) {
        if (out.size() == config.count || draws >= kMaxGenerationDraws) break;
        ++draws;
        const auto cls = static_cast<std::size_t>(decision_of(candidate.labels));
        if (remaining[cls] == 0) continue;
        if (!seen.insert(candidate.scenario).second) continue;
        --remaining[cls];
        out.push_back(candidate);
      }
    }
  }
  return out;
}

}  // namespace uavsem
