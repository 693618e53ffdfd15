#pragma once

// Post-processing of raw classifier scores into a structurally valid
// assessment: argmax over the main decisions, argmax inside every exclusive
// group, sigmoid threshold for the independent tags.

#include <array>
#include <optional>
#include <span>

#include "uavsem/label_schema.hpp"

namespace uavsem {

using LogitVector = std::array<double, kLabelCount>;

inline constexpr double kDefaultThreshold = 0.5;

struct Assessment {
  Decision decision = Decision::ExecuteHandoverOptimal;
  GroupTags groups{};
  IndependentSet independents;
  std::optional<std::array<double, kLabelCount>> probabilities;

  std::uint8_t group_tag(Group g) const noexcept { return groups[static_cast<std::size_t>(g)]; }
  bool has(Independent t) const noexcept { return independents.test(static_cast<std::size_t>(t)); }
};

double sigmoid(double x) noexcept;

// Ties resolve to the lowest index; an independent tag is active iff
// sigmoid(logit) > threshold (strictly).
// Errors: Errc::length (not 41 values), Errc::non_finite, Errc::config
// (threshold outside (0, 1)).
Assessment decide(std::span<const double> logits, double threshold = kDefaultThreshold);

LabelVector as_label_vector(const Assessment& a);

// Inverse of as_label_vector for a structurally valid vector (e.g. oracle
// truth). Errc::consistency when validate rejects it.
Assessment from_label_vector(const LabelVector& v);

// Per-label sigmoid threshold with no structural constraints.
LabelVector threshold_all(std::span<const double> logits, double threshold = kDefaultThreshold);

}  // namespace uavsem
