#include "uavsem/inference.hpp"

#include <cmath>

#include <fmt/format.h>

#include "uavsem/errors.hpp"

namespace uavsem {
namespace {

void check_logits(std::span<const double> logits) {
  if (logits.size() != kLabelCount) {
    throw Error(Errc::length, fmt::format("expected {} logits, got {}", kLabelCount, logits.size()));
  }
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!std::isfinite(logits[i])) throw Error(Errc::non_finite, fmt::format("logit {} is not finite", i));
  }
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(Errc::config, fmt::format("threshold {} outside (0, 1)", threshold));
  }
}

std::size_t argmax(std::span<const double> logits, IndexRange r) {
  std::size_t best = r.first;
  for (std::size_t i = r.first + 1; i < r.end(); ++i) {
    if (logits[i] > logits[best]) best = i;
  }
  return best;
}

}  // namespace

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Assessment decide(std::span<const double> logits, double threshold) {
  check_logits(logits);
  check_threshold(threshold);
  const auto& schema = canonical_schema();

  Assessment a;
  a.decision = static_cast<Decision>(argmax(logits, schema.mains()));
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    const auto r = schema.groups()[g];
    a.groups[g] = static_cast<std::uint8_t>(argmax(logits, r) - r.first);
  }
  std::array<double, kLabelCount> prob{};
  for (std::size_t i = 0; i < kLabelCount; ++i) prob[i] = sigmoid(logits[i]);
  const auto ind = schema.independents();
  for (std::size_t t = 0; t < ind.size; ++t) {
    a.independents.set(t, prob[ind.first + t] > threshold);
  }
  a.probabilities = prob;
  return a;
}

LabelVector as_label_vector(const Assessment& a) { return make_label_vector(a.decision, a.groups, a.independents); }

Assessment from_label_vector(const LabelVector& v) {
  const auto& schema = canonical_schema();
  if (auto check = schema.validate(v); !check) throw Error(Errc::consistency, check.violation);
  Assessment a;
  for (std::size_t i = 0; i < kMainCount; ++i) {
    if (v[i]) a.decision = static_cast<Decision>(i);
  }
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    const auto r = schema.groups()[g];
    for (std::size_t i = r.first; i < r.end(); ++i) {
      if (v[i]) a.groups[g] = static_cast<std::uint8_t>(i - r.first);
    }
  }
  const auto ind = schema.independents();
  for (std::size_t t = 0; t < ind.size; ++t) a.independents.set(t, v[ind.first + t] != 0);
  return a;
}

LabelVector threshold_all(std::span<const double> logits, double threshold) {
  check_logits(logits);
  check_threshold(threshold);
  LabelVector v{};
  for (std::size_t i = 0; i < kLabelCount; ++i) v[i] = sigmoid(logits[i]) > threshold ? 1 : 0;
  return v;
}

}  // namespace uavsem
