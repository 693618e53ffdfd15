#pragma once

// Test-set metrics report. Keys mirror the row names of the published results
// table; raw-threshold variants are reported alongside.

#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "uavsem/evalkit.hpp"
#include "uavsem/inference.hpp"

namespace uavsem {

struct Provenance {
  std::string source;  // "model" or "logits"
  std::string dataset_sha256;
  std::string model_sha256;  // hash of the model file or of the logits file
  double threshold = kDefaultThreshold;
};

struct MetricsReport {
  std::size_t samples = 0;
  double main_accuracy = 0.0;
  double main_f1 = 0.0;  // micro F1 over the main columns
  MicroPrf overall;      // processed predictions, all 41 columns
  MicroPrf reason;       // processed predictions, reason columns only
  double avg_predicted_tags = 0.0;
  double avg_true_tags = 0.0;
  MicroPrf overall_raw;  // per-label threshold, no structural post-processing
  MicroPrf reason_raw;
  Provenance provenance;
};

// Errc::shape when the counts differ, Errc::empty_input on zero rows.
MetricsReport compute_report(std::span<const LabelVector> truth, std::span<const LogitVector> logits,
                             double threshold = kDefaultThreshold);

nlohmann::ordered_json report_to_json(const MetricsReport& r);

}  // namespace uavsem
