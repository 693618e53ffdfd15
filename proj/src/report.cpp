#include "uavsem/report.hpp"

#include <fmt/format.h>

#include "uavsem/errors.hpp"

namespace uavsem {
namespace {

nlohmann::ordered_json prf_json(const MicroPrf& m) {
  nlohmann::ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["tp"] = m.counts.tp;
  j["fp"] = m.counts.fp;
  j["fn"] = m.counts.fn;
  return j;
}

}  // namespace

MetricsReport compute_report(std::span<const LabelVector> truth, std::span<const LogitVector> logits,
                             double threshold) {
  if (truth.size() != logits.size()) {
    throw Error(Errc::shape, fmt::format("{} truth rows but {} logit rows", truth.size(), logits.size()));
  }
  if (truth.empty()) throw Error(Errc::empty_input, "no samples to evaluate");
  LabelMatrix processed, raw;
  processed.reserve(logits.size());
  raw.reserve(logits.size());
  for (const auto& z : logits) {
    processed.push_back(as_label_vector(decide(z, threshold)));
    raw.push_back(threshold_all(z, threshold));
  }
  MetricsReport r;
  r.samples = truth.size();
  r.main_accuracy = main_accuracy(truth, processed);
  r.main_f1 = micro_prf(truth, processed, kMainRange).f1;
  r.overall = micro_prf(truth, processed, kAllRange);
  r.reason = micro_prf(truth, processed, kReasonRange);
  r.avg_predicted_tags = avg_tag_count(processed, kReasonRange);
  r.avg_true_tags = avg_tag_count(truth, kReasonRange);
  r.overall_raw = micro_prf(truth, raw, kAllRange);
  r.reason_raw = micro_prf(truth, raw, kReasonRange);
  r.provenance.threshold = threshold;
  return r;
}

nlohmann::ordered_json report_to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["Main Decision Accuracy (Argmax)"] = r.main_accuracy;
  j["Main Decision F1 (Argmax)"] = r.main_f1;
  j["F1-micro (Overall)"] = r.overall.f1;
  j["Precision-micro (Overall)"] = r.overall.precision;
  j["Recall-micro (Overall)"] = r.overall.recall;
  j["F1-micro (Reason Tags Only, Processed)"] = r.reason.f1;
  j["Avg. Predicted Reason Tags"] = r.avg_predicted_tags;
  j["Avg. True Reason Tags"] = r.avg_true_tags;

  nlohmann::ordered_json detail;
  detail["samples"] = r.samples;
  detail["overall_processed"] = prf_json(r.overall);
  detail["reason_processed"] = prf_json(r.reason);
  detail["overall_raw_threshold"] = prf_json(r.overall_raw);
  detail["reason_raw_threshold"] = prf_json(r.reason_raw);
  j["detail"] = detail;

  nlohmann::ordered_json p;
  p["source"] = r.provenance.source;
  p["dataset_sha256"] = r.provenance.dataset_sha256;
  p[r.provenance.source == "logits" ? "logits_sha256" : "model_sha256"] = r.provenance.model_sha256;
  p["threshold"] = r.provenance.threshold;
  j["provenance"] = p;
  return j;
}

}  // namespace uavsem
