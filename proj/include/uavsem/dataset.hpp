#pragma once

// JSON-lines dataset files, stratified splitting and the logits interchange
// file exchanged with external classifiers.
//
// Dataset file: line 1 is {"header": {...}}, then one record per line:
//   {"id":0,"scenario":{...},"text":"...","labels":[41 x 0/1],
//    "decision":"...","tags":["RT_...", ...]}
// Logits file: one {"id":N,"logits":[41 reals]} per line, canonical label order.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uavsem/generator.hpp"
#include "uavsem/inference.hpp"
#include "uavsem/label_schema.hpp"
#include "uavsem/scenario.hpp"

namespace uavsem {

inline constexpr std::string_view kDatasetFormat = "uavsem-dataset";
inline constexpr int kDatasetFormatVersion = 1;

struct SplitInfo {
  std::string part;  // "train" or "test"
  double ratio = 0.8;
  std::uint64_t seed = 0;

  friend bool operator==(const SplitInfo&, const SplitInfo&) = default;
};

struct DatasetHeader {
  GenConfig config;
  std::string oracle_version{kOracleVersion};
  std::string sampling = "uniform";
  std::optional<SplitInfo> split;

  friend bool operator==(const DatasetHeader&, const DatasetHeader&) = default;
};

struct DatasetRecord {
  std::uint64_t id = 0;
  Scenario scenario;
  std::string text;
  LabelVector labels{};
  std::string decision;
  std::vector<std::string> tags;  // active reason-tag names in canonical order

  Decision decision_class() const { return decision_from_name(decision); }
  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

struct Dataset {
  DatasetHeader header;
  std::vector<DatasetRecord> records;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

DatasetRecord make_record(std::uint64_t id, const LabeledScenario& sample);

// Generates a dataset for `config` with ids 0..count-1.
Dataset build_dataset(const GenConfig& config, unsigned threads = 1);

std::string serialize_dataset(const Dataset& ds);
// Errc::parse "line N: ..." for malformed lines; Errc::integrity naming the
// record id when text, labels, decision or tags disagree with the oracle.
Dataset parse_dataset(std::string_view content);

void write_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

// Per-class partition: each class contributes round(n_c * ratio) records to
// train, the rest to test, membership drawn by a seeded shuffle. Both parts
// keep the input order. Errc::config for ratio outside (0, 1),
// Errc::stratification when a present class has fewer than two records.
std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> split_stratified(
    const std::vector<DatasetRecord>& records, double ratio, std::uint64_t seed);

// Both halves of a dataset, with split metadata in their headers.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double ratio, std::uint64_t seed);

struct LogitsRecord {
  std::uint64_t id = 0;
  LogitVector logits{};
};

std::string serialize_logits(const std::vector<LogitsRecord>& records);
void write_logits(const std::vector<LogitsRecord>& records, const std::filesystem::path& path);

// Aligns a logits file to `records` (result follows dataset order).
// Errors, each distinct: Errc::logits_unknown_id, Errc::logits_duplicate_id,
// Errc::logits_count (not 41 values), Errc::logits_missing_id; also
// Errc::parse for malformed lines and Errc::non_finite.
std::vector<LogitsRecord> parse_logits(std::string_view content, const std::vector<DatasetRecord>& records);
std::vector<LogitsRecord> read_logits(const std::filesystem::path& path, const std::vector<DatasetRecord>& records);

std::vector<LabeledScenario> to_labeled(const std::vector<DatasetRecord>& records);

}  // namespace uavsem
