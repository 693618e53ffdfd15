#include "uavsem/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "uavsem/config_json.hpp"
#include "uavsem/errors.hpp"
#include "uavsem/io.hpp"
#include "uavsem/rule_oracle.hpp"
#include "uavsem/text_codec.hpp"

namespace uavsem {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> active_tags(const LabelVector& labels) {
  const auto& schema = canonical_schema();
  std::vector<std::string> tags;
  for (std::size_t i = kReasonRange.first; i < kLabelCount; ++i) {
    if (labels[i]) tags.emplace_back(schema.name(i));
  }
  return tags;
}

std::string main_name(const LabelVector& labels) {
  for (std::size_t i = 0; i < kMainCount; ++i) {
    if (labels[i]) return std::string(canonical_schema().name(i));
  }
  return {};
}

// Splits on '\n', dropping one trailing empty line and any '\r'.
std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    auto line = content.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

json parse_line(std::string_view line, std::size_t number) {
  try {
    return json::parse(line);
  } catch (const json::out_of_range& e) {
    // JSON has no inf/nan literals; an overflowing number is how they arrive
    throw Error(Errc::non_finite, fmt::format("line {}: {}", number, e.what()));
  } catch (const json::exception& e) {
    throw Error(Errc::parse, fmt::format("line {}: {}", number, e.what()));
  }
}

ordered_json header_to_json(const DatasetHeader& h, std::size_t records) {
  ordered_json j;
  j["format"] = kDatasetFormat;
  j["version"] = kDatasetFormatVersion;
  j["records"] = records;
  j["oracle_version"] = h.oracle_version;
  j["sampling"] = h.sampling;
  j["config"] = gen_config_to_json(h.config);
  if (h.split) {
    ordered_json s;
    s["part"] = h.split->part;
    s["ratio"] = h.split->ratio;
    s["seed"] = h.split->seed;
    j["split"] = s;
  }
  return ordered_json{{"header", j}};
}

DatasetHeader header_from_json(const json& line, std::size_t& records) {
  if (!line.is_object() || !line.contains("header")) throw Error(Errc::parse, "line 1: missing dataset header");
  const auto& j = line.at("header");
  try {
    if (j.at("format").get<std::string>() != kDatasetFormat) throw Error(Errc::parse, "line 1: not a dataset file");
    if (j.at("version").get<int>() != kDatasetFormatVersion) {
      throw Error(Errc::parse, fmt::format("line 1: unsupported dataset version {}", j.at("version").dump()));
    }
    DatasetHeader h;
    records = j.at("records").get<std::size_t>();
    h.oracle_version = j.at("oracle_version").get<std::string>();
    h.sampling = j.at("sampling").get<std::string>();
    h.config = gen_config_from_json(j.at("config"));
    if (j.contains("split")) {
      const auto& s = j.at("split");
      h.split = SplitInfo{s.at("part").get<std::string>(), s.at("ratio").get<double>(), s.at("seed").get<std::uint64_t>()};
    }
    if (h.oracle_version != kOracleVersion) {
      throw Error(Errc::integrity, fmt::format("dataset labelled by '{}', this build implements '{}'", h.oracle_version,
                                               kOracleVersion));
    }
    return h;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, fmt::format("line 1: {}", e.what()));
  }
}

ordered_json record_to_json(const DatasetRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["scenario"] = scenario_to_json(r.scenario);
  j["text"] = r.text;
  j["labels"] = r.labels;
  j["decision"] = r.decision;
  j["tags"] = r.tags;
  return j;
}

DatasetRecord record_from_json(const json& j, std::size_t number) {
  DatasetRecord r;
  try {
    if (!j.is_object()) throw Error(Errc::parse, "expected a JSON object");
    if (!j.at("id").is_number_unsigned()) throw Error(Errc::parse, "'id' must be a non-negative integer");
    r.id = j.at("id").get<std::uint64_t>();
    r.scenario = scenario_from_json(j.at("scenario"));
    r.text = j.at("text").get<std::string>();
    const auto& labels = j.at("labels");
    if (!labels.is_array() || labels.size() != kLabelCount) {
      throw Error(Errc::parse, fmt::format("'labels' must hold {} flags", kLabelCount));
    }
    for (std::size_t i = 0; i < kLabelCount; ++i) {
      if (!labels[i].is_number_unsigned() || labels[i].get<unsigned>() > 1) {
        throw Error(Errc::parse, fmt::format("labels[{}] is not 0 or 1", i));
      }
      r.labels[i] = labels[i].get<std::uint8_t>();
    }
    r.decision = j.at("decision").get<std::string>();
    r.tags = j.at("tags").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, fmt::format("line {}: {}", number, e.what()));
  } catch (const Error& e) {
    if (e.code() == Errc::range) throw Error(Errc::integrity, fmt::format("line {}: {}", number, e.what()));
    throw Error(Errc::parse, fmt::format("line {}: {}", number, e.what()));
  }
  return r;
}

void check_record(const DatasetRecord& r, const BandThresholds& thresholds) {
  if (r.text != render(r.scenario)) throw Error(Errc::integrity, fmt::format("record {}: text does not match scenario", r.id));
  if (r.labels != label(r.scenario, thresholds)) {
    throw Error(Errc::integrity, fmt::format("record {}: labels disagree with the oracle", r.id));
  }
  if (r.decision != main_name(r.labels)) {
    throw Error(Errc::integrity, fmt::format("record {}: decision '{}' does not match labels", r.id, r.decision));
  }
  if (r.tags != active_tags(r.labels)) throw Error(Errc::integrity, fmt::format("record {}: tags do not match labels", r.id));
}

}  // namespace

DatasetRecord make_record(std::uint64_t id, const LabeledScenario& sample) {
  DatasetRecord r;
  r.id = id;
  r.scenario = sample.scenario;
  r.text = render(sample.scenario);
  r.labels = sample.labels;
  r.decision = main_name(sample.labels);
  r.tags = active_tags(sample.labels);
  return r;
}

Dataset build_dataset(const GenConfig& config, unsigned threads) {
  Dataset ds;
  ds.header.config = config;
  const auto samples = generate_dataset(config, threads);
  ds.records.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) ds.records.push_back(make_record(i, samples[i]));
  return ds;
}

std::string serialize_dataset(const Dataset& ds) {
  std::string out = header_to_json(ds.header, ds.records.size()).dump();
  out += '\n';
  for (const auto& r : ds.records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

Dataset parse_dataset(std::string_view content) {
  const auto lines = split_lines(content);
  if (lines.empty()) throw Error(Errc::parse, "line 1: empty dataset file");
  Dataset ds;
  std::size_t declared = 0;
  ds.header = header_from_json(parse_line(lines[0], 1), declared);
  std::set<std::uint64_t> ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) throw Error(Errc::parse, fmt::format("line {}: empty line", i + 1));
    auto r = record_from_json(parse_line(lines[i], i + 1), i + 1);
    if (!ids.insert(r.id).second) throw Error(Errc::integrity, fmt::format("record {}: duplicate id", r.id));
    check_record(r, ds.header.config.thresholds);
    ds.records.push_back(std::move(r));
  }
  if (ds.records.size() != declared) {
    throw Error(Errc::integrity,
                fmt::format("header declares {} records, file holds {}", declared, ds.records.size()));
  }
  return ds;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
  write_text_file(path, serialize_dataset(ds));
}

Dataset read_dataset(const std::filesystem::path& path) { return parse_dataset(read_text_file(path)); }

std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> split_stratified(
    const std::vector<DatasetRecord>& records, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error(Errc::config, fmt::format("split ratio {} outside (0, 1)", ratio));
  std::array<std::vector<std::size_t>, kMainCount> by_class;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_class[static_cast<std::size_t>(records[i].decision_class())].push_back(i);
  }
  std::vector<bool> in_train(records.size(), false);
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < kMainCount; ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 2) {
      throw Error(Errc::stratification,
                  fmt::format("class {} has {} sample, cannot stratify", decision_name(static_cast<Decision>(c)),
                              members.size()));
    }
    std::shuffle(members.begin(), members.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(members.size()) * ratio));
    for (std::size_t k = 0; k < n_train; ++k) in_train[members[k]] = true;
  }
  std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> parts;
  for (std::size_t i = 0; i < records.size(); ++i) (in_train[i] ? parts.first : parts.second).push_back(records[i]);
  return parts;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double ratio, std::uint64_t seed) {
  auto [train, test] = split_stratified(ds.records, ratio, seed);
  Dataset a{ds.header, std::move(train)};
  Dataset b{ds.header, std::move(test)};
  a.header.split = SplitInfo{"train", ratio, seed};
  b.header.split = SplitInfo{"test", ratio, seed};
  return {std::move(a), std::move(b)};
}

std::string serialize_logits(const std::vector<LogitsRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["id"] = r.id;
    j["logits"] = r.logits;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_logits(const std::vector<LogitsRecord>& records, const std::filesystem::path& path) {
  write_text_file(path, serialize_logits(records));
}

std::vector<LogitsRecord> parse_logits(std::string_view content, const std::vector<DatasetRecord>& records) {
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (std::size_t i = 0; i < records.size(); ++i) slot.emplace(records[i].id, i);

  std::vector<std::optional<LogitVector>> aligned(records.size());
  const auto lines = split_lines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto number = n + 1;
    if (lines[n].empty()) throw Error(Errc::parse, fmt::format("line {}: empty line", number));
    const auto j = parse_line(lines[n], number);
    if (!j.is_object() || !j.contains("id") || !j.contains("logits")) {
      throw Error(Errc::parse, fmt::format("line {}: expected {{\"id\", \"logits\"}}", number));
    }
    if (!j.at("id").is_number_unsigned()) throw Error(Errc::parse, fmt::format("line {}: 'id' must be a non-negative integer", number));
    const auto id = j.at("id").get<std::uint64_t>();
    const auto& values = j.at("logits");
    if (!values.is_array()) throw Error(Errc::parse, fmt::format("line {}: 'logits' must be an array", number));
    if (values.size() != kLabelCount) {
      throw Error(Errc::logits_count,
                  fmt::format("line {}: id {} has {} logits, expected {}", number, id, values.size(), kLabelCount));
    }
    const auto it = slot.find(id);
    if (it == slot.end()) throw Error(Errc::logits_unknown_id, fmt::format("line {}: id {} is not in the dataset", number, id));
    if (aligned[it->second]) throw Error(Errc::logits_duplicate_id, fmt::format("line {}: id {} appears twice", number, id));
    LogitVector logits{};
    for (std::size_t k = 0; k < kLabelCount; ++k) {
      if (!values[k].is_number()) throw Error(Errc::parse, fmt::format("line {}: logits[{}] is not a number", number, k));
      logits[k] = values[k].get<double>();
      if (!std::isfinite(logits[k])) throw Error(Errc::non_finite, fmt::format("line {}: logits[{}] is not finite", number, k));
    }
    aligned[it->second] = logits;
  }

  std::vector<LogitsRecord> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!aligned[i]) throw Error(Errc::logits_missing_id, fmt::format("no logits for id {}", records[i].id));
    out.push_back({records[i].id, *aligned[i]});
  }
  return out;
}

std::vector<LogitsRecord> read_logits(const std::filesystem::path& path, const std::vector<DatasetRecord>& records) {
  return parse_logits(read_text_file(path), records);
}

std::vector<LabeledScenario> to_labeled(const std::vector<DatasetRecord>& records) {
  std::vector<LabeledScenario> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.scenario, r.labels});
  return out;
}

}  // namespace uavsem
