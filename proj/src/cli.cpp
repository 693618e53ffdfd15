#include "uavsem/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "uavsem/config_json.hpp"
#include "uavsem/dataset.hpp"
#include "uavsem/edge_learner.hpp"
#include "uavsem/errors.hpp"
#include "uavsem/io.hpp"
#include "uavsem/report.hpp"
#include "uavsem/rule_oracle.hpp"
#include "uavsem/semantic_message.hpp"
#include "uavsem/text_codec.hpp"

namespace uavsem {
namespace {

using nlohmann::ordered_json;

struct Options {
  unsigned threads = 0;

  struct {
    std::uint64_t seed = GenConfig{}.seed;
    std::size_t count = GenConfig{}.count;
    std::string config;
    std::string out;
  } gen;

  struct {
    double ratio = 0.8;
    std::uint64_t seed = 0;
    std::string in, train_out, test_out;
  } split;

  struct {
    std::string train, test, model_out, log, logits_out;
    TrainConfig config;
  } train;

  struct {
    std::string model, test, report;
    double threshold = kDefaultThreshold;
  } eval;

  struct {
    std::string logits, test, report;
    double threshold = kDefaultThreshold;
  } import;

  struct {
    std::string text_file, json_file, model, out;
    double threshold = kDefaultThreshold;
  } assess;

  struct {
    std::string hex, in;
  } decode;

  struct {
    bool overhead = false;
    std::string in, model;
    double threshold = kDefaultThreshold;
  } report;

  struct {
    std::string out;
  } schema;
};

unsigned thread_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit(std::ostream& out, const ordered_json& j, const std::string& path) {
  const auto text = j.dump(2) + "\n";
  if (!path.empty()) write_text_file(path, text);
  out << text;
}

std::vector<std::string> tag_names(const LabelVector& v) {
  std::vector<std::string> tags;
  for (std::size_t i = kReasonRange.first; i < kLabelCount; ++i) {
    if (v[i]) tags.emplace_back(canonical_schema().name(i));
  }
  return tags;
}

Scenario load_scenario(const std::string& text_file, const std::string& json_file) {
  if (text_file.empty() == json_file.empty()) throw Error(Errc::usage, "exactly one of --text-file or --json is required");
  if (!text_file.empty()) return parse(read_text_file(text_file));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(json_file));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, fmt::format("{}: {}", json_file, e.what()));
  }
  return scenario_from_json(j);
}

Assessment assess_scenario(const Scenario& s, const std::string& model_path, double threshold) {
  if (model_path.empty()) return from_label_vector(label(s));
  return decide(predict_logits(read_model(model_path), s), threshold);
}

ordered_json assessment_json(const Assessment& a) {
  ordered_json j;
  j["decision"] = decision_name(a.decision);
  j["tags"] = tag_names(as_label_vector(a));
  return j;
}

// --- subcommands ---------------------------------------------------------

int cmd_gen(const Options& o, std::ostream& out) {
  GenConfig cfg;
  if (!o.gen.config.empty()) {
    try {
      cfg = gen_config_from_json(nlohmann::json::parse(read_text_file(o.gen.config)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::config, fmt::format("{}: {}", o.gen.config, e.what()));
    }
  }
  cfg.seed = o.gen.seed;
  cfg.count = o.gen.count;
  cfg.validate();
  const auto ds = build_dataset(cfg, thread_count(o));
  const auto content = serialize_dataset(ds);
  write_text_file(o.gen.out, content);
  out << fmt::format("wrote {} records to {} (sha256 {})\n", ds.records.size(), o.gen.out, sha256_hex(content));
  return exit_code::ok;
}

int cmd_split(const Options& o, std::ostream& out) {
  const auto ds = read_dataset(o.split.in);
  const auto [train, test] = split_dataset(ds, o.split.ratio, o.split.seed);
  write_dataset(train, o.split.train_out);
  write_dataset(test, o.split.test_out);
  out << fmt::format("train {} -> {}\ntest {} -> {}\n", train.records.size(), o.split.train_out, test.records.size(),
                     o.split.test_out);
  return exit_code::ok;
}

std::vector<Scenario> scenarios_of(const std::vector<DatasetRecord>& records) {
  std::vector<Scenario> s;
  s.reserve(records.size());
  for (const auto& r : records) s.push_back(r.scenario);
  return s;
}

int cmd_train(const Options& o, std::ostream& out) {
  const auto train_ds = read_dataset(o.train.train);
  std::optional<Dataset> test_ds;
  if (!o.train.test.empty()) test_ds = read_dataset(o.train.test);
  if (!o.train.logits_out.empty() && !test_ds) throw Error(Errc::usage, "--logits-out needs --test");

  const auto train_set = to_labeled(train_ds.records);
  std::vector<LabeledScenario> val_set;
  if (test_ds) val_set = to_labeled(test_ds->records);

  std::ofstream log_file;
  std::ostream* log = nullptr;
  if (!o.train.log.empty()) {
    log_file.open(o.train.log, std::ios::binary | std::ios::trunc);
    if (!log_file) throw Error(Errc::io, fmt::format("cannot open '{}' for writing", o.train.log));
    log = &log_file;
  }
  const auto model = train(train_set, o.train.config, log, val_set);
  const auto bytes = serialize_model(model);
  write_binary_file(o.train.model_out, bytes);

  ordered_json summary;
  summary["model"] = o.train.model_out;
  summary["model_sha256"] = sha256_hex(bytes);
  summary["parameters"] = model.parameter_count();
  summary["epochs"] = o.train.config.epochs;
  if (test_ds) {
    const auto logits = predict_logits(model, scenarios_of(test_ds->records), thread_count(o));
    if (!o.train.logits_out.empty()) {
      std::vector<LogitsRecord> recs;
      for (std::size_t i = 0; i < logits.size(); ++i) recs.push_back({test_ds->records[i].id, logits[i]});
      write_logits(recs, o.train.logits_out);
    }
    LabelMatrix truth;
    for (const auto& r : test_ds->records) truth.push_back(r.labels);
    summary["test_main_accuracy"] = compute_report(truth, logits).main_accuracy;
  }
  out << summary.dump(2) << "\n";
  return exit_code::ok;
}

int finish_report(MetricsReport report, const std::string& dataset_text, std::ostream& out, const std::string& path) {
  report.provenance.dataset_sha256 = sha256_hex(dataset_text);
  emit(out, report_to_json(report), path);
  return exit_code::ok;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto text = read_text_file(o.eval.test);
  const auto ds = parse_dataset(text);
  const auto model_bytes = read_binary_file(o.eval.model);
  const auto model = deserialize_model(model_bytes);
  const auto logits = predict_logits(model, scenarios_of(ds.records), thread_count(o));
  LabelMatrix truth;
  for (const auto& r : ds.records) truth.push_back(r.labels);
  auto report = compute_report(truth, logits, o.eval.threshold);
  report.provenance.source = "model";
  report.provenance.model_sha256 = sha256_hex(model_bytes);
  return finish_report(std::move(report), text, out, o.eval.report);
}

int cmd_import(const Options& o, std::ostream& out) {
  const auto text = read_text_file(o.import.test);
  const auto ds = parse_dataset(text);
  const auto logits_text = read_text_file(o.import.logits);
  const auto records = parse_logits(logits_text, ds.records);
  std::vector<LogitVector> logits;
  LabelMatrix truth;
  for (std::size_t i = 0; i < records.size(); ++i) {
    logits.push_back(records[i].logits);
    truth.push_back(ds.records[i].labels);
  }
  auto report = compute_report(truth, logits, o.import.threshold);
  report.provenance.source = "logits";
  report.provenance.model_sha256 = sha256_hex(logits_text);
  return finish_report(std::move(report), text, out, o.import.report);
}

int cmd_assess(const Options& o, std::ostream& out) {
  const auto s = load_scenario(o.assess.text_file, o.assess.json_file);
  const auto a = assess_scenario(s, o.assess.model, o.assess.threshold);
  const auto wire = encode(a, s);
  const auto overhead = overhead_report(s, a);
  ordered_json j;
  j["source"] = o.assess.model.empty() ? "oracle" : "model";
  j["assessment"] = assessment_json(a);
  j["message"] = compose(a, s);
  j["wire_hex"] = to_hex(wire);
  j["text_bytes"] = overhead.text_bytes;
  j["message_bytes"] = overhead.message_bytes;
  j["wire_bytes"] = overhead.wire_bytes;
  out << j.dump(2) << "\n";
  return exit_code::ok;
}

int cmd_encode(const Options& o, std::ostream& out) {
  const auto s = load_scenario(o.assess.text_file, o.assess.json_file);
  const auto wire = encode(assess_scenario(s, o.assess.model, o.assess.threshold), s);
  if (!o.assess.out.empty()) write_binary_file(o.assess.out, wire);
  out << to_hex(wire) << "\n";
  return exit_code::ok;
}

int cmd_decode(const Options& o, std::ostream& out) {
  if (o.decode.hex.empty() == o.decode.in.empty()) throw Error(Errc::usage, "exactly one of --hex or --in is required");
  const auto bytes = o.decode.hex.empty() ? read_binary_file(o.decode.in) : from_hex(o.decode.hex);
  const auto frame = decode(bytes);
  ordered_json j;
  j["assessment"] = assessment_json(frame.assessment);
  const auto& d = frame.digest;
  ordered_json digest;
  digest["speed"] = d.speed;
  digest["buffer"] = d.buffer;
  digest["serving_id"] = d.serving_id;
  digest["target_id"] = d.target_id;
  digest["neighbor_id"] = d.neighbor_id;
  digest["serving_rsrp"] = d.serving_rsrp;
  digest["target_rsrp"] = d.target_rsrp;
  j["digest"] = digest;
  out << j.dump(2) << "\n";
  return exit_code::ok;
}

int cmd_report(const Options& o, std::ostream& out) {
  if (!o.report.overhead) throw Error(Errc::usage, "report: only --overhead is available");
  const auto ds = read_dataset(o.report.in);
  if (ds.records.empty()) throw Error(Errc::empty_input, "dataset has no records");
  std::optional<MlpModel> model;
  if (!o.report.model.empty()) model = read_model(o.report.model);

  double text_sum = 0, message_sum = 0, ratio_sum = 0, message_ratio_sum = 0;
  double ratio_min = std::numeric_limits<double>::infinity();
  std::size_t wire_bytes = 0;
  for (const auto& r : ds.records) {
    const auto a = model ? decide(predict_logits(*model, r.scenario), o.report.threshold) : from_label_vector(r.labels);
    const auto rep = overhead_report(r.scenario, a);
    text_sum += static_cast<double>(rep.text_bytes);
    message_sum += static_cast<double>(rep.message_bytes);
    ratio_sum += rep.text_to_wire;
    message_ratio_sum += rep.message_to_wire;
    ratio_min = std::min(ratio_min, rep.text_to_wire);
    wire_bytes = rep.wire_bytes;
  }
  const auto n = static_cast<double>(ds.records.size());
  ordered_json j;
  j["samples"] = ds.records.size();
  j["source"] = model ? "model" : "oracle";
  j["wire_bytes"] = wire_bytes;
  j["mean_text_bytes"] = text_sum / n;
  j["mean_message_bytes"] = message_sum / n;
  j["mean_text_to_wire"] = ratio_sum / n;
  j["min_text_to_wire"] = ratio_min;
  j["mean_message_to_wire"] = message_ratio_sum / n;
  out << j.dump(2) << "\n";
  return exit_code::ok;
}

int cmd_schema(const Options& o, std::ostream& out) {
  emit(out, schema_to_json(), o.schema.out);
  return exit_code::ok;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"UAV handover assessment toolkit", "uavsem"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* gen = app.add_subcommand("gen", "Generate a labelled scenario dataset");
  gen->add_option("--seed", o.gen.seed, "Generator seed");
  gen->add_option("--count", o.gen.count, "Number of scenarios");
  gen->add_option("--config", o.gen.config, "JSON generator config (seed/count flags take precedence)");
  gen->add_option("--out", o.gen.out, "Output dataset file")->required();

  auto* split = app.add_subcommand("split", "Stratified train/test split");
  split->add_option("--ratio", o.split.ratio, "Training fraction");
  split->add_option("--seed", o.split.seed, "Shuffle seed");
  split->add_option("--in", o.split.in)->required();
  split->add_option("--train-out", o.split.train_out)->required();
  split->add_option("--test-out", o.split.test_out)->required();

  auto* tr = app.add_subcommand("train", "Train the edge classifier");
  tr->add_option("--train", o.train.train, "Training dataset")->required();
  tr->add_option("--test", o.train.test, "Held-out dataset for per-epoch metrics");
  tr->add_option("--model-out", o.train.model_out)->required();
  tr->add_option("--log", o.train.log, "Per-epoch JSON-lines log");
  tr->add_option("--logits-out", o.train.logits_out, "Write held-out logits (JSON-lines)");
  tr->add_option("--epochs", o.train.config.epochs);
  tr->add_option("--batch-size", o.train.config.batch_size);
  tr->add_option("--lr", o.train.config.learning_rate);
  tr->add_option("--momentum", o.train.config.momentum);
  tr->add_option("--hidden", o.train.config.hidden);
  tr->add_option("--depth", o.train.config.depth, "Hidden layers");
  tr->add_option("--seed", o.train.config.seed);

  auto* ev = app.add_subcommand("eval", "Evaluate a model on a dataset");
  ev->add_option("--model", o.eval.model)->required();
  ev->add_option("--test", o.eval.test)->required();
  ev->add_option("--report", o.eval.report, "Also write the report here");
  ev->add_option("--threshold", o.eval.threshold);

  auto* imp = app.add_subcommand("import-logits", "Evaluate externally produced logits");
  imp->add_option("--logits", o.import.logits)->required();
  imp->add_option("--test", o.import.test)->required();
  imp->add_option("--report", o.import.report);
  imp->add_option("--threshold", o.import.threshold);

  auto add_scenario_input = [&o](CLI::App* cmd) {
    cmd->add_option("--text-file", o.assess.text_file, "Scenario in text form");
    cmd->add_option("--json", o.assess.json_file, "Scenario as JSON");
    cmd->add_option("--model", o.assess.model, "Use a trained model instead of the rule oracle");
    cmd->add_option("--threshold", o.assess.threshold);
  };
  auto* as = app.add_subcommand("assess", "Assess one scenario");
  add_scenario_input(as);
  auto* enc = app.add_subcommand("encode", "Encode one scenario's assessment as a wire frame");
  add_scenario_input(enc);
  enc->add_option("--out", o.assess.out, "Write the binary frame here");

  auto* dec = app.add_subcommand("decode", "Decode a wire frame");
  dec->add_option("--hex", o.decode.hex);
  dec->add_option("--in", o.decode.in, "Binary frame file");

  auto* rep = app.add_subcommand("report", "Dataset-level reports");
  rep->add_flag("--overhead", o.report.overhead, "Text vs wire size statistics");
  rep->add_option("--in", o.report.in)->required();
  rep->add_option("--model", o.report.model);
  rep->add_option("--threshold", o.report.threshold);

  auto* sch = app.add_subcommand("schema", "Print the label schema as JSON");
  sch->add_option("--out", o.schema.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (split->parsed()) return cmd_split(o, out);
    if (tr->parsed()) return cmd_train(o, out);
    if (ev->parsed()) return cmd_eval(o, out);
    if (imp->parsed()) return cmd_import(o, out);
    if (as->parsed()) return cmd_assess(o, out);
    if (enc->parsed()) return cmd_encode(o, out);
    if (dec->parsed()) return cmd_decode(o, out);
    if (rep->parsed()) return cmd_report(o, out);
    if (sch->parsed()) return cmd_schema(o, out);
    err << "error: no subcommand\n";
    return exit_code::usage;
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace uavsem
