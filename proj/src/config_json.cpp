#include "uavsem/config_json.hpp"

#include <set>
#include <string>

#include <fmt/format.h>

#include "uavsem/errors.hpp"

namespace uavsem {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& j, const std::set<std::string>& known, const char* where) {
  if (!j.is_object()) throw Error(Errc::config, fmt::format("{}: expected a JSON object", where));
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(Errc::config, fmt::format("{}: unknown key '{}'", where, key));
  }
}

template <typename T>
void read_opt(const json& j, const char* key, T& out, const char* where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::config, fmt::format("{}.{}: {}", where, key, e.what()));
  }
}

template <typename T>
ordered_json bounds_json(const Bounds<T>& b) {
  return ordered_json::array({b.min, b.max});
}

template <typename T>
void read_bounds(const json& j, const char* key, Bounds<T>& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) throw Error(Errc::config, fmt::format("ranges.{}: expected [min, max]", key));
  try {
    out.min = v[0].get<T>();
    out.max = v[1].get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::config, fmt::format("ranges.{}: {}", key, e.what()));
  }
}

}  // namespace

ordered_json thresholds_to_json(const BandThresholds& t) {
  ordered_json j;
  j["rsrp_excellent_min"] = t.rsrp_excellent_min;
  j["rsrp_good_min"] = t.rsrp_good_min;
  j["rsrp_mediocre_min"] = t.rsrp_mediocre_min;
  j["rsrp_poor_min"] = t.rsrp_poor_min;
  j["cqi_high_min"] = t.cqi_high_min;
  j["cqi_medium_min"] = t.cqi_medium_min;
  j["advantage_margin_db"] = t.advantage_margin_db;
  j["speed_high_min"] = t.speed_high_min;
  j["speed_medium_min"] = t.speed_medium_min;
  j["buffer_high_min"] = t.buffer_high_min;
  j["buffer_sufficient_min"] = t.buffer_sufficient_min;
  j["weak_target_rsrp_below"] = t.weak_target_rsrp_below;
  j["weak_target_cqi_max"] = t.weak_target_cqi_max;
  j["neighbor_stronger_margin_db"] = t.neighbor_stronger_margin_db;
  return j;
}

BandThresholds thresholds_from_json(const json& j) {
  static const std::set<std::string> known = {
      "rsrp_excellent_min", "rsrp_good_min",        "rsrp_mediocre_min",     "rsrp_poor_min",
      "cqi_high_min",       "cqi_medium_min",       "advantage_margin_db",   "speed_high_min",
      "speed_medium_min",   "buffer_high_min",      "buffer_sufficient_min", "weak_target_rsrp_below",
      "weak_target_cqi_max", "neighbor_stronger_margin_db"};
  reject_unknown(j, known, "thresholds");
  BandThresholds t;
  const char* w = "thresholds";
  read_opt(j, "rsrp_excellent_min", t.rsrp_excellent_min, w);
  read_opt(j, "rsrp_good_min", t.rsrp_good_min, w);
  read_opt(j, "rsrp_mediocre_min", t.rsrp_mediocre_min, w);
  read_opt(j, "rsrp_poor_min", t.rsrp_poor_min, w);
  read_opt(j, "cqi_high_min", t.cqi_high_min, w);
  read_opt(j, "cqi_medium_min", t.cqi_medium_min, w);
  read_opt(j, "advantage_margin_db", t.advantage_margin_db, w);
  read_opt(j, "speed_high_min", t.speed_high_min, w);
  read_opt(j, "speed_medium_min", t.speed_medium_min, w);
  read_opt(j, "buffer_high_min", t.buffer_high_min, w);
  read_opt(j, "buffer_sufficient_min", t.buffer_sufficient_min, w);
  read_opt(j, "weak_target_rsrp_below", t.weak_target_rsrp_below, w);
  read_opt(j, "weak_target_cqi_max", t.weak_target_cqi_max, w);
  read_opt(j, "neighbor_stronger_margin_db", t.neighbor_stronger_margin_db, w);
  t.validate();
  return t;
}

ordered_json gen_config_to_json(const GenConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["count"] = c.count;
  j["class_mix"] = c.class_mix;
  ordered_json r;
  r["rsrp"] = bounds_json(c.ranges.rsrp);
  r["rsrq"] = bounds_json(c.ranges.rsrq);
  r["cqi"] = bounds_json(c.ranges.cqi);
  r["speed"] = bounds_json(c.ranges.speed);
  r["buffer"] = bounds_json(c.ranges.buffer);
  r["bs_id"] = bounds_json(c.ranges.bs_id);
  j["ranges"] = r;
  j["thresholds"] = thresholds_to_json(c.thresholds);
  return j;
}

GenConfig gen_config_from_json(const json& j) {
  reject_unknown(j, {"seed", "count", "class_mix", "ranges", "thresholds"}, "config");
  GenConfig c;
  read_opt(j, "seed", c.seed, "config");
  read_opt(j, "count", c.count, "config");
  if (j.contains("class_mix") && (!j.at("class_mix").is_array() || j.at("class_mix").size() != kMainCount)) {
    throw Error(Errc::config, "config.class_mix: expected an array of four weights");
  }
  read_opt(j, "class_mix", c.class_mix, "config");
  if (j.contains("ranges")) {
    const auto& r = j.at("ranges");
    reject_unknown(r, {"rsrp", "rsrq", "cqi", "speed", "buffer", "bs_id"}, "ranges");
    read_bounds(r, "rsrp", c.ranges.rsrp);
    read_bounds(r, "rsrq", c.ranges.rsrq);
    read_bounds(r, "cqi", c.ranges.cqi);
    read_bounds(r, "speed", c.ranges.speed);
    read_bounds(r, "buffer", c.ranges.buffer);
    read_bounds(r, "bs_id", c.ranges.bs_id);
  }
  if (j.contains("thresholds")) c.thresholds = thresholds_from_json(j.at("thresholds"));
  c.validate();
  return c;
}

namespace {

ordered_json bs_to_json(const BsMeasurement& bs) {
  ordered_json j;
  j["bs_id"] = bs.bs_id;
  j["rsrp"] = bs.rsrp;
  j["rsrq"] = bs.rsrq;
  j["cqi"] = bs.cqi;
  return j;
}

int get_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw Error(Errc::parse, fmt::format("scenario: '{}' must be an integer", key));
  return v.get<int>();
}

double get_real(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(Errc::parse, fmt::format("scenario: '{}' must be a number", key));
  return v.get<double>();
}

BsMeasurement bs_from_json(const json& j) {
  BsMeasurement bs;
  bs.bs_id = get_int(j, "bs_id");
  bs.rsrp = get_real(j, "rsrp");
  bs.rsrq = get_real(j, "rsrq");
  bs.cqi = get_int(j, "cqi");
  return bs;
}

}  // namespace

ordered_json scenario_to_json(const Scenario& s) {
  ordered_json j;
  j["speed"] = s.speed;
  j["buffer"] = s.buffer;
  j["mission"] = mission_key(s.mission);
  j["serving"] = bs_to_json(s.serving);
  j["target"] = bs_to_json(s.target);
  j["neighbor"] = bs_to_json(s.neighbor);
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  try {
    s.speed = get_int(j, "speed");
    s.buffer = get_int(j, "buffer");
    s.mission = mission_from_string(j.at("mission").get<std::string>());
    s.serving = bs_from_json(j.at("serving"));
    s.target = bs_from_json(j.at("target"));
    s.neighbor = bs_from_json(j.at("neighbor"));
  } catch (const json::exception& e) {
    throw Error(Errc::parse, fmt::format("scenario: {}", e.what()));
  }
  check_scenario(s);
  return s;
}

ordered_json schema_to_json() {
  const auto& schema = canonical_schema();
  auto range = [](IndexRange r) { return ordered_json{{"first", r.first}, {"size", r.size}}; };
  ordered_json j;
  j["oracle_version"] = kOracleVersion;
  j["label_count"] = kLabelCount;
  j["labels"] = schema.labels();
  j["main"] = range(schema.mains());
  ordered_json groups = ordered_json::array();
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    auto entry = range(schema.groups()[g]);
    entry["name"] = group_name(static_cast<Group>(g));
    groups.push_back(entry);
  }
  j["groups"] = groups;
  j["independent"] = range(schema.independents());
  return j;
}

}  // namespace uavsem
