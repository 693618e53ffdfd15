#include "uavsem/label_schema.hpp"

#include <algorithm>
#include <cctype>

#include "uavsem/errors.hpp"

namespace uavsem {
namespace {

constexpr std::array<std::string_view, kLabelCount> kNames = {
    "Execute_Handover_Optimal",
    "Reject_Handover_Current_BS_Better",
    "Reject_Handover_Target_Signal_Too_Weak",
    "Question_Handover_Conflicting_Data",
    // target rsrp
    "RT_Target_Excellent_Signal_RSRP",
    "RT_Target_Good_Signal_RSRP",
    "RT_Target_Mediocre_Signal_RSRP",
    "RT_Target_Poor_Signal_RSRP",
    "RT_Target_VeryPoor_Signal_RSRP",
    // current rsrp
    "RT_Current_Excellent_Signal_RSRP",
    "RT_Current_Good_Signal_RSRP",
    "RT_Current_Mediocre_Signal_RSRP",
    "RT_Current_Poor_Signal_RSRP",
    "RT_Current_VeryPoor_Signal_RSRP",
    // target cqi
    "RT_Target_CQI_High",
    "RT_Target_CQI_Medium",
    "RT_Target_CQI_Low",
    // current cqi
    "RT_Current_CQI_High",
    "RT_Current_CQI_Medium",
    "RT_Current_CQI_Low",
    // advantage
    "RT_Clear_Target_Advantage_RSRP",
    "RT_Similar_RSRP",
    "RT_Clear_Current_Advantage_RSRP",
    // speed
    "RT_High_Speed_UAV",
    "RT_Medium_Speed_UAV",
    "RT_Low_Speed_UAV",
    // buffer
    "RT_Buffer_Critical_Low",
    "RT_Buffer_Sufficient",
    "RT_Buffer_High",
    // mission
    "RT_Mission_Low_Latency",
    "RT_Mission_Standard",
    "RT_Mission_High_Throughput",
    // neighbor rsrp
    "RT_Neighbor_Signal_Excellent",
    "RT_Neighbor_Signal_Good",
    "RT_Neighbor_Signal_Mediocre",
    "RT_Neighbor_Signal_Poor",
    "RT_Neighbor_Signal_VeryPoor",
    // independents
    "RT_Neighbor_Is_Stronger_Alternative",
    "RT_Conflicting_CQI_RSRP_Target",
    "RT_Conflicting_CQI_RSRP_Current",
    "RT_Unclear_Benefit_Due_To_Buffer_Mission",
};

constexpr std::array<std::size_t, kGroupCount> kGroupSizes = {5, 5, 3, 3, 3, 3, 3, 3, 5};

struct Scaffold {
  std::string_view prefix;
  std::string_view suffix;
};

constexpr std::array<Scaffold, kGroupCount> kScaffold = {{
    {"RT_Target_", "_Signal_RSRP"},
    {"RT_Current_", "_Signal_RSRP"},
    {"RT_Target_CQI_", ""},
    {"RT_Current_CQI_", ""},
    {"RT_", "_RSRP"},
    {"RT_", ""},
    {"RT_Buffer_", ""},
    {"RT_Mission_", ""},
    {"RT_Neighbor_Signal_", ""},
}};

}  // namespace

LabelSchema::LabelSchema() : labels_(kNames) {
  std::size_t next = kMainCount;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    groups_[g] = IndexRange{next, kGroupSizes[g]};
    next += kGroupSizes[g];
  }
  independents_ = IndexRange{next, kIndependentCount};
}

std::string_view LabelSchema::name(std::size_t index) const {
  if (index >= kLabelCount) {
    throw Error(Errc::not_found, "label index " + std::to_string(index) + " out of range");
  }
  return labels_[index];
}

std::size_t LabelSchema::index_of(std::string_view name) const {
  const auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) {
    throw Error(Errc::not_found, "unknown label '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

ValidationResult LabelSchema::validate(std::span<const std::uint8_t> vector) const {
  if (vector.size() != kLabelCount) {
    throw Error(Errc::length, "label vector has " + std::to_string(vector.size()) + " entries, expected 41");
  }
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (vector[i] > 1) {
      return {false, "flag " + std::to_string(i) + " is not binary"};
    }
  }
  const auto active = [&](IndexRange r) {
    return std::count(vector.begin() + static_cast<std::ptrdiff_t>(r.first),
                      vector.begin() + static_cast<std::ptrdiff_t>(r.end()), std::uint8_t{1});
  };
  if (const auto n = active(kMainRange); n != 1) {
    return {false, "main decision: " + std::to_string(n) + " flags set, expected exactly one"};
  }
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    if (const auto n = active(groups_[g]); n != 1) {
      return {false, "group " + std::string(group_name(static_cast<Group>(g))) + ": " + std::to_string(n) +
                         " flags set, expected exactly one"};
    }
  }
  return {};
}

const LabelSchema& canonical_schema() {
  static const LabelSchema schema;
  return schema;
}

std::string_view group_name(Group g) noexcept {
  switch (g) {
    case Group::TargetRsrp: return "TargetRSRP";
    case Group::CurrentRsrp: return "CurrentRSRP";
    case Group::TargetCqi: return "TargetCQI";
    case Group::CurrentCqi: return "CurrentCQI";
    case Group::Advantage: return "Advantage";
    case Group::Speed: return "Speed";
    case Group::Buffer: return "Buffer";
    case Group::Mission: return "Mission";
    case Group::NeighborRsrp: return "NeighborRSRP";
  }
  return "?";
}

std::string_view decision_name(Decision d) noexcept { return kNames[static_cast<std::size_t>(d)]; }

Decision decision_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kMainCount; ++i) {
    if (kNames[i] == name) return static_cast<Decision>(i);
  }
  throw Error(Errc::not_found, "unknown decision '" + std::string(name) + "'");
}

LabelVector make_label_vector(Decision decision, const GroupTags& groups, const IndependentSet& independents) {
  const auto& schema = canonical_schema();
  LabelVector v{};
  v[schema.decision_index(decision)] = 1;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    v[schema.groups()[g].first + groups[g]] = 1;
  }
  for (std::size_t t = 0; t < kIndependentCount; ++t) {
    if (independents.test(t)) v[schema.independents().first + t] = 1;
  }
  return v;
}

std::string tag_words(Group g, std::uint8_t offset) {
  const auto& schema = canonical_schema();
  const auto gi = static_cast<std::size_t>(g);
  std::string_view core = schema.name(schema.group_index(g, offset));
  const auto& sc = kScaffold[gi];
  if (core.starts_with(sc.prefix)) core.remove_prefix(sc.prefix.size());
  if (!sc.suffix.empty() && core.ends_with(sc.suffix)) core.remove_suffix(sc.suffix.size());

  std::string words;
  for (std::size_t i = 0; i < core.size(); ++i) {
    const char c = core[i];
    if (c == '_') {
      words += ' ';
      continue;
    }
    // VeryPoor -> very poor
    if (std::isupper(static_cast<unsigned char>(c)) && i > 0 && std::islower(static_cast<unsigned char>(core[i - 1]))) {
      words += ' ';
    }
    words += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return words;
}

}  // namespace uavsem
