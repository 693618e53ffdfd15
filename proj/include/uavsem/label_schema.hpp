#pragma once

// Canonical 41-label universe shared by the oracle, the post-processor, the
// evaluator and any external classifier that exchanges logits with us.
//
// Layout (indices):
//   0..3    main decisions (exactly one active)
//   4..36   nine mutually exclusive reason-tag groups (exactly one per group)
//   37..40  independent reason tags (any subset)

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace uavsem {

inline constexpr std::size_t kLabelCount = 41;
inline constexpr std::size_t kMainCount = 4;
inline constexpr std::size_t kGroupCount = 9;
inline constexpr std::size_t kIndependentCount = 4;

using LabelVector = std::array<std::uint8_t, kLabelCount>;

enum class Decision : std::uint8_t {
  ExecuteHandoverOptimal = 0,
  RejectCurrentBetter = 1,
  RejectTargetWeak = 2,
  QuestionConflictingData = 3,
};

enum class Group : std::uint8_t {
  TargetRsrp = 0,
  CurrentRsrp,
  TargetCqi,
  CurrentCqi,
  Advantage,
  Speed,
  Buffer,
  Mission,
  NeighborRsrp,
};

enum class Independent : std::uint8_t {
  NeighborStronger = 0,
  ConflictingTarget,
  ConflictingCurrent,
  UnclearBenefit,
};

// Half-open [first, first + size).
struct IndexRange {
  std::size_t first = 0;
  std::size_t size = 0;

  constexpr std::size_t end() const noexcept { return first + size; }
  constexpr bool contains(std::size_t i) const noexcept { return i >= first && i < end(); }
  friend constexpr bool operator==(const IndexRange&, const IndexRange&) = default;
};

inline constexpr IndexRange kMainRange{0, kMainCount};
inline constexpr IndexRange kReasonRange{kMainCount, kLabelCount - kMainCount};
inline constexpr IndexRange kAllRange{0, kLabelCount};

// Per-group tag offset (0-based position inside the group range).
using GroupTags = std::array<std::uint8_t, kGroupCount>;
using IndependentSet = std::bitset<kIndependentCount>;

struct ValidationResult {
  bool valid = true;
  std::string violation;  // first violated constraint, empty when valid

  explicit operator bool() const noexcept { return valid; }
};

class LabelSchema {
 public:
  LabelSchema();

  const std::array<std::string_view, kLabelCount>& labels() const noexcept { return labels_; }
  std::string_view name(std::size_t index) const;
  // Throws Errc::not_found for names outside the schema.
  std::size_t index_of(std::string_view name) const;

  std::size_t main_count() const noexcept { return kMainCount; }
  IndexRange mains() const noexcept { return kMainRange; }
  const std::array<IndexRange, kGroupCount>& groups() const noexcept { return groups_; }
  IndexRange group(Group g) const noexcept { return groups_[static_cast<std::size_t>(g)]; }
  IndexRange independents() const noexcept { return independents_; }

  std::size_t decision_index(Decision d) const noexcept { return static_cast<std::size_t>(d); }
  std::size_t group_index(Group g, std::uint8_t offset) const noexcept { return group(g).first + offset; }
  std::size_t independent_index(Independent t) const noexcept {
    return independents_.first + static_cast<std::size_t>(t);
  }

  // Accepts iff exactly one main flag and exactly one flag per group are set.
  // Throws Errc::length when the vector does not have 41 entries.
  ValidationResult validate(std::span<const std::uint8_t> vector) const;

 private:
  std::array<std::string_view, kLabelCount> labels_;
  std::array<IndexRange, kGroupCount> groups_;
  IndexRange independents_;
};

// Immutable process-wide instance.
const LabelSchema& canonical_schema();

std::string_view group_name(Group g) noexcept;
std::string_view decision_name(Decision d) noexcept;
Decision decision_from_name(std::string_view name);

// Multi-hot vector for a decision plus group tags plus independents.
LabelVector make_label_vector(Decision decision, const GroupTags& groups, const IndependentSet& independents);

// Human wording of a group tag: the label name with the group's RT_ prefix and
// suffix scaffolding stripped, camel case split, lowercased
// (RT_Target_VeryPoor_Signal_RSRP -> "very poor").
std::string tag_words(Group g, std::uint8_t offset);

}  // namespace uavsem
