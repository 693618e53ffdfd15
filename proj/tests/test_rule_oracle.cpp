#include <gtest/gtest.h>

#include <random>

#include "golden.hpp"
#include "uavsem/errors.hpp"
#include "uavsem/generator.hpp"
#include "uavsem/rule_oracle.hpp"
#include "uavsem/text_codec.hpp"

using namespace uavsem;

namespace {

// Straight transcription of the labeling rules, written against label names
// rather than the production enums.
LabelVector reference_label(const Scenario& s) {
  const auto& schema = canonical_schema();
  LabelVector v{};
  auto set = [&](const std::string& n) { v[schema.index_of(n)] = 1; };

  auto rsrp_word = [](double x) -> std::string {
    if (x >= -70) return "Excellent";
    if (x >= -85) return "Good";
    if (x >= -95) return "Mediocre";
    if (x >= -110) return "Poor";
    return "VeryPoor";
  };
  auto cqi_word = [](int c) -> std::string { return c >= 12 ? "High" : c >= 7 ? "Medium" : "Low"; };

  const auto t_rsrp = rsrp_word(s.target.rsrp), c_rsrp = rsrp_word(s.serving.rsrp);
  const auto t_cqi = cqi_word(s.target.cqi), c_cqi = cqi_word(s.serving.cqi);
  set("RT_Target_" + t_rsrp + "_Signal_RSRP");
  set("RT_Current_" + c_rsrp + "_Signal_RSRP");
  set("RT_Target_CQI_" + t_cqi);
  set("RT_Current_CQI_" + c_cqi);
  const double delta = s.target.rsrp - s.serving.rsrp;
  const bool similar = !(delta > 10) && !(delta < -10);
  set(delta > 10 ? "RT_Clear_Target_Advantage_RSRP" : delta < -10 ? "RT_Clear_Current_Advantage_RSRP" : "RT_Similar_RSRP");
  const bool high_speed = s.speed >= 25;
  set(high_speed ? "RT_High_Speed_UAV" : s.speed >= 15 ? "RT_Medium_Speed_UAV" : "RT_Low_Speed_UAV");
  const bool critical = s.buffer < 20;
  set(s.buffer >= 40 ? "RT_Buffer_High" : critical ? "RT_Buffer_Critical_Low" : "RT_Buffer_Sufficient");
  set(s.mission == Mission::LowLatency ? "RT_Mission_Low_Latency"
      : s.mission == Mission::Standard ? "RT_Mission_Standard"
                                       : "RT_Mission_High_Throughput");
  set("RT_Neighbor_Signal_" + rsrp_word(s.neighbor.rsrp));

  if (s.neighbor.rsrp >= s.serving.rsrp + 10 && s.neighbor.rsrp >= s.target.rsrp + 10) {
    set("RT_Neighbor_Is_Stronger_Alternative");
  }
  auto conflicting = [](const std::string& r, const std::string& c) {
    return ((r == "Excellent" || r == "Good") && c == "Low") || ((r == "Poor" || r == "VeryPoor") && c == "High");
  };
  const bool conf_t = conflicting(t_rsrp, t_cqi);
  if (conf_t) set("RT_Conflicting_CQI_RSRP_Target");
  if (conflicting(c_rsrp, c_cqi)) set("RT_Conflicting_CQI_RSRP_Current");
  const bool unclear = (critical && s.mission == Mission::HighThroughput) ||
                       (s.mission == Mission::LowLatency && high_speed && similar);
  if (unclear) set("RT_Unclear_Benefit_Due_To_Buffer_Mission");

  if (s.target.rsrp < -100 && s.target.cqi <= 4) set("Reject_Handover_Target_Signal_Too_Weak");
  else if (conf_t || unclear) set("Question_Handover_Conflicting_Data");
  else if (delta > 10) set("Execute_Handover_Optimal");
  else set("Reject_Handover_Current_BS_Better");
  return v;
}

Scenario base() {
  Scenario s;
  s.speed = 10;
  s.buffer = 50;
  s.mission = Mission::Standard;
  s.serving = {1, -80.0, -10.0, 9};
  s.target = {2, -80.0, -10.0, 9};
  s.neighbor = {3, -100.0, -10.0, 9};
  return s;
}

}  // namespace

TEST(RuleOracle, GoldenCases) {
  for (const auto& c : golden::cases()) {
    const auto s = parse(c.text);
    const auto v = label(s);
    EXPECT_EQ(canonical_schema().name(static_cast<std::size_t>(assess_with_rules(s).decision)), c.decision) << c.name;
    std::vector<std::string> tags;
    for (std::size_t i = 4; i < 41; ++i) {
      if (v[i]) tags.emplace_back(canonical_schema().name(i));
    }
    EXPECT_EQ(tags, c.tags) << c.name;
  }
}

TEST(RuleOracle, ExampleAIndependents) {
  const auto s = parse(golden::cases()[0].text);
  const auto r = assess_with_rules(s);
  EXPECT_EQ(r.independents.to_ulong(), 1ul << static_cast<int>(Independent::NeighborStronger));
  EXPECT_EQ(r.bands.buffer, BufferBand::High);
  EXPECT_NEAR(s.neighbor.rsrp - s.serving.rsrp, 38.29, 1e-9);
  EXPECT_NEAR(s.neighbor.rsrp - s.target.rsrp, 17.10, 1e-9);
}

TEST(RuleOracle, ExampleCNoIndependents) {
  const auto r = assess_with_rules(parse(golden::cases()[2].text));
  EXPECT_TRUE(r.independents.none());
  EXPECT_EQ(r.decision, Decision::RejectTargetWeak);
}

TEST(RuleOracle, ExampleDFailsWeakRuleOnCqi) {
  const auto r = assess_with_rules(parse(golden::cases()[3].text));
  EXPECT_EQ(r.bands.advantage, Advantage::ClearCurrent);
  EXPECT_EQ(r.decision, Decision::RejectCurrentBetter);
}

TEST(RuleOracle, RsrpBandEdges) {
  const BandThresholds t;
  EXPECT_EQ(rsrp_band(-70.0, t), RsrpBand::Excellent);
  EXPECT_EQ(rsrp_band(-70.01, t), RsrpBand::Good);
  EXPECT_EQ(rsrp_band(-85.0, t), RsrpBand::Good);
  EXPECT_EQ(rsrp_band(-85.01, t), RsrpBand::Mediocre);
  EXPECT_EQ(rsrp_band(-95.0, t), RsrpBand::Mediocre);
  EXPECT_EQ(rsrp_band(-109.81, t), RsrpBand::Poor);
  EXPECT_EQ(rsrp_band(-110.0, t), RsrpBand::Poor);
  EXPECT_EQ(rsrp_band(-115.79, t), RsrpBand::VeryPoor);
}

TEST(RuleOracle, CqiSpeedBufferEdges) {
  const BandThresholds t;
  for (int c : {3, 5, 6, 1}) EXPECT_EQ(cqi_band(c, t), CqiBand::Low) << c;
  for (int c : {7, 9, 11}) EXPECT_EQ(cqi_band(c, t), CqiBand::Medium) << c;
  EXPECT_EQ(cqi_band(12, t), CqiBand::High);
  EXPECT_EQ(speed_band(12, t), SpeedBand::Low);
  EXPECT_EQ(speed_band(14, t), SpeedBand::Low);
  EXPECT_EQ(speed_band(15, t), SpeedBand::Medium);
  EXPECT_EQ(speed_band(24, t), SpeedBand::Medium);
  EXPECT_EQ(speed_band(30, t), SpeedBand::High);
  EXPECT_EQ(buffer_band(19, t), BufferBand::CriticalLow);
  EXPECT_EQ(buffer_band(25, t), BufferBand::Sufficient);
  EXPECT_EQ(buffer_band(39, t), BufferBand::Sufficient);
  for (int b : {40, 70, 95}) EXPECT_EQ(buffer_band(b, t), BufferBand::High) << b;
}

TEST(RuleOracle, AdvantageMargins) {
  const BandThresholds t;
  EXPECT_EQ(advantage_of(-80.0, -80.0, t), Advantage::Similar);
  EXPECT_EQ(advantage_of(-70.0, -80.0, t), Advantage::Similar);
  EXPECT_EQ(advantage_of(-69.99, -80.0, t), Advantage::ClearTarget);
  EXPECT_EQ(advantage_of(-90.0, -80.0, t), Advantage::Similar);
  EXPECT_EQ(advantage_of(-90.01, -80.0, t), Advantage::ClearCurrent);
}

TEST(RuleOracle, WeakTargetRule) {
  auto s = base();
  s.target.rsrp = -100.01;
  s.target.cqi = 4;
  EXPECT_EQ(assess_with_rules(s).decision, Decision::RejectTargetWeak);
  s.target.rsrp = -100.0;  // not below the edge
  EXPECT_NE(assess_with_rules(s).decision, Decision::RejectTargetWeak);
  s.target.rsrp = -105.0;
  s.target.cqi = 5;
  EXPECT_NE(assess_with_rules(s).decision, Decision::RejectTargetWeak);
}

TEST(RuleOracle, PrecedenceQuestionOverExecute) {
  auto s = base();
  s.serving.rsrp = -100.0;
  s.target.rsrp = -80.0;  // clear target advantage, Good band
  s.target.cqi = 3;       // ... with Low cqi: conflicting
  EXPECT_EQ(assess_with_rules(s).decision, Decision::QuestionConflictingData);
  s.target.cqi = 9;
  EXPECT_EQ(assess_with_rules(s).decision, Decision::ExecuteHandoverOptimal);
}

TEST(RuleOracle, UnclearBenefit) {
  auto s = base();
  s.mission = Mission::HighThroughput;
  s.buffer = 19;
  EXPECT_TRUE(assess_with_rules(s).independents.test(static_cast<std::size_t>(Independent::UnclearBenefit)));
  s.buffer = 20;
  EXPECT_FALSE(assess_with_rules(s).independents.test(static_cast<std::size_t>(Independent::UnclearBenefit)));
  s.mission = Mission::LowLatency;
  s.speed = 25;
  EXPECT_TRUE(assess_with_rules(s).independents.test(static_cast<std::size_t>(Independent::UnclearBenefit)));
  s.target.rsrp = -69.0;  // no longer similar
  EXPECT_FALSE(assess_with_rules(s).independents.test(static_cast<std::size_t>(Independent::UnclearBenefit)));
}

TEST(RuleOracle, NeighborStrongerNeedsBothMargins) {
  auto s = base();
  s.neighbor.rsrp = -70.0;
  EXPECT_TRUE(assess_with_rules(s).independents.test(0));
  s.target.rsrp = -75.0;
  EXPECT_FALSE(assess_with_rules(s).independents.test(0));
}

TEST(RuleOracle, MatchesReferenceOnRandomScenarios) {
  GenConfig cfg;
  cfg.ranges.rsrp = {-130.0, -50.0};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 20000; ++i) {
    const auto s = sample_scenario(rng, cfg);
    ASSERT_EQ(label(s), reference_label(s)) << render(s);
  }
}

TEST(RuleOracle, TargetBandMonotone) {
  const BandThresholds t;
  auto prev = rsrp_band(-130.0, t);
  for (int q = -13000; q <= -5000; ++q) {
    const auto b = rsrp_band(q / 100.0, t);
    EXPECT_LE(static_cast<int>(b), static_cast<int>(prev)) << q;
    prev = b;
  }
}

TEST(RuleOracle, ExactlyOneDecision) {
  GenConfig cfg;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto v = label(sample_scenario(rng, cfg));
    EXPECT_EQ(v[0] + v[1] + v[2] + v[3], 1);
    int n = 0;
    for (auto f : v) n += f;
    EXPECT_GE(n, 10);
  }
}

TEST(RuleOracle, ThresholdValidation) {
  BandThresholds t;
  t.rsrp_good_min = -60.0;  // above excellent
  try {
    t.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::config);
  }
  EXPECT_NO_THROW(BandThresholds{}.validate());
}
