#include <gtest/gtest.h>

#include <clocale>

#include "golden.hpp"
#include "uavsem/errors.hpp"
#include "uavsem/text_codec.hpp"

using namespace uavsem;

namespace {

Scenario example_e() {
  Scenario s;
  s.speed = 15;
  s.buffer = 20;
  s.mission = Mission::Standard;
  s.serving = {3, -88.0, -9.0, 10};
  s.target = {7, -105.0, -14.0, 4};
  s.neighbor = {4, -90.0, -10.0, 9};
  return s;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto end = text.find('\n', pos);
    out.push_back(text.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

Errc parse_error_code(const std::string& text, std::string* what = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return Errc::usage;
}

}  // namespace

TEST(Render, ExampleELines) {
  const auto lines = lines_of(render(example_e()));
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "UAV Handover Assessment:");
  EXPECT_EQ(lines[1], "UAV State: Speed 15 m/s, Buffer 20, Mission Standard");
  EXPECT_EQ(lines[2], "Serving BS: ID BS3, RSRP -88.00 dBm, RSRQ -9.00 dB, CQI 10.");
  EXPECT_EQ(lines[3], "Handover Command: Handover to BS7.");
  EXPECT_EQ(lines[4], "Target BS (ID BS7): Local RSRP -105.00 dBm, Local RSRQ -14.00 dB, Local CQI 4.");
  EXPECT_EQ(lines[5], "Strongest Neighbor BS (ID BS4): Local RSRP -90.00 dBm, Local RSRQ -10.00 dB, Local CQI 9.");
}

TEST(Render, ForcedDecimals) {
  auto s = example_e();
  s.neighbor.rsrp = -90;
  EXPECT_NE(render(s).find("Local RSRP -90.00 dBm"), std::string::npos);
}

TEST(Render, MissionSpellings) {
  auto s = example_e();
  s.mission = Mission::LowLatency;
  EXPECT_NE(render(s).find(", Mission Low-Latency\n"), std::string::npos);
  s.mission = Mission::HighThroughput;
  EXPECT_NE(render(s).find(", Mission High-Throughput\n"), std::string::npos);
}

TEST(Render, LocaleIndependent) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) GTEST_SKIP() << "de_DE locale unavailable";
  const auto text = render(example_e());
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_NE(text.find("-88.00"), std::string::npos);
}

TEST(Parse, ExampleEWithMission) { EXPECT_EQ(parse(golden::cases()[4].text), example_e()); }

TEST(Parse, GoldenRenderIdentity) {
  for (const auto& c : golden::cases()) EXPECT_EQ(render(parse(c.text)), c.text) << c.name;
}

TEST(Parse, ToleratesTrailingWhitespace) {
  auto lines = lines_of(render(example_e()));
  std::string text;
  for (auto& l : lines) text += l + "  \t\r\n";
  EXPECT_EQ(parse(text), example_e());
}

TEST(Parse, TargetIdMismatch) {
  auto text = render(example_e());
  text.replace(text.find("Target BS (ID BS7)"), 18, "Target BS (ID BS8)");
  EXPECT_EQ(parse_error_code(text), Errc::consistency);
}

TEST(Parse, MalformedLineNumber) {
  auto text = render(example_e());
  text.replace(text.find("CQI 10."), 7, "CQI ten.");
  std::string what;
  EXPECT_EQ(parse_error_code(text, &what), Errc::parse);
  EXPECT_NE(what.find("line 3"), std::string::npos) << what;
}

TEST(Parse, WrongDecimals) {
  auto text = render(example_e());
  text.replace(text.find("-88.00"), 6, "-88.0");
  std::string what;
  EXPECT_EQ(parse_error_code(text, &what), Errc::parse);
  EXPECT_NE(what.find("line 3"), std::string::npos) << what;
}

TEST(Parse, MissingLines) {
  const auto text = render(example_e());
  std::string what;
  EXPECT_EQ(parse_error_code(text.substr(0, text.rfind('\n')), &what), Errc::parse);
  EXPECT_NE(what.find("line 6"), std::string::npos) << what;
  EXPECT_EQ(parse_error_code(text + "\nextra"), Errc::parse);
  EXPECT_EQ(parse_error_code(""), Errc::parse);
}

TEST(Parse, OutOfRange) {
  auto text = render(example_e());
  text.replace(text.find("Speed 15"), 8, "Speed 55");
  EXPECT_EQ(parse_error_code(text), Errc::range);
  text = render(example_e());
  text.replace(text.find("CQI 10."), 7, "CQI 16.");
  EXPECT_EQ(parse_error_code(text), Errc::range);
}

TEST(Parse, DuplicateIds) {
  auto s = example_e();
  s.neighbor.bs_id = 3;
  EXPECT_EQ(parse_error_code(render(s)), Errc::range);
}
