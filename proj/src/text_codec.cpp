#include "uavsem/text_codec.hpp"

#include <charconv>
#include <vector>

#include <fmt/format.h>

#include "uavsem/errors.hpp"

namespace uavsem {

std::string render(const Scenario& s) {
  return fmt::format(
      "UAV Handover Assessment:\n"
      "UAV State: Speed {} m/s, Buffer {}, Mission {}\n"
      "Serving BS: ID BS{}, RSRP {:.2f} dBm, RSRQ {:.2f} dB, CQI {}.\n"
      "Handover Command: Handover to BS{}.\n"
      "Target BS (ID BS{}): Local RSRP {:.2f} dBm, Local RSRQ {:.2f} dB, Local CQI {}.\n"
      "Strongest Neighbor BS (ID BS{}): Local RSRP {:.2f} dBm, Local RSRQ {:.2f} dB, Local CQI {}.",
      s.speed, s.buffer, mission_text(s.mission),                              //
      s.serving.bs_id, s.serving.rsrp, s.serving.rsrq, s.serving.cqi,          //
      s.target.bs_id,                                                          //
      s.target.bs_id, s.target.rsrp, s.target.rsrq, s.target.cqi,              //
      s.neighbor.bs_id, s.neighbor.rsrp, s.neighbor.rsrq, s.neighbor.cqi);
}

namespace {

// Cursor over one line; every mismatch throws with the line number.
class LineReader {
 public:
  LineReader(std::string_view line, int number) : rest_(line), number_(number) {}

  void literal(std::string_view expected) {
    if (!rest_.starts_with(expected)) fail(fmt::format("expected \"{}\"", expected));
    rest_.remove_prefix(expected.size());
  }

  int integer() {
    std::size_t n = 0;
    if (n < rest_.size() && rest_[n] == '-') ++n;
    const std::size_t digits_from = n;
    while (n < rest_.size() && is_digit(rest_[n])) ++n;
    if (n == digits_from) fail("expected integer");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(rest_.data(), rest_.data() + n, value);
    if (ec != std::errc{}) fail("integer out of range");
    rest_.remove_prefix(n);
    return value;
  }

  // Fixed two-decimal real: -?digits.dd
  double fixed2() {
    std::size_t n = 0;
    if (n < rest_.size() && rest_[n] == '-') ++n;
    const std::size_t int_from = n;
    while (n < rest_.size() && is_digit(rest_[n])) ++n;
    if (n == int_from || n >= rest_.size() || rest_[n] != '.') fail("expected fixed-point value with two decimals");
    ++n;
    if (n + 2 > rest_.size() || !is_digit(rest_[n]) || !is_digit(rest_[n + 1]) ||
        (n + 2 < rest_.size() && is_digit(rest_[n + 2]))) {
      fail("expected fixed-point value with two decimals");
    }
    n += 2;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(rest_.data(), rest_.data() + n, value);
    if (ec != std::errc{}) fail("bad fixed-point value");
    rest_.remove_prefix(n);
    return value;
  }

  std::string_view word() {
    std::size_t n = 0;
    while (n < rest_.size() && rest_[n] != ' ' && rest_[n] != ',' && rest_[n] != '.') ++n;
    if (n == 0) fail("expected word");
    const auto w = rest_.substr(0, n);
    rest_.remove_prefix(n);
    return w;
  }

  void end() {
    if (!rest_.empty()) fail(fmt::format("unexpected trailing text \"{}\"", rest_));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse, fmt::format("line {}: {}", number_, what));
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  std::string_view rest_;
  int number_;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.ends_with('\n')) text.remove_suffix(1);
  std::vector<std::string_view> lines;
  std::size_t from = 0;
  while (true) {
    const auto nl = text.find('\n', from);
    auto line = text.substr(from, nl == std::string_view::npos ? std::string_view::npos : nl - from);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.remove_suffix(1);
    }
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    from = nl + 1;
  }
  return lines;
}

void read_local_measurement(LineReader& in, BsMeasurement& bs) {
  in.literal("Local RSRP ");
  bs.rsrp = in.fixed2();
  in.literal(" dBm, Local RSRQ ");
  bs.rsrq = in.fixed2();
  in.literal(" dB, Local CQI ");
  bs.cqi = in.integer();
  in.literal(".");
  in.end();
}

}  // namespace

Scenario parse(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() != 6) {
    const std::size_t at = lines.size() < 6 ? lines.size() + 1 : 7;
    throw Error(Errc::parse, fmt::format("line {}: expected 6 lines, found {}", at, lines.size()));
  }

  Scenario s;
  {
    LineReader in(lines[0], 1);
    in.literal("UAV Handover Assessment:");
    in.end();
  }
  {
    LineReader in(lines[1], 2);
    in.literal("UAV State: Speed ");
    s.speed = in.integer();
    in.literal(" m/s, Buffer ");
    s.buffer = in.integer();
    in.literal(", Mission ");
    const auto mission = in.word();
    try {
      s.mission = mission_from_string(mission);
    } catch (const Error&) {
      in.fail(fmt::format("unknown mission \"{}\"", mission));
    }
    in.end();
  }
  {
    LineReader in(lines[2], 3);
    in.literal("Serving BS: ID BS");
    s.serving.bs_id = in.integer();
    in.literal(", RSRP ");
    s.serving.rsrp = in.fixed2();
    in.literal(" dBm, RSRQ ");
    s.serving.rsrq = in.fixed2();
    in.literal(" dB, CQI ");
    s.serving.cqi = in.integer();
    in.literal(".");
    in.end();
  }
  int commanded = 0;
  {
    LineReader in(lines[3], 4);
    in.literal("Handover Command: Handover to BS");
    commanded = in.integer();
    in.literal(".");
    in.end();
  }
  {
    LineReader in(lines[4], 5);
    in.literal("Target BS (ID BS");
    s.target.bs_id = in.integer();
    in.literal("): ");
    read_local_measurement(in, s.target);
  }
  {
    LineReader in(lines[5], 6);
    in.literal("Strongest Neighbor BS (ID BS");
    s.neighbor.bs_id = in.integer();
    in.literal("): ");
    read_local_measurement(in, s.neighbor);
  }

  if (commanded != s.target.bs_id) {
    throw Error(Errc::consistency,
                fmt::format("handover command names BS{} but target line names BS{}", commanded, s.target.bs_id));
  }
  check_scenario(s);
  return s;
}

}  // namespace uavsem
