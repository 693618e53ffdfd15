#pragma once

// Canonical six-line scenario text (the classifier input) and its parser.
//
//   UAV Handover Assessment:
//   UAV State: Speed 15 m/s, Buffer 20, Mission Standard
//   Serving BS: ID BS3, RSRP -88.00 dBm, RSRQ -9.00 dB, CQI 10.
//   Handover Command: Handover to BS7.
//   Target BS (ID BS7): Local RSRP -105.00 dBm, Local RSRQ -14.00 dB, Local CQI 4.
//   Strongest Neighbor BS (ID BS4): Local RSRP -90.00 dBm, Local RSRQ -10.00 dB, Local CQI 9.
//
// Lines are joined by '\n' with no trailing newline. Numbers are formatted
// locale-independently (rsrp/rsrq with exactly two decimals).

#include <string>
#include <string_view>

#include "uavsem/scenario.hpp"

namespace uavsem {

std::string render(const Scenario& s);

// Strict inverse of render(). Trailing spaces/tabs/CR on each line and one
// trailing newline are tolerated.
// Errors: Errc::parse (message carries the 1-based line number),
//         Errc::consistency (command target differs from target line id),
//         Errc::range (field outside its legal envelope).
Scenario parse(std::string_view text);

}  // namespace uavsem
