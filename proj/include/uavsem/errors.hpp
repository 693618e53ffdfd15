#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uavsem {

// Fine-grained error conditions. Every module throws uavsem::Error carrying
// one of these; the CLI maps them onto coarse process exit codes.
enum class Errc {
  usage,
  config,
  io,
  parse,
  range,
  consistency,
  not_found,
  length,
  shape,
  empty_input,
  non_finite,
  integrity,
  divergence,
  generation_exhausted,
  stratification,
  encoding,
  wire_length,
  wire_version,
  wire_reserved,
  wire_checksum,
  logits_unknown_id,
  logits_duplicate_id,
  logits_missing_id,
  logits_count,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Process exit codes, grouped by error class.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
inline constexpr int config = 3;
inline constexpr int parse = 4;
inline constexpr int integrity = 5;
inline constexpr int divergence = 6;
inline constexpr int wire = 7;
inline constexpr int io = 8;
}  // namespace exit_code

int exit_code_for(Errc code) noexcept;

}  // namespace uavsem
