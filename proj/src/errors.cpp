#include "uavsem/errors.hpp"

namespace uavsem {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::usage: return "usage";
    case Errc::config: return "config";
    case Errc::io: return "io";
    case Errc::parse: return "parse";
    case Errc::range: return "range";
    case Errc::consistency: return "consistency";
    case Errc::not_found: return "not-found";
    case Errc::length: return "length";
    case Errc::shape: return "shape";
    case Errc::empty_input: return "empty-input";
    case Errc::non_finite: return "non-finite";
    case Errc::integrity: return "integrity";
    case Errc::divergence: return "divergence";
    case Errc::generation_exhausted: return "generation-exhausted";
    case Errc::stratification: return "stratification";
    case Errc::encoding: return "encoding";
    case Errc::wire_length: return "wire-length";
    case Errc::wire_version: return "wire-version";
    case Errc::wire_reserved: return "wire-reserved";
    case Errc::wire_checksum: return "wire-checksum";
    case Errc::logits_unknown_id: return "logits-unknown-id";
    case Errc::logits_duplicate_id: return "logits-duplicate-id";
    case Errc::logits_missing_id: return "logits-missing-id";
    case Errc::logits_count: return "logits-count";
  }
  return "unknown";
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::usage:
      return exit_code::usage;
    case Errc::config:
    case Errc::generation_exhausted:
    case Errc::stratification:
      return exit_code::config;
    case Errc::parse:
    case Errc::range:
    case Errc::consistency:
    case Errc::not_found:
    case Errc::length:
    case Errc::non_finite:
      return exit_code::parse;
    case Errc::integrity:
    case Errc::shape:
    case Errc::empty_input:
    case Errc::logits_unknown_id:
    case Errc::logits_duplicate_id:
    case Errc::logits_missing_id:
    case Errc::logits_count:
      return exit_code::integrity;
    case Errc::divergence:
      return exit_code::divergence;
    case Errc::encoding:
    case Errc::wire_length:
    case Errc::wire_version:
    case Errc::wire_reserved:
    case Errc::wire_checksum:
      return exit_code::wire;
    case Errc::io:
      return exit_code::io;
  }
  return exit_code::failure;
}

}  // namespace uavsem
