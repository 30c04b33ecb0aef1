#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace henondim {

// Every failure surfaced by the toolkit carries one of these tags. The
// textual form (tag_name) is what users see on stderr and what the C API
// maps to its status codes.
enum class ErrorTag {
  config,
  escaped,
  orientation,
  seeding_diverged,
  newton_diverged,
  non_hyperbolic,
  incomplete_library,
  degenerate_lambda,
  no_bracket,
  no_interior_max,
  fingerprint_mismatch,
  corrupt_cache,
  budget_exceeded,
  io,
  invalid_argument,
};

constexpr std::string_view tag_name(ErrorTag tag) {
  switch (tag) {
    case ErrorTag::config: return "config";
    case ErrorTag::escaped: return "escaped";
    case ErrorTag::orientation: return "orientation";
    case ErrorTag::seeding_diverged: return "seeding-diverged";
    case ErrorTag::newton_diverged: return "newton-diverged";
    case ErrorTag::non_hyperbolic: return "non-hyperbolic";
    case ErrorTag::incomplete_library: return "incomplete-library";
    case ErrorTag::degenerate_lambda: return "degenerate-Lambda";
    case ErrorTag::no_bracket: return "no-bracket";
    case ErrorTag::no_interior_max: return "no-interior-max";
    case ErrorTag::fingerprint_mismatch: return "fingerprint-mismatch";
    case ErrorTag::corrupt_cache: return "corrupt-cache";
    case ErrorTag::budget_exceeded: return "budget-exceeded";
    case ErrorTag::io: return "io";
    case ErrorTag::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorTag tag, const std::string& detail)
      : std::runtime_error(std::string(tag_name(tag)) + ": " + detail), tag_(tag) {}

  ErrorTag tag() const noexcept { return tag_; }

 private:
  ErrorTag tag_;
};

}  // namespace henondim
