#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace certilink {

enum class ErrorKind {
  degenerate_origin,      // sign of (0, 0) requested
  degenerate_result,      // triple addition rounded to (0, 0)
  exponent_range,         // power-of-two scaling would overflow or underflow
  degenerate_segments,    // a connecting vector has zero length
  intersection_detected,  // segment pair certified (or rounded) as intersecting
  curve_too_small,        // fewer than three vertices
  not_closed,             // chain with a nonzero boundary
  non_generic_direction,  // projection oracle could not find a generic view
  invalid_input,          // malformed file, bad index, non-finite number
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::degenerate_origin: return "DegenerateOrigin";
    case ErrorKind::degenerate_result: return "DegenerateResult";
    case ErrorKind::exponent_range: return "ExponentRange";
    case ErrorKind::degenerate_segments: return "DegenerateSegments";
    case ErrorKind::intersection_detected: return "IntersectionDetected";
    case ErrorKind::curve_too_small: return "CurveTooSmall";
    case ErrorKind::not_closed: return "NotClosed";
    case ErrorKind::non_generic_direction: return "NonGenericDirection";
    case ErrorKind::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace certilink
