#pragma once

#include <stdexcept>
#include <string>

namespace gforge {

enum class errc {
  trace_too_small,
  out_of_domain,
  sum_below_one,
  step_too_small,
  invalid_rotation,
  not_generalized_eight,
  domain_violation,
  box_empty,
  not_monotone,
  geometry_unavailable,
  degenerate_alignment,
  grid_too_short,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::trace_too_small: return "TraceTooSmall";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::sum_below_one: return "SumBelowOne";
    case errc::step_too_small: return "StepTooSmall";
    case errc::invalid_rotation: return "InvalidRotation";
    case errc::not_generalized_eight: return "NotGeneralizedEight";
    case errc::domain_violation: return "DomainViolation";
    case errc::box_empty: return "BoxEmpty";
    case errc::not_monotone: return "NotMonotone";
    case errc::geometry_unavailable: return "GeometryUnavailable";
    case errc::degenerate_alignment: return "DegenerateAlignment";
    case errc::grid_too_short: return "GridTooShort";
    case errc::bad_input: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace gforge
