#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fourmode {

enum class ErrorKind {
  invalid_config,
  unsupported_config,
  nonphysical_moments,
  nonphysical_state,
  empty_subset,
  invalid_side,
  numerical_failure,
  domain_error,
  truncation_overflow,
  field_not_found,
  unsupported_pair,
  same_mode,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::unsupported_config: return "unsupported-config";
    case ErrorKind::nonphysical_moments: return "nonphysical-moments";
    case ErrorKind::nonphysical_state: return "nonphysical-state";
    case ErrorKind::empty_subset: return "empty-subset";
    case ErrorKind::invalid_side: return "invalid-side";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::truncation_overflow: return "truncation-overflow";
    case ErrorKind::field_not_found: return "field-not-found";
    case ErrorKind::unsupported_pair: return "unsupported-pair";
    case ErrorKind::same_mode: return "same-mode";
  }
  return "unknown";
}

/// Errors caused by bad user input rather than by the numerics.
constexpr bool is_usage_error(ErrorKind kind) {
  return kind == ErrorKind::invalid_config || kind == ErrorKind::field_not_found ||
         kind == ErrorKind::empty_subset || kind == ErrorKind::invalid_side ||
         kind == ErrorKind::unsupported_pair || kind == ErrorKind::same_mode ||
         kind == ErrorKind::unsupported_config;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fourmode
