#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperwave {

enum class ErrorKind {
  invalid_argument,
  invalid_data,
  undefined_ratio,
  out_of_chart,
  interpolation_domain,
  resonance,
  stiff_failure,
  volterra_divergence,
  inconsistency,
  contour_accuracy,
  near_eigenvalue,
  near_spectrum,
  stability,
  divergence,
  contour,
  spectral_assumption,
  contraction_failure,
  blowup_detected,
  domain,
  parity,
  config,
  internal,
};

std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace hyperwave
