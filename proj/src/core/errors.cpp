#include "hyperwave/errors.hpp"

namespace hyperwave {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::invalid_data: return "invalid_data";
    case ErrorKind::undefined_ratio: return "undefined_ratio";
    case ErrorKind::out_of_chart: return "out_of_chart";
    case ErrorKind::interpolation_domain: return "interpolation_domain";
    case ErrorKind::resonance: return "resonance";
    case ErrorKind::stiff_failure: return "stiff_failure";
    case ErrorKind::volterra_divergence: return "volterra_divergence";
    case ErrorKind::inconsistency: return "inconsistency";
    case ErrorKind::contour_accuracy: return "contour_accuracy";
    case ErrorKind::near_eigenvalue: return "near_eigenvalue";
    case ErrorKind::near_spectrum: return "near_spectrum";
    case ErrorKind::stability: return "stability";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::contour: return "contour";
    case ErrorKind::spectral_assumption: return "spectral_assumption";
    case ErrorKind::contraction_failure: return "contraction_failure";
    case ErrorKind::blowup_detected: return "blowup_detected";
    case ErrorKind::domain: return "domain";
    case ErrorKind::parity: return "parity";
    case ErrorKind::config: return "config";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hyperwave
