#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdcslab {

enum class ErrorCode {
  domain,             // argument outside its admissible set
  regime,             // evanescent wave, no real longitudinal wavenumber
  no_resonance,       // phase-matching equation has no root in the scanned bracket
  calibration,        // requested dispersion calibration is infeasible
  geometry,           // angle or wavenumber combination undefined
  singular_coupling,  // coincident coupled-mode roots
  degenerate_root,    // quartic roots cannot be assigned to branches
  conditioning,       // boundary system too ill-conditioned to trust
  undefined_split,    // no excess intensity to split between rainbows
  sweep,              // sweep produced no valid rows
  parse,              // malformed config or serialized model
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pdcslab
