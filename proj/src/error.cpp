#include "pdcslab/error.hpp"

namespace pdcslab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::regime: return "regime";
    case ErrorCode::no_resonance: return "no_resonance";
    case ErrorCode::calibration: return "calibration";
    case ErrorCode::geometry: return "geometry";
    case ErrorCode::singular_coupling: return "singular_coupling";
    case ErrorCode::degenerate_root: return "degenerate_root";
    case ErrorCode::conditioning: return "conditioning";
    case ErrorCode::undefined_split: return "undefined_split";
    case ErrorCode::sweep: return "sweep";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

}  // namespace pdcslab
