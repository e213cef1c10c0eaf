#pragma once

#include "pdcslab/dispersion.hpp"

#include <string_view>

namespace pdcslab {

enum class Kind { pdc, puc };

std::string_view to_string(Kind kind);

/// Frequency of the mode coupled to omega: omega0 - omega for PDC,
/// omega0 + omega for PUC.
inline double partner_frequency(double omega0, double omega, Kind kind) {
  return kind == Kind::pdc ? omega0 - omega : omega0 + omega;
}

/// Pumped slab: pump frequency, effective coupling g (dimensionless,
/// the pump amplitude is folded in), thickness and linear dispersion.
struct CrystalScenario {
  double omega0 = 1.0;
  double coupling = 0.0;
  double thickness = 1.0;
  DispersionModel dispersion = DispersionModel::constant(1.0, Band{1e-3, 10.0});
  /// Half-width of the excluded neighbourhood of each pump harmonic,
  /// as a fraction of omega0.
  double guard = 0.02;
  /// Couplings at or above this value are flagged as outside the weak-coupling regime.
  double coupling_warning = 1e-2;

  /// Throws Error(domain) unless g >= 0, l > 0 and omega0 lies in the band.
  void validate() const;

  bool weak_coupling() const { return coupling < coupling_warning; }

  /// omega0 * mu(omega0), the pump's longitudinal wavenumber.
  double pump_wavenumber() const { return omega0 * dispersion.mu(omega0); }
};

}  // namespace pdcslab
