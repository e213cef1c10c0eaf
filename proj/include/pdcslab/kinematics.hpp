#pragma once

// Longitudinal wavenumbers of one coupled mode pair and the phase-matching
// (rainbow) resonances for down- and up-conversion.

#include "pdcslab/scenario.hpp"

namespace pdcslab {

/// Wavenumbers of the (omega, partner) pair at transverse wavenumber p.
/// All four are positive real square roots.
struct ModeKinematics {
  Kind kind = Kind::pdc;
  double omega = 0.0;
  double omega0 = 0.0;
  double partner = 0.0;        // omega0 -/+ omega
  double p = 0.0;
  double inner = 0.0;          // sqrt(omega^2 mu^2(omega) - p^2)
  double partner_inner = 0.0;  // same at the partner frequency
  double outer = 0.0;          // sqrt(omega^2 - p^2)
  double partner_outer = 0.0;
};

/// Throws Error(domain) on a guard-band or band violation and
/// Error(regime) when any radicand is <= 0.
ModeKinematics longitudinal(const CrystalScenario& scenario, double omega, double p,
                            Kind kind);

/// Throws Error(domain) when omega or its partner sits within
/// scenario.guard * omega0 of a positive multiple of omega0.
void check_guard_band(const CrystalScenario& scenario, double omega, Kind kind);

/// Phase-matched transverse wavenumber p0 and the wavenumbers there.
struct ResonancePoint {
  Kind kind = Kind::pdc;
  double omega = 0.0;
  double partner = 0.0;
  double p0 = 0.0;
  double angle = 0.0;          // exterior angle of omega, sin = p0 / omega
  double partner_angle = 0.0;  // exterior angle of the partner, sin = p0 / partner
  double inner = 0.0;          // omega_1
  double partner_inner = 0.0;  // omega_2
  double outer = 0.0;          // omega_10
  double partner_outer = 0.0;  // omega_20
  double residual = 0.0;       // phase-matching residual at p0

  ModeKinematics kinematics() const;
};

/// Root of inner(p) + partner_inner(p) = omega0 mu(omega0), 0 < omega < omega0.
ResonancePoint pdc_resonance(const CrystalScenario& scenario, double omega);
/// Root of partner_inner(p) - inner(p) = omega0 mu(omega0), partner = omega0 + omega.
ResonancePoint puc_resonance(const CrystalScenario& scenario, double omega);
ResonancePoint resonance(const CrystalScenario& scenario, double omega, Kind kind);

/// Degenerate (omega = omega0/2) angles in closed form.
///   q_d = mu1^2 - mu2^2
///   q_u = [36 mu1^2 mu3^2 - (9 mu3^2 - 4 mu2^2 + mu1^2)^2] / (16 mu2^2)
///   q_u (quadratic) = 6 q_d - 25 q_d^2 / (4 mu2^2), valid when mu3^2 = mu2^2 - q_d
/// with q = sin^2 of the exterior angle. Throws Error(geometry) if any q is outside [0, 1).
struct DegenerateForms {
  double qd = 0.0;
  double qu_exact = 0.0;
  double qu_quadratic = 0.0;
};

DegenerateForms degenerate_closed_forms(double mu1, double mu2, double mu3);

inline constexpr double kResidualTolerance = 1e-12;  // relative to omega0

}  // namespace pdcslab
