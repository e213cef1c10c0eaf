#pragma once

// Uncoupled (g = 0) slab in the incoherent multiple-reflection approximation.

namespace pdcslab {

/// Single-interface amplitudes and z-Poynting intensity ratios.
struct FresnelStep {
  double R0 = 0.0;  // (outer - inner) / (outer + inner)
  double A0 = 1.0;  // 2 outer / (outer + inner)
  double r0 = 0.0;  // R0^2
  double t0 = 1.0;  // A0^2 inner / outer = 1 - r0
};

/// Throws Error(domain) unless both longitudinal wavenumbers are positive.
FresnelStep fresnel_step(double outer, double inner);

struct SlabCoefficients {
  double r = 0.0;
  double t = 1.0;
};

/// Sum of intensities over all internal reflections:
/// r = 2 r0 / (1 + r0), t = (1 - r0) / (1 + r0). Thickness independent.
SlabCoefficients slab_coefficients(const FresnelStep& step);

}  // namespace pdcslab
