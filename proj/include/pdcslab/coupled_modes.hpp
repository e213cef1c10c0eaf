#pragma once

// Weakly coupled slab: perturbative wavenumber shifts, boundary-matching
// amplitudes, the gain factor gamma and the overall intensity coefficients.
//
// Conventions: the incident wave at omega has unit zeropoint amplitude;
// every intensity coefficient is a ratio of z-Poynting components to the
// incident one; photon fluxes are zeropoint-subtracted and expressed per
// unit area per unit incident zeropoint mode.

#include "pdcslab/kinematics.hpp"
#include "pdcslab/linear_lamina.hpp"

#include <array>
#include <complex>

namespace pdcslab {

using cplx = std::complex<double>;

/// sin(z)/z on the complex plane, 1 at z = 0, series for |z| < 1e-4.
cplx sinc(cplx z);

/// Shifts of the internal wavenumbers away from the uncoupled values:
///   k1 = W1 + eps1, k2 = W1 + eps2, k3 = -W1 + eps3,
///   k4 = W2 + omega0 mu(omega0) + eps4      (pdc)
///   k4 = -(W2 + omega0 mu(omega0)) + eps4   (puc)
/// with W1, W2 the internal longitudinal wavenumbers at the working p.
struct EpsilonRoots {
  Kind kind = Kind::pdc;
  cplx eps1, eps2;
  double eps3 = 0.0;
  double eps4 = 0.0;
  double sum = 0.0;      // eps1 + eps2, from the detuning p - p0
  double product = 0.0;  // eps1 * eps2: > 0 for pdc, < 0 for puc
  cplx xi;               // (eps1 - eps2) l / 2, purely real or purely imaginary
  /// |p - p0| > 0.01 omega or g outside the weak-coupling threshold.
  bool beyond_validity = false;
};

/// First-order shifts at working transverse wavenumber p near resonance.
/// eps1 = (sum + sqrt(sum^2 - 4 product)) / 2 on the principal branch.
/// Throws Error(geometry) if omega_1 or omega_2 vanishes.
EpsilonRoots epsilon_roots(const CrystalScenario& scenario, const ResonancePoint& resonance,
                           double p);

/// Exact roots of the coupled-mode dispersion relation
///   [k^2 - W1^2] [(k + s K)^2 - W2^2] = g^2 omega0^2 omega partner
/// with K = omega0 mu(omega0), s = -1 for pdc and +1 for puc. k[0], k[1]
/// are the near-degenerate forward pair (ordered like eps1, eps2), k[2] the
/// backward idler and k[3] the backward partner.
struct QuarticRoots {
  Kind kind = Kind::pdc;
  std::array<cplx, 4> k{};
  /// Uncoupled root each k continues (W1 or the forward partner root for the pair).
  std::array<long double, 4> anchor{};
  /// k - anchor, free of cancellation.
  std::array<std::complex<long double>, 4> offset{};
  /// k minus its EpsilonRoots reference {W1, W1, -W1, +/-(W2 + K)}.
  std::array<std::complex<long double>, 4> shift{};
};

/// Throws Error(degenerate_root) if the branch assignment is ambiguous.
QuarticRoots quartic_wavenumbers(const CrystalScenario& scenario, const ModeKinematics& k);

/// Boundary-matching amplitudes for one incident unit wave at omega.
/// Slowly varying phase factors are dropped; see output_amplitudes.
struct ScatterSolution {
  cplx R1, R2, T1, T2, A1, A2, A3, A4;
};

/// Matching at z = 0 with the backward waves switched off:
///   R1 = (w10 - w1)/(w10 + w1), R2 = 0,
///   A1 = 2 eps2 w10 / ((eps2 - eps1)(w10 + w1)), A2 = -2 eps1 w10 / (...).
/// Throws Error(singular_coupling) when eps1 == eps2.
ScatterSolution first_iteration(const ResonancePoint& resonance, const EpsilonRoots& roots);

/// Adds T1, T2, A3, A4 from matching at z = l. T1 and A3 keep the factor
/// exp(i eps1 l) so that w10 |T1|^2 = w10 t10^2 (1 +/- gamma) holds exactly.
/// Coincident roots fall back to the uncoupled solution.
ScatterSolution output_amplitudes(const CrystalScenario& scenario,
                                  const ResonancePoint& resonance, const EpsilonRoots& roots);

/// Gain factor g^2 l^2 omega0^2 omega partner / (4 w1 w2) * sinc^2(xi).
double gain_factor(const CrystalScenario& scenario, const ResonancePoint& resonance,
                   const EpsilonRoots& roots);

/// First-order-in-gamma overall coefficients for an input at `omega`
/// coupled to `partner`. sign = +1 amplifies the input (pdc), -1 attenuates it (puc).
struct ChannelCoefficients {
  double r1 = 0.0, t1 = 1.0, r2 = 0.0, t2 = 0.0;
  /// Pump-induced parts of r1 and t1. The linear parts sum to exactly 1,
  /// so t1 + r1 - 1 = t1_gain + r1_gain without cancellation.
  double r1_gain = 0.0, t1_gain = 0.0;
};

ChannelCoefficients channel_coefficients(double gamma, double r10, double r20, double omega,
                                         double partner, Kind kind);

struct ChannelReport {
  Kind kind = Kind::pdc;
  double omega = 0.0;
  double partner = 0.0;
  double p = 0.0;
  double p0 = 0.0;
  double angle = 0.0;          // rad
  double partner_angle = 0.0;  // rad
  double gamma = 0.0;
  cplx xi;
  double r1 = 0.0, t1 = 1.0, r2 = 0.0, t2 = 0.0;
  double r10 = 0.0, r20 = 0.0, t10 = 1.0, t20 = 1.0;
  double idler_photons = 0.0;   // n_i(omega) = (t1 + r1 - 1) / 2
  double signal_photons = 0.0;  // n_s(partner) = (t2 + r2) w10 / (2 w20)
  double flux_omega = 0.0;      // idler of this input + signal of the conjugate input
  double flux_partner = 0.0;
  double ratio = 0.0;           // flux_omega / flux_partner (nan when both vanish)
  /// The same two channel fluxes written with the rainbow-angle cosines.
  double flux_omega_cosine = 0.0;
  double flux_partner_cosine = 0.0;
  bool beyond_validity = false;
};

/// Closed-form report for the mode pair at working transverse wavenumber p.
/// Every coefficient is evaluated on the resonance geometry; p enters
/// through the detuning of the wavenumber shifts.
ChannelReport channel_report(const CrystalScenario& scenario, double omega, double p,
                             Kind kind);
ChannelReport channel_report(const CrystalScenario& scenario, const ResonancePoint& resonance,
                             double p);
/// channel_report at p = p0.
ChannelReport resonant_report(const CrystalScenario& scenario, double omega, Kind kind);

/// Share of the total outgoing intensity in the forward (t1, t2) and
/// backward (r1, r2) rainbows.
struct RainbowSplit {
  double forward = 1.0;
  double backward = 0.0;
};

RainbowSplit rainbow_split(const ChannelReport& report);
RainbowSplit rainbow_split(const ChannelCoefficients& c);

/// The same split restricted to the pump-induced excess
/// (t1 - t_linear + t2 versus r1 - r_linear + r2). Throws
/// Error(undefined_split) when there is no excess (g = 0).
RainbowSplit excess_split(const ChannelReport& report);

}  // namespace pdcslab
