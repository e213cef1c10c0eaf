#pragma once

// Brute-force references for the closed forms: the full eight-unknown
// boundary-matching solve on the exact quartic roots, thickness-phase
// averaging, and direct summation of the multiple-reflection series.

#include "pdcslab/coupled_modes.hpp"

#include <Eigen/Dense>

namespace pdcslab {

inline constexpr double kConditionLimit = 1e12;

/// Continuity of F and dF/dz for both frequencies at z = 0 and z = l.
/// Unknowns in order: R1, R2, T1 e^{i w10 l}, T2 e^{i s w20 l}, c1..c4.
/// Derivative rows are divided by i.
struct BoundarySystem {
  Eigen::Matrix<cplx, 8, 8> matrix;
  Eigen::Matrix<cplx, 8, 1> rhs;
  /// Mode amplitudes of each internal wave in the two frequency components.
  std::array<cplx, 4> alpha{}, beta{};
  QuarticRoots roots;
  double condition = 0.0;
};

BoundarySystem boundary_system(const CrystalScenario& scenario, const ModeKinematics& kin);

struct ExactSolution {
  ScatterSolution amplitudes;
  double r1 = 0.0, t1 = 0.0, r2 = 0.0, t2 = 0.0;  // z-Poynting ratios to the incident wave
  double condition = 0.0;
  double residual = 0.0;  // max |M x - rhs| / max |rhs|
};

/// Throws Error(conditioning) when the condition number exceeds kConditionLimit.
ExactSolution exact_solve(const CrystalScenario& scenario, double omega, double p, Kind kind);
ExactSolution exact_solve(const CrystalScenario& scenario, const ModeKinematics& kin);

/// Exact and closed-form coefficients averaged over the same thicknesses
/// l_j = l + (j / phases) 2 pi / w1, j = 0 .. phases-1, which sweep the fast
/// phase w1 l through one period while leaving xi essentially fixed.
struct PhaseAverage {
  ChannelCoefficients exact;
  ChannelCoefficients closed_form;
  double max_condition = 0.0;
  int phases = 0;
};

PhaseAverage phase_average(const CrystalScenario& scenario, double omega, double p, Kind kind,
                           int phases = 64);

/// Intensity sums over internal reflections for an input at omega:
///   t1 = sum_n t10^2 r10^(2n) (1 + sign (n+1) gamma)
///   r1 = r10 + sum_n t10^2 r10^(2n+1) (1 + sign (n+1) gamma)
///   t2 = (partner/omega) gamma t10 t20 sum_{m,n} r10^(2m) r20^(2n),  r2 = r20 t2
/// Terms are added until the tail is below 1e-17 and at least min_terms
/// have been used. Throws Error(domain) unless 0 <= r < 1.
ChannelCoefficients series_sum(const FresnelStep& first, const FresnelStep& second, double gamma,
                               double partner_over_omega, Kind kind, int min_terms = 40);

}  // namespace pdcslab
