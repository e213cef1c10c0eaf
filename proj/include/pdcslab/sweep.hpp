#pragma once

// Frequency sweeps, the degenerate-point summary and the oracle comparison
// table behind the command-line verbs.

#include "pdcslab/config.hpp"
#include "pdcslab/coupled_modes.hpp"
#include "pdcslab/table_output.hpp"

#include <string>
#include <vector>

namespace pdcslab {

struct SweepRequest {
  CrystalScenario scenario;
  SweepSettings settings;

  /// Throws Error(domain) for fewer than 2 samples, an empty or
  /// non-positive band, no kinds, or a bad detuning scan.
  void validate() const;
  /// Evenly spaced frequencies from omega_lo to omega_hi (units of omega0).
  std::vector<double> frequencies() const;
  /// Offsets p - p0, symmetric about zero.
  std::vector<double> detunings() const;
};

struct SweepRow {
  double omega = 0.0;
  Kind kind = Kind::pdc;
  double dp = 0.0;
  ChannelReport report;
  double forward_fraction = 0.0;
  bool skipped = false;
  std::string skip_reason;  // error code name, empty for valid rows
  std::string skip_detail;
};

/// One row per (omega, kind, detuning), ordered by omega then kind then
/// detuning. Samples in a guard band, outside the dispersion band or
/// without a propagating resonance are kept as skipped rows. Throws
/// Error(sweep) when every row is skipped.
std::vector<SweepRow> run_sweep(const SweepRequest& request);

Table sweep_table(const std::vector<SweepRow>& rows);

struct DegenerateSummary {
  double omega = 0.0;
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;  // at omega0/2, omega0, 3 omega0/2
  double theta_d_deg = 0.0;                // solved pdc rainbow angle
  double theta_u_deg = 0.0;                // solved puc rainbow angle
  DegenerateForms forms;
  double theta_u_closed_deg = 0.0;         // from forms.qu_exact
  double qu_gap = 0.0;                     // |quadratic - exact| / exact
  ChannelReport pdc, puc;
  /// puc flux at omega over pdc flux at omega (same channel).
  double channel_ratio = 0.0;
  /// puc flux at omega over the total pdc flux of both channels at omega0/2.
  double total_ratio = 0.0;
};

DegenerateSummary degenerate_summary(const CrystalScenario& scenario);
Table degenerate_table(const DegenerateSummary& summary);

struct OracleRow {
  double omega = 0.0;
  Kind kind = Kind::pdc;
  std::string quantity;
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;  // error text when the oracle could not run
};

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kAveragedTolerance = 2e-2;
inline constexpr double kExactBalanceTolerance = 1e-6;

/// Tolerance for the quartic-root versus perturbative-shift rows.
double quartic_tolerance(double coupling);

/// Per (omega, kind) at p = p0:
///   photon_identity        sign (t1 + r1 - 1) vs (omega/partner)(t2 + r2)
///   flux_omega_cosine      flux at omega vs its rainbow-cosine form
///   flux_partner_cosine    same at the partner
///   eps_sum, eps_product, eps3, eps4   quartic roots vs first-order shifts
///   avg_t1, avg_r1, avg_t2, avg_r2     phase-averaged exact solve vs closed forms
///   exact_photon_balance   the photon identity inside the exact solve
/// Skipped samples produce no rows; a failed oracle gives a failing row.
std::vector<OracleRow> compare_oracle(const SweepRequest& request, int phases = 64);

Table oracle_table(const std::vector<OracleRow>& rows);

}  // namespace pdcslab
