#pragma once

// Real refractive index mu(omega) of the crystal over a finite working band.
//
// Units follow the c = 1 convention: frequencies are wavenumbers (inverse
// length) and every angle is measured outside the crystal.

// Boost 1.74's pchip calls unqualified isnan; math.h puts it in the global namespace.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdcslab {

/// Closed validity interval [lo, hi] with lo > 0.
struct Band {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double omega) const { return omega >= lo && omega <= hi; }
};

enum class DispersionKind { constant, sellmeier, tabulated };

std::string_view to_string(DispersionKind kind);

/// One oscillator of mu^2(w) = background + sum_i B_i / (1 - (w / w_i)^2).
struct SellmeierTerm {
  double strength = 0.0;   // B_i
  double resonance = 0.0;  // w_i
};

class DispersionModel {
 public:
  static DispersionModel constant(double index, Band band);
  static DispersionModel sellmeier(double background,
                                   std::vector<SellmeierTerm> terms, Band band);
  /// Monotone cubic (PCHIP) interpolation of mu^2 through the given nodes.
  /// The band is the node span; at least four nodes are required.
  static DispersionModel tabulated(std::vector<double> frequencies,
                                   std::vector<double> indices);

  /// Refractive index at omega. Throws Error(domain) outside the band.
  double mu(double omega) const;
  double operator()(double omega) const { return mu(omega); }

  DispersionKind kind() const { return kind_; }
  const Band& band() const { return band_; }

  double constant_index() const { return constant_index_; }
  double background() const { return background_; }
  const std::vector<SellmeierTerm>& terms() const { return terms_; }
  const std::vector<double>& node_frequencies() const { return node_frequencies_; }
  const std::vector<double>& node_indices() const { return node_indices_; }

  /// Flat key=value record, one entry per line. Doubles are written in
  /// shortest round-trip form so parse(serialize()) reproduces every bit.
  std::string serialize() const;
  static DispersionModel parse(std::string_view text);

 private:
  DispersionModel() = default;
  double mu_squared_unchecked(double omega) const;
  void check_physical() const;

  DispersionKind kind_ = DispersionKind::constant;
  Band band_;
  double constant_index_ = 1.0;
  double background_ = 1.0;
  std::vector<SellmeierTerm> terms_;
  std::vector<double> node_frequencies_;
  std::vector<double> node_indices_;
  std::optional<boost::math::interpolators::pchip<std::vector<double>>> spline_;
};

inline double mu(const DispersionModel& model, double omega) {
  return model.mu(omega);
}

/// Default calibration band in units of omega0.
inline constexpr double kCalibratedBandLo = 0.01;
inline constexpr double kCalibratedBandHi = 3.0;

/// Tabulated model whose degenerate PDC angle is theta_d.
///
/// mu^2 is anchored at omega0/2, omega0 and 3*omega0/2 to
///   mu^2(omega0/2)   = mu_pump^2 + sin^2(theta_d)
///   mu^2(omega0)     = mu_pump^2
///   mu^2(3 omega0/2) = mu_pump^2 - sin^2(theta_d)
/// and continued with the same slope to the band edges, so mu^2 is linear
/// in omega across the band. Throws Error(calibration) when mu would drop
/// below 1 anywhere in the band.
DispersionModel calibrate_degenerate_angle(double theta_d, double mu_pump,
                                           double omega0 = 1.0,
                                           double band_lo = kCalibratedBandLo,
                                           double band_hi = kCalibratedBandHi);

}  // namespace pdcslab
