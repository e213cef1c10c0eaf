#include "pdcslab/kinematics.hpp"

#include "pdcslab/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <functional>

namespace pdcslab {

std::string_view to_string(Kind kind) { return kind == Kind::pdc ? "pdc" : "puc"; }

void CrystalScenario::validate() const {
  if (!(omega0 > 0.0)) throw Error(ErrorCode::domain, "pump frequency must be positive");
  if (!(coupling >= 0.0)) throw Error(ErrorCode::domain, "coupling g must be >= 0");
  if (!(thickness > 0.0)) throw Error(ErrorCode::domain, "thickness must be positive");
  if (!(guard >= 0.0) || !(guard < 0.5)) {
    throw Error(ErrorCode::domain, "guard band must lie in [0, 0.5) omega0");
  }
  if (!dispersion.band().contains(omega0)) {
    throw Error(ErrorCode::domain,
                fmt::format("pump frequency {} outside dispersion band [{}, {}]", omega0,
                            dispersion.band().lo, dispersion.band().hi));
  }
}

namespace {

double positive_root(double radicand, std::string_view what, double omega, double p) {
  if (!(radicand > 0.0)) {
    throw Error(ErrorCode::regime,
                fmt::format("evanescent {} wave at omega = {}, p = {} (radicand {})", what, omega,
                            p, radicand));
  }
  return std::sqrt(radicand);
}

void check_harmonics(double x, double omega0, double guard, std::string_view what) {
  const double n = std::round(x / omega0);
  if (n >= 1.0 && std::abs(x - n * omega0) <= guard * omega0) {
    throw Error(ErrorCode::domain,
                fmt::format("{} frequency {} within guard band {} omega0 of {} omega0", what, x,
                            guard, n));
  }
}

// Bracketed bisection on a scanned sign change, then a secant polish.
double solve_phase_matching(const std::function<double(double)>& f, double p_max,
                            double tolerance, const ResonancePoint& where) {
  const double f0 = f(0.0);
  if (std::abs(f0) <= tolerance) return 0.0;

  constexpr int kScan = 64;
  double lo = 0.0, flo = f0;
  double hi = 0.0, fhi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= kScan; ++i) {
    const double p = p_max * i / kScan;
    const double fp = f(p);
    if (fp == 0.0) return p;
    if ((fp > 0.0) != (flo > 0.0)) {
      hi = p;
      fhi = fp;
      bracketed = true;
      break;
    }
    lo = p;
    flo = fp;
  }
  if (!bracketed) {
    throw Error(ErrorCode::no_resonance,
                fmt::format("no {} resonance for omega = {}: residual keeps sign {} on p in "
                            "[0, {}]",
                            to_string(where.kind), where.omega, f0 > 0 ? "+" : "-", p_max));
  }

  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double fbest = std::min(std::abs(flo), std::abs(fhi));
  if (fhi != flo) {
    const double secant = hi - fhi * (hi - lo) / (fhi - flo);
    if (secant >= lo && secant <= hi) {
      const double fs = std::abs(f(secant));
      if (fs < fbest) {
        best = secant;
        fbest = fs;
      }
    }
  }
  return best;
}

ResonancePoint finish(const CrystalScenario& s, ResonancePoint r) {
  const auto k = longitudinal(s, r.omega, r.p0, r.kind);
  r.inner = k.inner;
  r.partner_inner = k.partner_inner;
  r.outer = k.outer;
  r.partner_outer = k.partner_outer;
  r.angle = std::asin(r.p0 / r.omega);
  r.partner_angle = std::asin(r.p0 / r.partner);
  const double sum = r.kind == Kind::pdc ? k.inner + k.partner_inner
                                         : k.partner_inner - k.inner;
  r.residual = sum - s.pump_wavenumber();
  return r;
}

}  // namespace

void check_guard_band(const CrystalScenario& scenario, double omega, Kind kind) {
  check_harmonics(omega, scenario.omega0, scenario.guard, "input");
  check_harmonics(partner_frequency(scenario.omega0, omega, kind), scenario.omega0,
                  scenario.guard, "partner");
}

ModeKinematics longitudinal(const CrystalScenario& scenario, double omega, double p,
                            Kind kind) {
  if (!(omega > 0.0)) throw Error(ErrorCode::domain, "frequency must be positive");
  if (kind == Kind::pdc && !(omega < scenario.omega0)) {
    throw Error(ErrorCode::domain,
                fmt::format("pdc needs 0 < omega < omega0, got omega = {}", omega));
  }
  if (!(p >= 0.0)) throw Error(ErrorCode::domain, "transverse wavenumber must be >= 0");
  check_guard_band(scenario, omega, kind);

  ModeKinematics k;
  k.kind = kind;
  k.omega = omega;
  k.omega0 = scenario.omega0;
  k.partner = partner_frequency(scenario.omega0, omega, kind);
  k.p = p;
  const double n1 = scenario.dispersion.mu(omega);
  const double n2 = scenario.dispersion.mu(k.partner);
  k.inner = positive_root(omega * n1 * omega * n1 - p * p, "internal", omega, p);
  k.partner_inner =
      positive_root(k.partner * n2 * k.partner * n2 - p * p, "internal partner", k.partner, p);
  k.outer = positive_root(omega * omega - p * p, "free-space", omega, p);
  k.partner_outer =
      positive_root(k.partner * k.partner - p * p, "free-space partner", k.partner, p);
  return k;
}

ModeKinematics ResonancePoint::kinematics() const {
  ModeKinematics k;
  k.kind = kind;
  k.omega = omega;
  k.partner = partner;
  k.omega0 = kind == Kind::pdc ? omega + partner : partner - omega;
  k.p = p0;
  k.inner = inner;
  k.partner_inner = partner_inner;
  k.outer = outer;
  k.partner_outer = partner_outer;
  return k;
}

ResonancePoint pdc_resonance(const CrystalScenario& s, double omega) {
  // Validates omega, band and guard at p = 0.
  const auto k0 = longitudinal(s, omega, 0.0, Kind::pdc);
  const double K = s.pump_wavenumber();
  const double n1 = s.dispersion.mu(omega);
  const double n2 = s.dispersion.mu(k0.partner);
  const double a = omega * n1 * omega * n1;
  const double b = k0.partner * n2 * k0.partner * n2;
  auto f = [&](double p) { return std::sqrt(a - p * p) + std::sqrt(b - p * p) - K; };

  ResonancePoint r;
  r.kind = Kind::pdc;
  r.omega = omega;
  r.partner = k0.partner;
  r.p0 = solve_phase_matching(f, 0.999 * std::min(omega, k0.partner),
                              0.1 * kResidualTolerance * s.omega0, r);
  return finish(s, r);
}

ResonancePoint puc_resonance(const CrystalScenario& s, double omega) {
  const auto k0 = longitudinal(s, omega, 0.0, Kind::puc);
  const double K = s.pump_wavenumber();
  const double n1 = s.dispersion.mu(omega);
  const double n2 = s.dispersion.mu(k0.partner);
  const double a = omega * n1 * omega * n1;
  const double b = k0.partner * n2 * k0.partner * n2;
  auto f = [&](double p) { return std::sqrt(b - p * p) - std::sqrt(a - p * p) - K; };

  ResonancePoint r;
  r.kind = Kind::puc;
  r.omega = omega;
  r.partner = k0.partner;
  r.p0 = solve_phase_matching(f, 0.999 * omega, 0.1 * kResidualTolerance * s.omega0, r);
  return finish(s, r);
}

ResonancePoint resonance(const CrystalScenario& scenario, double omega, Kind kind) {
  return kind == Kind::pdc ? pdc_resonance(scenario, omega) : puc_resonance(scenario, omega);
}

DegenerateForms degenerate_closed_forms(double mu1, double mu2, double mu3) {
  if (!(mu1 > 1.0) || !(mu2 > 1.0) || !(mu3 > 1.0)) {
    throw Error(ErrorCode::geometry, "degenerate closed forms need indices > 1");
  }
  const double m1 = mu1 * mu1, m2 = mu2 * mu2, m3 = mu3 * mu3;
  DegenerateForms d;
  d.qd = m1 - m2;
  const double inner = 9.0 * m3 - 4.0 * m2 + m1;
  d.qu_exact = (36.0 * m1 * m3 - inner * inner) / (16.0 * m2);
  d.qu_quadratic = 6.0 * d.qd - 25.0 * d.qd * d.qd / (4.0 * m2);
  for (double* q : {&d.qd, &d.qu_exact, &d.qu_quadratic}) {
    // Rounding residue of an exactly dispersionless input.
    if (*q < 0.0 && *q > -1e-14) *q = 0.0;
    if (!(*q >= 0.0) || !(*q < 1.0)) {
      throw Error(ErrorCode::geometry,
                  fmt::format("sin^2 of rainbow angle = {} outside [0, 1)", *q));
    }
  }
  return d;
}

}  // namespace pdcslab
