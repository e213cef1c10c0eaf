#include "pdcslab/coupled_modes.hpp"

#include "pdcslab/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace pdcslab {

namespace {

constexpr cplx kI{0.0, 1.0};

double sign_of(Kind kind) { return kind == Kind::pdc ? 1.0 : -1.0; }

}  // namespace

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

EpsilonRoots epsilon_roots(const CrystalScenario& scenario, const ResonancePoint& res,
                           double p) {
  const double w1 = res.inner;
  const double w2 = res.partner_inner;
  if (!(w1 > 0.0) || !(w2 > 0.0)) {
    throw Error(ErrorCode::geometry,
                fmt::format("zero longitudinal wavenumber at resonance (w1 = {}, w2 = {})", w1,
                            w2));
  }
  const double g = scenario.coupling;
  const double w0 = scenario.omega0;
  const double G = g * g * w0 * w0 * res.omega * res.partner;
  const double dp = p - res.p0;

  EpsilonRoots e;
  e.kind = res.kind;
  if (res.kind == Kind::pdc) {
    e.sum = dp * res.p0 * (w1 + w2) / (w1 * w2);
    e.product = G / (4.0 * w1 * w2);
    e.eps3 = -G / (8.0 * (w1 + w2) * w1 * w1);
    e.eps4 = G / (8.0 * (w1 + w2) * w2 * w2);
  } else {
    if (!(w2 > w1)) {
      throw Error(ErrorCode::geometry,
                  fmt::format("puc needs w2 > w1 at resonance (w1 = {}, w2 = {})", w1, w2));
    }
    // Forward partner: the detuning enters through d(W2 - W1)/dp.
    e.sum = dp * res.p0 * (w2 - w1) / (w1 * w2);
    e.product = -G / (4.0 * w1 * w2);
    e.eps3 = G / (8.0 * (w2 - w1) * w1 * w1);
    e.eps4 = -G / (8.0 * (w2 - w1) * w2 * w2);
  }

  const double disc = e.sum * e.sum - 4.0 * e.product;
  if (disc >= 0.0) {
    // Real pair; the smaller root from the product avoids cancellation.
    const double big = 0.5 * (e.sum + std::copysign(std::sqrt(disc), e.sum == 0.0 ? 1.0 : e.sum));
    const double small = big != 0.0 ? e.product / big : 0.0;
    e.eps1 = std::max(big, small);
    e.eps2 = std::min(big, small);
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    e.eps1 = cplx(0.5 * e.sum, im);
    e.eps2 = cplx(0.5 * e.sum, -im);
  }
  e.xi = 0.5 * (e.eps1 - e.eps2) * scenario.thickness;
  e.beyond_validity = std::abs(dp) > 0.01 * res.omega || !scenario.weak_coupling();
  return e;
}

double gain_factor(const CrystalScenario& scenario, const ResonancePoint& res,
                   const EpsilonRoots& roots) {
  const double g = scenario.coupling;
  const double l = scenario.thickness;
  const double w0 = scenario.omega0;
  const cplx s = sinc(roots.xi);
  return g * g * l * l * w0 * w0 * res.omega * res.partner /
         (4.0 * res.inner * res.partner_inner) * std::real(s * s);
}

ScatterSolution first_iteration(const ResonancePoint& res, const EpsilonRoots& roots) {
  if (roots.eps1 == roots.eps2) {
    throw Error(ErrorCode::singular_coupling,
                "coincident wavenumber shifts (g = 0 at exact resonance); use the uncoupled "
                "solution");
  }
  const double w1 = res.inner;
  const double w10 = res.outer;
  ScatterSolution s;
  s.R1 = (w10 - w1) / (w10 + w1);
  s.R2 = 0.0;
  const cplx denom = (roots.eps2 - roots.eps1) * (w10 + w1);
  s.A1 = 2.0 * roots.eps2 * w10 / denom;
  s.A2 = -2.0 * roots.eps1 * w10 / denom;
  return s;
}

ScatterSolution output_amplitudes(const CrystalScenario& scenario, const ResonancePoint& res,
                                  const EpsilonRoots& roots) {
  const double w1 = res.inner, w10 = res.outer;
  const double w2 = res.partner_inner, w20 = res.partner_outer;
  const double l = scenario.thickness;
  const double gl = scenario.coupling * l * scenario.omega0;

  ScatterSolution s;
  if (roots.eps1 == roots.eps2) {
    s.R1 = (w10 - w1) / (w10 + w1);
    s.A1 = 1.0 + s.R1;
  } else {
    s = first_iteration(res, roots);
  }
  const cplx sx = sinc(roots.xi);
  const cplx envelope = (1.0 - kI * roots.eps1 * l * std::exp(-kI * roots.xi) * sx) *
                        std::exp(kI * roots.eps1 * l);
  const double a = w1 + w10;
  s.T1 = 4.0 * w1 * w10 / (a * a) * envelope;
  s.A3 = 2.0 * (w1 - w10) * w10 / (a * a) * envelope;
  s.T2 = 2.0 * gl * w10 * res.partner * sx / (a * (w2 + w20));
  s.A4 = gl * w10 * (w2 - w20) * res.partner * sx / (w2 * a * (w2 + w20));
  return s;
}

ChannelCoefficients channel_coefficients(double gamma, double r10, double r20, double omega,
                                         double partner, Kind kind) {
  const double sigma = sign_of(kind);
  const double d1 = 1.0 + r10;
  ChannelCoefficients c;
  c.r1_gain = sigma * gamma * r10 / (d1 * d1);
  c.t1_gain = sigma * gamma / (d1 * d1);
  c.r1 = 2.0 * r10 / d1 + c.r1_gain;
  c.t1 = (1.0 - r10) / d1 + c.t1_gain;
  c.t2 = partner * gamma / (omega * d1 * (1.0 + r20));
  c.r2 = c.t2 * r20;
  return c;
}

ChannelReport channel_report(const CrystalScenario& scenario, const ResonancePoint& res,
                             double p) {
  scenario.validate();
  const auto roots = epsilon_roots(scenario, res, p);

  ChannelReport rep;
  rep.kind = res.kind;
  rep.omega = res.omega;
  rep.partner = res.partner;
  rep.p = p;
  rep.p0 = res.p0;
  rep.angle = res.angle;
  rep.partner_angle = res.partner_angle;
  rep.xi = roots.xi;
  rep.beyond_validity = roots.beyond_validity;
  rep.gamma = gain_factor(scenario, res, roots);

  const auto s1 = fresnel_step(res.outer, res.inner);
  const auto s2 = fresnel_step(res.partner_outer, res.partner_inner);
  rep.r10 = s1.r0;
  rep.t10 = s1.t0;
  rep.r20 = s2.r0;
  rep.t20 = s2.t0;

  const auto c = channel_coefficients(rep.gamma, rep.r10, rep.r20, res.omega, res.partner,
                                      res.kind);
  rep.r1 = c.r1;
  rep.t1 = c.t1;
  rep.r2 = c.r2;
  rep.t2 = c.t2;
  rep.idler_photons = 0.5 * (c.t1_gain + c.r1_gain);
  rep.signal_photons = 0.5 * (c.t2 + c.r2) * res.outer / res.partner_outer;

  // Conjugate zeropoint input at the partner frequency, same p0.
  const auto cc = channel_coefficients(rep.gamma, rep.r20, rep.r10, res.partner, res.omega,
                                       res.kind);
  const double conj_idler = 0.5 * (cc.t1_gain + cc.r1_gain);
  const double conj_signal = 0.5 * (cc.t2 + cc.r2) * res.partner_outer / res.outer;
  rep.flux_omega = rep.idler_photons + conj_signal;
  rep.flux_partner = conj_idler + rep.signal_photons;

  const double cos1 = std::cos(res.angle);
  const double cos2 = std::cos(res.partner_angle);
  const double h = 0.5 * rep.gamma;
  const double d1 = 1.0 + rep.r10, d2 = 1.0 + rep.r20;
  if (res.kind == Kind::pdc) {
    rep.flux_omega_cosine = h * (1.0 / d1 + cos2 / cos1 / d2);
    rep.flux_partner_cosine = h * (1.0 / d2 + cos1 / cos2 / d1);
  } else {
    rep.flux_omega_cosine = h * (cos2 / cos1 / d2 - 1.0 / d1);
    rep.flux_partner_cosine = h * (cos1 / cos2 / d1 - 1.0 / d2);
  }
  rep.ratio = rep.flux_partner != 0.0 ? rep.flux_omega / rep.flux_partner
                                      : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

ChannelReport channel_report(const CrystalScenario& scenario, double omega, double p,
                             Kind kind) {
  return channel_report(scenario, resonance(scenario, omega, kind), p);
}

ChannelReport resonant_report(const CrystalScenario& scenario, double omega, Kind kind) {
  const auto res = resonance(scenario, omega, kind);
  return channel_report(scenario, res, res.p0);
}

RainbowSplit rainbow_split(const ChannelCoefficients& c) {
  const double forward = c.t1 + c.t2;
  const double total = forward + c.r1 + c.r2;
  return {forward / total, (c.r1 + c.r2) / total};
}

RainbowSplit rainbow_split(const ChannelReport& r) {
  return rainbow_split(ChannelCoefficients{r.r1, r.t1, r.r2, r.t2, 0.0, 0.0});
}

RainbowSplit excess_split(const ChannelReport& r) {
  const auto lin = slab_coefficients(FresnelStep{0.0, 0.0, r.r10, r.t10});
  const double forward = r.t1 - lin.t + r.t2;
  const double backward = r.r1 - lin.r + r.r2;
  const double total = forward + backward;
  if (total == 0.0) {
    throw Error(ErrorCode::undefined_split, "no pump-induced excess intensity to split");
  }
  return {forward / total, backward / total};
}

}  // namespace pdcslab
