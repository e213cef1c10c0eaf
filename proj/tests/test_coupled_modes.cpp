#include "pdcslab/coupled_modes.hpp"
#include "pdcslab/error.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pdcslab;

namespace {

double deg(double d) { return d * std::numbers::pi / 180.0; }

CrystalScenario calibrated(double g = 1e-5, double l = 1000.0) {
  CrystalScenario s;
  s.coupling = g;
  s.thickness = l;
  s.dispersion = calibrate_degenerate_angle(deg(10.0), 1.51);
  return s;
}

CrystalScenario constant_index(double index, double g = 1e-5, double l = 1000.0) {
  CrystalScenario s;
  s.coupling = g;
  s.thickness = l;
  s.dispersion = DispersionModel::constant(index, {1e-3, 10.0});
  return s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::parse;
}

}  // namespace

TEST_CASE("sinc on the complex plane") {
  CHECK(sinc(0.0) == cplx(1.0, 0.0));
  for (cplx z : {cplx(1e-5, 0), cplx(0, 3e-5), cplx(2e-5, -7e-5), cplx(0.3, 0), cplx(0, 1.7),
                 cplx(2.0, 0.5), cplx(9e-5, 0), cplx(1.1e-4, 0)}) {
    INFO("z = ", z);
    CHECK(std::abs(sinc(z) - oracle::sinc_taylor(z)) < 1e-15 * std::abs(oracle::sinc_taylor(z)) + 1e-16);
  }
  // imaginary argument: sinh x / x, real and above 1
  const double x = 0.8;
  CHECK(std::real(sinc(cplx(0, x))) == doctest::Approx(std::sinh(x) / x).epsilon(1e-15));
  CHECK(std::abs(std::imag(sinc(cplx(0, x)))) < 1e-16);
  // continuity across the series switch
  CHECK(std::abs(sinc(0.99999e-4) - sinc(1.00001e-4)) < 1e-12);
}

TEST_CASE("epsilon roots without coupling") {
  auto s = calibrated(0.0);
  const auto r = resonance(s, 0.4, Kind::pdc);
  const auto e = epsilon_roots(s, r, r.p0 + 1e-4);
  CHECK(e.product == 0.0);
  CHECK(e.eps3 == 0.0);
  CHECK(e.eps4 == 0.0);
  CHECK(e.sum != 0.0);
  CHECK(e.xi.real() == doctest::Approx(0.5 * e.sum * s.thickness));
  CHECK(e.xi.imag() == 0.0);
  CHECK(e.eps2 == cplx(0.0, 0.0));
}

TEST_CASE("pdc at exact resonance: imaginary splitting and gain") {
  const auto s = calibrated(1e-4, 500.0);
  const auto r = resonance(s, 0.45, Kind::pdc);
  const auto e = epsilon_roots(s, r, r.p0);
  CHECK(e.sum == 0.0);
  CHECK(e.product > 0.0);
  CHECK(e.eps1.real() == 0.0);
  CHECK(e.eps1.imag() == doctest::Approx(std::sqrt(e.product)).epsilon(1e-15));
  CHECK(e.eps2 == std::conj(e.eps1));
  CHECK(e.xi.real() == 0.0);
  const cplx s2 = sinc(e.xi) * sinc(e.xi);
  CHECK(s2.real() > 1.0);
  CHECK(s2.real() == doctest::Approx(std::pow(std::sinh(e.xi.imag()) / e.xi.imag(), 2)).epsilon(1e-14));
  const double G = 1e-8 * r.omega * r.partner;
  CHECK(e.product == doctest::Approx(G / (4 * r.inner * r.partner_inner)).epsilon(1e-15));
  CHECK(e.eps3 == doctest::Approx(-G / (8 * (r.inner + r.partner_inner) * r.inner * r.inner)));
  CHECK(e.eps4 == doctest::Approx(G / (8 * (r.inner + r.partner_inner) * r.partner_inner * r.partner_inner)));
  CHECK_FALSE(e.beyond_validity);
}

TEST_CASE("puc at exact resonance: real splitting and attenuation") {
  const auto s = calibrated(1e-4, 500.0);
  const auto r = resonance(s, 0.45, Kind::puc);
  const auto e = epsilon_roots(s, r, r.p0);
  CHECK(e.product < 0.0);
  CHECK(e.eps1.imag() == 0.0);
  CHECK(e.eps1.real() == doctest::Approx(std::sqrt(-e.product)).epsilon(1e-15));
  CHECK(e.eps2.real() == doctest::Approx(-std::sqrt(-e.product)).epsilon(1e-15));
  CHECK(e.xi.imag() == 0.0);
  const cplx s2 = sinc(e.xi) * sinc(e.xi);
  CHECK(s2.real() < 1.0);
  CHECK(e.eps3 > 0.0);
  CHECK(e.eps4 < 0.0);
}

TEST_CASE("detuning sum and the validity flag") {
  const auto s = calibrated(1e-5, 1000.0);
  for (Kind kind : {Kind::pdc, Kind::puc}) {
    const auto r = resonance(s, 0.3, kind);
    const double dp = 2e-4;
    const auto e = epsilon_roots(s, r, r.p0 + dp);
    const double w1 = r.inner, w2 = r.partner_inner;
    const double expected = kind == Kind::pdc ? dp * r.p0 * (w1 + w2) / (w1 * w2)
                                              : dp * r.p0 * (w2 - w1) / (w1 * w2);
    CHECK(e.sum == doctest::Approx(expected).epsilon(1e-15));
    CHECK((e.eps1 + e.eps2).real() == doctest::Approx(e.sum).epsilon(1e-12));
    CHECK((e.eps1 * e.eps2).real() == doctest::Approx(e.product).epsilon(1e-9));
    CHECK_FALSE(e.beyond_validity);
    CHECK(epsilon_roots(s, r, r.p0 + 0.02 * r.omega).beyond_validity);
  }
  auto strong = calibrated(0.05);
  const auto r = resonance(strong, 0.3, Kind::pdc);
  CHECK(epsilon_roots(strong, r, r.p0).beyond_validity);
}

TEST_CASE("vanishing internal wavenumber is a geometry error") {
  ResonancePoint r;
  r.omega = 0.5;
  r.partner = 0.5;
  r.inner = 0.0;
  r.partner_inner = 0.7;
  CHECK(code_of([&] { epsilon_roots(calibrated(), r, 0.0); }) == ErrorCode::geometry);
}

TEST_CASE("first iteration") {
  ResonancePoint r;
  r.omega = 1.0;
  r.outer = 1.0;
  r.inner = 1.5;
  EpsilonRoots e;
  e.eps1 = cplx(0.0, 2e-6);
  e.eps2 = cplx(0.0, -2e-6);
  const auto a = first_iteration(r, e);
  CHECK(a.R1.real() == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(a.R1.real() == doctest::Approx(fresnel_step(1.0, 1.5).R0).epsilon(1e-15));
  CHECK(a.R2 == cplx(0.0, 0.0));
  CHECK(std::abs(a.A1 + a.A2 - (1.0 + a.R1)) < 1e-12);
  // third matching equation: the partner derivative carries no incident wave
  CHECK(std::abs(e.eps1 * a.A1 + e.eps2 * a.A2) < 1e-18);

  r.inner = 1.0;
  e.eps1 = 3e-6;
  e.eps2 = -1e-6;
  const auto m = first_iteration(r, e);
  CHECK(m.R1 == cplx(0.0, 0.0));
  CHECK(std::abs(m.A1 + m.A2 - 1.0) < 1e-12);

  e.eps2 = e.eps1;
  CHECK(code_of([&] { first_iteration(r, e); }) == ErrorCode::singular_coupling);
}

TEST_CASE("output amplitudes") {
  SUBCASE("uncoupled slab") {
    const auto s = calibrated(0.0);
    const auto r = resonance(s, 0.4, Kind::pdc);
    const auto e = epsilon_roots(s, r, r.p0);
    CHECK(e.eps1 == e.eps2);
    const auto a = output_amplitudes(s, r, e);
    CHECK(a.T2 == cplx(0.0, 0.0));
    CHECK(a.A4 == cplx(0.0, 0.0));
    const double t = 4 * r.inner * r.outer / std::pow(r.inner + r.outer, 2);
    CHECK(std::abs(a.T1 - t) < 1e-15);
    CHECK(std::abs(a.A1 - (1.0 + a.R1)) < 1e-15);
  }
  SUBCASE("signal grows linearly with thickness near xi = 0") {
    auto s = calibrated(1e-7, 10.0);
    const auto r = resonance(s, 0.4, Kind::pdc);
    const auto t_a = output_amplitudes(s, r, epsilon_roots(s, r, r.p0)).T2;
    s.thickness = 25.0;
    const auto t_b = output_amplitudes(s, r, epsilon_roots(s, r, r.p0)).T2;
    CHECK(std::abs(t_b / t_a - 2.5) < 2.5e-6);
  }
  SUBCASE("index matched: no back reflections") {
    const auto s = constant_index(1.0, 1e-4, 100.0);
    const auto r = resonance(s, 0.3, Kind::pdc);
    const auto a = output_amplitudes(s, r, epsilon_roots(s, r, r.p0));
    CHECK(a.A3 == cplx(0.0, 0.0));
    CHECK(a.A4 == cplx(0.0, 0.0));
    CHECK(a.R1 == cplx(0.0, 0.0));
  }
  SUBCASE("transmitted idler intensity is t10^2 (1 +/- gamma)") {
    for (Kind kind : {Kind::pdc, Kind::puc}) {
      const auto s = calibrated(3e-5, 800.0);
      const auto r = resonance(s, 0.35, kind);
      for (double dp : {0.0, 3e-5, -1e-4}) {
        const auto e = epsilon_roots(s, r, r.p0 + dp);
        const auto a = output_amplitudes(s, r, e);
        const double gamma = gain_factor(s, r, e);
        const double t10 = fresnel_step(r.outer, r.inner).t0;
        const double sigma = kind == Kind::pdc ? 1.0 : -1.0;
        INFO("kind ", to_string(kind), " dp ", dp);
        CHECK(std::norm(a.T1) == doctest::Approx(t10 * t10 * (1 + sigma * gamma)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gain factor at the degenerate point") {
  // g l omega0 = 0.01 and a small splitting: gamma -> (g l omega0)^2 / (4 mu2^2)
  const auto s = calibrated(1e-5, 1000.0);
  const auto r = resonance(s, 0.5, Kind::pdc);
  const auto e = epsilon_roots(s, r, r.p0);
  const double gamma = gain_factor(s, r, e);
  const double hand = 1e-4 / (4 * 1.51 * 1.51);
  CHECK(hand == doctest::Approx(1.0965e-5).epsilon(1e-4));
  CHECK(gamma == doctest::Approx(hand).epsilon(1e-5));
  CHECK(gamma > hand);
}

TEST_CASE("channel coefficients") {
  const auto c = channel_coefficients(0.0, 0.04, 0.03, 0.4, 0.6, Kind::pdc);
  CHECK(c.r1 + c.t1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.t2 == 0.0);
  CHECK(c.r2 == 0.0);
  const auto p = channel_coefficients(1e-3, 0.04, 0.03, 0.4, 0.6, Kind::pdc);
  const auto u = channel_coefficients(1e-3, 0.04, 0.03, 0.4, 1.4, Kind::puc);
  CHECK(p.t1_gain == doctest::Approx(1e-3 / (1.04 * 1.04)));
  CHECK(u.t1_gain == doctest::Approx(-1e-3 / (1.04 * 1.04)));
  CHECK(p.t2 == doctest::Approx(1.5e-3 / (1.04 * 1.03)));
  CHECK(p.r2 == doctest::Approx(p.t2 * 0.03));
  CHECK(u.t2 == doctest::Approx(3.5e-3 / (1.04 * 1.03)));
  CHECK(p.t1 + p.r1 - 1 == doctest::Approx(p.t1_gain + p.r1_gain).epsilon(1e-9));
}

TEST_CASE("reports without coupling reduce to the linear slab") {
  const auto s = calibrated(0.0);
  for (Kind kind : {Kind::pdc, Kind::puc}) {
    const auto rep = resonant_report(s, 0.3, kind);
    const auto lin = slab_coefficients(fresnel_step(rep.omega * std::cos(rep.angle), 0.0 + std::sqrt(std::pow(rep.omega * s.dispersion.mu(rep.omega), 2) - rep.p0 * rep.p0)));
    CHECK(rep.gamma == 0.0);
    CHECK(rep.idler_photons == 0.0);
    CHECK(rep.signal_photons == 0.0);
    CHECK(rep.flux_omega == 0.0);
    CHECK(rep.r1 + rep.t1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rep.r1 == doctest::Approx(lin.r).epsilon(1e-12));
    CHECK(rep.t1 == doctest::Approx(lin.t).epsilon(1e-12));
    CHECK(std::isnan(rep.ratio));
  }
}

TEST_CASE("flux ratio is the inverse cosine ratio") {
  const auto s = calibrated(2e-5, 700.0);
  for (double w : {0.2, 0.3, 0.45, 0.5, 0.62, 0.8}) {
    const auto rep = resonant_report(s, w, Kind::pdc);
    INFO("omega = ", w);
    CHECK(rep.ratio == doctest::Approx(std::cos(rep.partner_angle) / std::cos(rep.angle)).epsilon(1e-12));
    CHECK(rep.flux_omega == doctest::Approx(rep.flux_omega_cosine).epsilon(1e-12));
    CHECK(rep.flux_partner == doctest::Approx(rep.flux_partner_cosine).epsilon(1e-12));
  }
  // red photons outnumber blue ones
  CHECK(resonant_report(s, 0.25, Kind::pdc).ratio == doctest::Approx(1.03181365612).epsilon(1e-10));
}

TEST_CASE("puc fluxes: positive at omega, negative at the partner") {
  const auto s = calibrated(2e-5, 700.0);
  for (double w : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto rep = resonant_report(s, w, Kind::puc);
    INFO("omega = ", w);
    CHECK(rep.flux_omega > 0.0);
    CHECK(rep.flux_partner < 0.0);
    CHECK(rep.idler_photons < 0.0);
    CHECK(rep.signal_photons > 0.0);
    CHECK(rep.flux_omega == doctest::Approx(rep.flux_omega_cosine).epsilon(1e-12));
    CHECK(rep.flux_partner == doctest::Approx(rep.flux_partner_cosine).epsilon(1e-12));
  }
}

TEST_CASE("gain factor is symmetric under omega <-> omega0 - omega") {
  const auto s = calibrated(1e-5, 2000.0);
  for (double w : {0.15, 0.33, 0.47}) {
    CHECK(resonant_report(s, w, Kind::pdc).gamma ==
          doctest::Approx(resonant_report(s, 1.0 - w, Kind::pdc).gamma).epsilon(1e-12));
  }
}

TEST_CASE("outputs converge to the linear slab at second order in g") {
  const auto lin = resonant_report(calibrated(0.0), 0.4, Kind::pdc);
  const double d3 = resonant_report(calibrated(1e-3, 10.0), 0.4, Kind::pdc).t1 - lin.t1;
  const double d4 = resonant_report(calibrated(1e-4, 10.0), 0.4, Kind::pdc).t1 - lin.t1;
  CHECK(d3 / d4 == doctest::Approx(100.0).epsilon(1e-3));
}

TEST_CASE("gain peaks at the phase-matched p") {
  const auto s = calibrated(1e-5, 3000.0);
  const auto r = resonance(s, 0.4, Kind::pdc);
  const double step = 1e-6;
  double best_p = 0.0, best = -1.0;
  for (int i = -200; i <= 200; ++i) {
    const double p = r.p0 + i * step;
    const double g = channel_report(s, r, p).gamma;
    if (g > best) {
      best = g;
      best_p = p;
    }
  }
  CHECK(std::abs(best_p - r.p0) <= step);
}

TEST_CASE("rainbow split") {
  SUBCASE("no internal reflection") {
    const auto c = channel_coefficients(1e-5, 0.0, 0.0, 0.5, 0.5, Kind::pdc);
    CHECK(rainbow_split(c).forward == 1.0);
    CHECK(rainbow_split(c).backward == 0.0);
  }
  SUBCASE("reflectance 0.022 and 0.04") {
    const auto a = rainbow_split(channel_coefficients(1e-5, 0.022, 0.022, 0.5, 0.5, Kind::pdc));
    const auto b = rainbow_split(channel_coefficients(1e-5, 0.04, 0.04, 0.5, 0.5, Kind::pdc));
    CHECK(a.forward == doctest::Approx(0.96).epsilon(0.01 / 0.96));
    CHECK(b.forward == doctest::Approx(0.92).epsilon(0.01 / 0.92));
    CHECK(a.forward + a.backward == doctest::Approx(1.0));
    // leading order (1 - r) / (1 + r)
    CHECK(a.forward == doctest::Approx(0.978 / 1.022).epsilon(1e-4));
  }
  SUBCASE("excess-only split") {
    const auto s = constant_index(1.349, 1e-5, 1000.0);
    const auto rep = resonant_report(s, 0.5, Kind::pdc);
    const auto x = excess_split(rep);
    CHECK(x.forward == doctest::Approx(1.0 / (1.0 + rep.r10)).epsilon(1e-6));
    CHECK(x.forward + x.backward == doctest::Approx(1.0));
    CHECK(code_of([&] { excess_split(resonant_report(constant_index(1.349, 0.0), 0.5, Kind::pdc)); }) ==
          ErrorCode::undefined_split);
  }
}

TEST_CASE("property: photon identities hold to 1e-10") {
  gen::Source src(31337);
  for (int i = 0; i < 400; ++i) {
    auto c = gen::calibrated_case(src);
    INFO("seed ", src.seed(), " case ", i, " ", c.describe());
    for (Kind kind : {Kind::pdc, Kind::puc}) {
      const auto rep = resonant_report(c.scenario, c.omega, kind);
      const double sigma = kind == Kind::pdc ? 1.0 : -1.0;
      const double lhs = sigma * 2 * rep.idler_photons;
      const double mid = rep.omega / rep.partner * (rep.t2 + rep.r2);
      const double rhs = rep.gamma / (1 + rep.r10);
      CHECK(rep.gamma >= 0.0);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
      CHECK(std::abs(mid - rhs) <= 1e-10 * rhs);
    }
  }
}
