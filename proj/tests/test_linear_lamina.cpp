#include "pdcslab/error.hpp"
#include "pdcslab/linear_lamina.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace pdcslab;

TEST_CASE("index-matched interface") {
  const auto s = fresnel_step(0.7, 0.7);
  CHECK(s.R0 == 0.0);
  CHECK(s.A0 == 1.0);
  CHECK(s.r0 == 0.0);
  CHECK(s.t0 == 1.0);
}

TEST_CASE("interface into index 1.5 and 3") {
  const auto a = fresnel_step(1.0, 1.5);
  CHECK(a.R0 == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(a.A0 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(a.r0 == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(a.t0 == doctest::Approx(0.96).epsilon(1e-15));
  CHECK(a.t0 == doctest::Approx(a.A0 * a.A0 * 1.5).epsilon(1e-15));
  const auto b = fresnel_step(1.0, 3.0);
  CHECK(b.R0 == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(b.r0 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(b.t0 == doctest::Approx(0.75).epsilon(1e-15));
  // leaving a denser medium flips the amplitude sign only
  CHECK(fresnel_step(1.5, 1.0).R0 == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("nonpositive wavenumbers are domain errors") {
  for (auto [o, i] : {std::pair{0.0, 1.0}, {1.0, 0.0}, {-1.0, 1.0}, {1.0, -2.0}}) {
    try {
      fresnel_step(o, i);
      FAIL("expected domain error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::domain);
    }
  }
}

TEST_CASE("slab coefficients against the reflection series") {
  CHECK(slab_coefficients(fresnel_step(1.0, 1.0)).r == 0.0);
  CHECK(slab_coefficients(fresnel_step(1.0, 1.0)).t == 1.0);
  const auto s04 = slab_coefficients(fresnel_step(1.0, 1.5));
  const auto o04 = oracle::slab_by_series(0.04, 30);
  CHECK(s04.r == doctest::Approx(o04.r).epsilon(1e-12));
  CHECK(s04.t == doctest::Approx(o04.t).epsilon(1e-12));
  CHECK(s04.r == doctest::Approx(0.076923).epsilon(1e-5));
  CHECK(s04.t == doctest::Approx(0.923077).epsilon(1e-6));
  const auto s25 = slab_coefficients(fresnel_step(1.0, 3.0));
  const auto o25 = oracle::slab_by_series(0.25, 60);
  CHECK(s25.r == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(s25.t == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(s25.r == doctest::Approx(o25.r).epsilon(1e-12));
}

TEST_CASE("property: r + t = 1 on a fine reflectance grid") {
  for (int i = 0; i <= 999; ++i) {
    const double r0 = i * 1e-3;
    const double R = std::sqrt(r0);
    const auto step = fresnel_step(1.0, (1.0 + R) / (1.0 - R));
    INFO("r0 = ", r0);
    CHECK(step.r0 == doctest::Approx(r0).epsilon(1e-12));
    CHECK(std::abs(step.r0 + step.t0 - 1.0) < 1e-14);
    const auto c = slab_coefficients(step);
    CHECK(std::abs(c.r + c.t - 1.0) < 1e-14);
    if (r0 <= 0.5) {
      const auto o = oracle::slab_by_series(step.r0, 200);
      CHECK(std::abs(c.r - o.r) < 1e-12);
      CHECK(std::abs(c.t - o.t) < 1e-12);
    }
  }
}
