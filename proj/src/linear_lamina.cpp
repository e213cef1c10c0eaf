#include "pdcslab/linear_lamina.hpp"

#include "pdcslab/error.hpp"

#include <fmt/format.h>

namespace pdcslab {

FresnelStep fresnel_step(double outer, double inner) {
  if (!(outer > 0.0) || !(inner > 0.0)) {
    throw Error(ErrorCode::domain,
                fmt::format("fresnel step needs positive wavenumbers, got {} and {}", outer,
                            inner));
  }
  FresnelStep s;
  const double sum = outer + inner;
  s.R0 = (outer - inner) / sum;
  s.A0 = 2.0 * outer / sum;
  s.r0 = s.R0 * s.R0;
  // 4 outer inner / sum^2 is A0^2 inner/outer without the 1 - r0 cancellation.
  s.t0 = 4.0 * outer * inner / (sum * sum);
  return s;
}

SlabCoefficients slab_coefficients(const FresnelStep& step) {
  const double denom = 1.0 + step.r0;
  return {2.0 * step.r0 / denom, (1.0 - step.r0) / denom};
}

}  // namespace pdcslab
