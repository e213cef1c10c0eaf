#include "pdcslab/coupled_modes.hpp"

#include "pdcslab/error.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdcslab {

namespace {

using cld = std::complex<long double>;

// P(y) = prod_i (y + d_i) - G and its derivative, with d_i = anchor - z_i.
void shifted_poly(const std::array<long double, 4>& d, long double G, cld y, cld& value,
                  cld& slope) {
  std::array<cld, 4> f;
  for (int i = 0; i < 4; ++i) f[i] = y + d[i];
  value = f[0] * f[1] * f[2] * f[3] - G;
  slope = f[1] * f[2] * f[3] + f[0] * f[2] * f[3] + f[0] * f[1] * f[3] + f[0] * f[1] * f[2];
}

cld polish(const std::array<long double, 4>& z, long double anchor, long double G, cld y) {
  std::array<long double, 4> d;
  for (int i = 0; i < 4; ++i) d[i] = anchor - z[i];
  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int it = 0; it < 60; ++it) {
    cld value, slope;
    shifted_poly(d, G, y, value, slope);
    if (value == cld(0) || slope == cld(0)) break;
    const cld step = value / slope;
    y -= step;
    if (std::abs(step) <= 4 * eps * std::max(std::abs(y), eps)) break;
  }
  return y;
}

// Monic quartic in x = k - W1 with roots x = z_i - W1, minus G.
Eigen::Vector4cd companion_roots(const std::array<double, 4>& roots, double G) {
  // prod (x - r_i), coefficients lowest order first
  std::array<double, 5> poly{1.0, 0.0, 0.0, 0.0, 0.0};
  int deg = 0;
  for (double r : roots) {
    for (int j = deg + 1; j > 0; --j) poly[j] = poly[j - 1] - r * poly[j];
    poly[0] = -r * poly[0];
    ++deg;
  }
  poly[0] -= G;
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) m(i, 3) = -poly[i];
  Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::degenerate_root, "companion eigenvalue solve did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace

QuarticRoots quartic_wavenumbers(const CrystalScenario& scenario, const ModeKinematics& kin) {
  const long double W1 = kin.inner;
  const long double W2 = kin.partner_inner;
  const long double K = scenario.pump_wavenumber();
  const bool pdc = kin.kind == Kind::pdc;
  const long double forward = pdc ? K - W2 : W2 - K;
  const long double backward = pdc ? K + W2 : -K - W2;
  const long double g = scenario.coupling;
  const long double w0 = scenario.omega0;
  const long double G = g * g * w0 * w0 * kin.omega * kin.partner;

  const std::array<long double, 4> z{W1, forward, -W1, backward};

  QuarticRoots out;
  out.kind = kin.kind;
  const std::array<long double, 4> reference{W1, W1, -W1, backward};

  std::array<long double, 4> anchor{W1, forward, -W1, backward};
  std::array<cld, 4> y{};
  if (G != 0.0L) {
    const std::array<double, 4> shifted{0.0, static_cast<double>(forward - W1),
                                        static_cast<double>(-2 * W1),
                                        static_cast<double>(backward - W1)};
    const auto est = companion_roots(shifted, static_cast<double>(G));

    auto dist = [&](int root, int slot) -> double {
      const cplx k = est[root] + cplx(static_cast<double>(W1), 0.0);
      if (slot < 2) {
        return std::min(std::abs(k - static_cast<double>(W1)),
                        std::abs(k - static_cast<double>(forward)));
      }
      return std::abs(k - static_cast<double>(z[slot]));
    };
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    std::array<int, 4> pick{};
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        if (b == a) continue;
        std::array<int, 2> rest{};
        int n = 0;
        for (int r = 0; r < 4; ++r)
          if (r != a && r != b) rest[n++] = r;
        const double cost = dist(a, 2) + dist(b, 3) + dist(rest[0], 0) + dist(rest[1], 0);
        if (cost < best) {
          second = best;
          best = cost;
          pick = {rest[0], rest[1], a, b};
        } else if (cost < second) {
          second = cost;
        }
      }
    }
    const double scale = std::abs(static_cast<double>(W1)) + std::abs(static_cast<double>(K));
    if (second - best <= 1e-9 * scale) {
      throw Error(ErrorCode::degenerate_root,
                  fmt::format("ambiguous branch assignment (costs {} and {})", best, second));
    }

    for (int slot = 0; slot < 4; ++slot) {
      const cplx k = est[pick[slot]] + cplx(static_cast<double>(W1), 0.0);
      long double a = z[slot];
      if (slot < 2) {
        a = std::abs(k - static_cast<double>(W1)) <= std::abs(k - static_cast<double>(forward))
                ? W1
                : forward;
      }
      anchor[slot] = a;
      y[slot] = polish(z, a, G, cld(k.real() - static_cast<double>(a), k.imag()));
    }
  }

  for (int r = 0; r < 4; ++r) {
    out.anchor[r] = anchor[r];
    out.offset[r] = y[r];
    out.shift[r] = (anchor[r] - reference[r]) + y[r];
    const cld k = anchor[r] + y[r];
    out.k[r] = cplx(static_cast<double>(k.real()), static_cast<double>(k.imag()));
  }

  // Order the forward pair like eps1, eps2.
  const cld diff = out.shift[0] - out.shift[1];
  const bool swap = std::abs(diff.imag()) > std::abs(diff.real()) ? diff.imag() < 0
                                                                  : diff.real() < 0;
  if (swap) {
    std::swap(out.k[0], out.k[1]);
    std::swap(out.anchor[0], out.anchor[1]);
    std::swap(out.offset[0], out.offset[1]);
    std::swap(out.shift[0], out.shift[1]);
  }
  return out;
}

}  // namespace pdcslab
