#include "pdcslab/oracle.hpp"

#include "pdcslab/error.hpp"

#include <Eigen/SVD>
#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace pdcslab {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx to_cplx(std::complex<long double> z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

BoundarySystem boundary_system(const CrystalScenario& scenario, const ModeKinematics& kin) {
  BoundarySystem sys;
  sys.roots = quartic_wavenumbers(scenario, kin);

  const double s = kin.kind == Kind::pdc ? -1.0 : 1.0;
  const long double K = scenario.pump_wavenumber();
  const long double W1 = kin.inner;
  const double w10 = kin.outer;
  const double w20 = kin.partner_outer;
  const double l = scenario.thickness;
  const long double a = scenario.coupling * scenario.omega0 * kin.omega;
  const long double b = scenario.coupling * scenario.omega0 * kin.partner;

  std::array<cplx, 4> k{}, kappa{};
  for (int r = 0; r < 4; ++r) {
    const long double A = sys.roots.anchor[r];
    const std::complex<long double> y = sys.roots.offset[r];
    k[r] = sys.roots.k[r];
    kappa[r] = to_cplx(A + s * K + y);
    bool idler_like = A == W1 || A == -W1;
    // uncoupled and exactly matched: both forward anchors equal W1, split them
    if (r == 1 && scenario.coupling == 0.0 && sys.roots.anchor[0] == A) idler_like = false;
    if (idler_like) {
      // k^2 - W1^2 = y (2A + y)
      sys.alpha[r] = 1.0;
      sys.beta[r] = a != 0.0L ? to_cplx(y * (2.0L * A + y) / a) : 0.0;
    } else {
      const long double ka = A + s * K;
      sys.beta[r] = 1.0;
      sys.alpha[r] = b != 0.0L ? to_cplx(y * (2.0L * ka + y) / b) : 0.0;
    }
  }

  auto& M = sys.matrix;
  auto& rhs = sys.rhs;
  M.setZero();
  rhs.setZero();
  // z = 0
  rhs(0) = 1.0;
  M(0, 0) = -1.0;
  rhs(1) = w10;
  M(1, 0) = w10;
  M(2, 1) = -1.0;
  M(3, 1) = s * w20;
  // z = l, transmitted phases absorbed into the unknowns
  M(4, 2) = -1.0;
  M(5, 2) = -w10;
  M(6, 3) = -1.0;
  M(7, 3) = -s * w20;
  for (int r = 0; r < 4; ++r) {
    const int c = 4 + r;
    const cplx ea = std::exp(kI * k[r] * l);
    const cplx eb = std::exp(kI * kappa[r] * l);
    M(0, c) = sys.alpha[r];
    M(1, c) = sys.alpha[r] * k[r];
    M(2, c) = sys.beta[r];
    M(3, c) = sys.beta[r] * kappa[r];
    M(4, c) = sys.alpha[r] * ea;
    M(5, c) = sys.alpha[r] * k[r] * ea;
    M(6, c) = sys.beta[r] * eb;
    M(7, c) = sys.beta[r] * kappa[r] * eb;
  }

  Eigen::JacobiSVD<Eigen::Matrix<cplx, 8, 8>> svd(M);
  const auto& sv = svd.singularValues();
  sys.condition = sv(7) > 0.0 ? sv(0) / sv(7) : std::numeric_limits<double>::infinity();
  return sys;
}

ExactSolution exact_solve(const CrystalScenario& scenario, const ModeKinematics& kin) {
  const auto sys = boundary_system(scenario, kin);
  if (!(sys.condition <= kConditionLimit)) {
    throw Error(ErrorCode::conditioning,
                fmt::format("boundary system condition number {:.3e} exceeds {:.0e} "
                            "(omega = {}, p = {}, g = {}, l = {})",
                            sys.condition, kConditionLimit, kin.omega, kin.p,
                            scenario.coupling, scenario.thickness));
  }
  const Eigen::Matrix<cplx, 8, 1> x = sys.matrix.fullPivLu().solve(sys.rhs);

  ExactSolution out;
  out.condition = sys.condition;
  out.residual = (sys.matrix * x - sys.rhs).cwiseAbs().maxCoeff() / sys.rhs.cwiseAbs().maxCoeff();

  const double l = scenario.thickness;
  const double s = kin.kind == Kind::pdc ? -1.0 : 1.0;
  auto& amp = out.amplitudes;
  amp.R1 = x(0);
  amp.R2 = x(1);
  amp.T1 = x(2) * std::exp(-kI * kin.outer * l);
  amp.T2 = x(3) * std::exp(-kI * s * kin.partner_outer * l);
  amp.A1 = x(4);
  amp.A2 = x(5);
  amp.A3 = x(6);
  amp.A4 = x(7);

  const double ratio = kin.partner_outer / kin.outer;
  out.r1 = std::norm(x(0));
  out.t1 = std::norm(x(2));
  out.r2 = ratio * std::norm(x(1));
  out.t2 = ratio * std::norm(x(3));
  return out;
}

ExactSolution exact_solve(const CrystalScenario& scenario, double omega, double p, Kind kind) {
  return exact_solve(scenario, longitudinal(scenario, omega, p, kind));
}

PhaseAverage phase_average(const CrystalScenario& scenario, double omega, double p, Kind kind,
                           int phases) {
  if (phases < 1) throw Error(ErrorCode::domain, "phase average needs at least one phase");
  const auto res = resonance(scenario, omega, kind);
  const auto kin = longitudinal(scenario, omega, p, kind);

  PhaseAverage avg;
  avg.phases = phases;
  avg.exact = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  avg.closed_form = avg.exact;
  const double period = 2.0 * std::numbers::pi / kin.inner;
  CrystalScenario s = scenario;
  for (int j = 0; j < phases; ++j) {
    s.thickness = scenario.thickness + period * j / phases;
    const auto ex = exact_solve(s, kin);
    const auto cf = channel_report(s, res, p);
    avg.max_condition = std::max(avg.max_condition, ex.condition);
    avg.exact.r1 += ex.r1 / phases;
    avg.exact.t1 += ex.t1 / phases;
    avg.exact.r2 += ex.r2 / phases;
    avg.exact.t2 += ex.t2 / phases;
    const auto cc = channel_coefficients(cf.gamma, cf.r10, cf.r20, res.omega, res.partner, kind);
    avg.closed_form.r1 += cc.r1 / phases;
    avg.closed_form.t1 += cc.t1 / phases;
    avg.closed_form.r2 += cc.r2 / phases;
    avg.closed_form.t2 += cc.t2 / phases;
    avg.closed_form.r1_gain += cc.r1_gain / phases;
    avg.closed_form.t1_gain += cc.t1_gain / phases;
  }
  const auto lin = slab_coefficients(fresnel_step(res.outer, res.inner));
  avg.exact.r1_gain = avg.exact.r1 - lin.r;
  avg.exact.t1_gain = avg.exact.t1 - lin.t;
  return avg;
}

ChannelCoefficients series_sum(const FresnelStep& first, const FresnelStep& second, double gamma,
                               double partner_over_omega, Kind kind, int min_terms) {
  const double r10 = first.r0, r20 = second.r0;
  if (!(r10 >= 0.0 && r10 < 1.0) || !(r20 >= 0.0 && r20 < 1.0)) {
    throw Error(ErrorCode::domain,
                fmt::format("series needs reflectances in [0, 1), got {} and {}", r10, r20));
  }
  const double sigma = kind == Kind::pdc ? 1.0 : -1.0;
  const double t10 = first.t0, t20 = second.t0;
  constexpr double kTail = 1e-17;
  constexpr int kMaxTerms = 100000;

  ChannelCoefficients c{r10, 0.0, 0.0, 0.0};
  double rpow = 1.0;  // r10^(2n)
  for (int n = 0; n < kMaxTerms; ++n) {
    const double term = t10 * t10 * rpow * (1.0 + sigma * (n + 1) * gamma);
    c.t1 += term;
    c.r1 += term * r10;
    rpow *= r10 * r10;
    if (n + 1 >= min_terms && std::abs(t10 * t10 * rpow * (1.0 + (n + 2) * gamma)) < kTail) break;
  }

  auto geometric = [&](double r) {
    double sum = 0.0, pw = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
      sum += pw;
      pw *= r * r;
      if (n + 1 >= min_terms && pw < kTail) break;
    }
    return sum;
  };
  c.t2 = partner_over_omega * gamma * t10 * t20 * geometric(r10) * geometric(r20);
  c.r2 = r20 * c.t2;
  return c;
}

}  // namespace pdcslab
