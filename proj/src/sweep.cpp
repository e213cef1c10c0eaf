#include "pdcslab/sweep.hpp"

#include "pdcslab/error.hpp"
#include "pdcslab/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <thread>

namespace pdcslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

int worker_count(int jobs, std::size_t tasks) {
  int n = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(tasks, 1)));
}

// Runs body(i) for i in [0, n); each index is written by exactly one worker.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body body) {
  const int workers = worker_count(jobs, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

Cell number(double v) { return std::isfinite(v) ? Cell{v} : Cell{}; }

double relative(double abs_err, double scale) {
  if (abs_err == 0.0) return 0.0;
  return scale > 0.0 ? abs_err / scale : std::numeric_limits<double>::infinity();
}

OracleRow make_row(double omega, Kind kind, std::string quantity, double closed, double oracle,
                   double tol, double scale) {
  OracleRow r;
  r.omega = omega;
  r.kind = kind;
  r.quantity = std::move(quantity);
  r.closed_form = closed;
  r.oracle = oracle;
  r.abs_err = std::abs(closed - oracle);
  r.rel_err = relative(r.abs_err, scale);
  r.tol = tol;
  r.pass = r.rel_err <= tol;
  return r;
}

OracleRow failed_row(double omega, Kind kind, std::string quantity, double tol,
                     const std::exception& e) {
  OracleRow r;
  r.omega = omega;
  r.kind = kind;
  r.quantity = std::move(quantity);
  r.closed_form = r.oracle = r.abs_err = r.rel_err = kNaN;
  r.tol = tol;
  r.pass = false;
  r.note = e.what();
  return r;
}

std::vector<OracleRow> oracle_rows(const CrystalScenario& s, double omega, Kind kind,
                                   int phases) {
  std::vector<OracleRow> rows;
  const auto res = resonance(s, omega, kind);
  const auto rep = channel_report(s, res, res.p0);
  const double sigma = kind == Kind::pdc ? 1.0 : -1.0;

  {
    const double lhs = sigma * 2.0 * rep.idler_photons;
    const double rhs = res.omega / res.partner * (rep.t2 + rep.r2);
    rows.push_back(make_row(omega, kind, "photon_identity", lhs, rhs, kIdentityTolerance,
                            std::abs(rhs)));
  }
  rows.push_back(make_row(omega, kind, "flux_omega_cosine", rep.flux_omega_cosine,
                          rep.flux_omega, kIdentityTolerance, std::abs(rep.flux_omega)));
  rows.push_back(make_row(omega, kind, "flux_partner_cosine", rep.flux_partner_cosine,
                          rep.flux_partner, kIdentityTolerance, std::abs(rep.flux_partner)));

  const double qtol = quartic_tolerance(s.coupling);
  try {
    const auto eps = epsilon_roots(s, res, res.p0);
    const auto q = quartic_wavenumbers(s, res.kinematics());
    const auto sum = q.shift[0] + q.shift[1];
    const auto prod = q.shift[0] * q.shift[1];
    const double root_scale = std::sqrt(std::abs(eps.product));
    rows.push_back(make_row(omega, kind, "eps_sum", eps.sum, static_cast<double>(sum.real()),
                            qtol, std::max(std::abs(eps.sum), root_scale)));
    rows.push_back(make_row(omega, kind, "eps_product", eps.product,
                            static_cast<double>(prod.real()), qtol, std::abs(eps.product)));
    rows.push_back(make_row(omega, kind, "eps3", eps.eps3,
                            static_cast<double>(q.shift[2].real()), qtol, std::abs(eps.eps3)));
    rows.push_back(make_row(omega, kind, "eps4", eps.eps4,
                            static_cast<double>(q.shift[3].real()), qtol, std::abs(eps.eps4)));
  } catch (const Error& e) {
    rows.push_back(failed_row(omega, kind, "quartic_roots", qtol, e));
  }

  try {
    const auto avg = phase_average(s, omega, res.p0, kind, phases);
    const auto& ex = avg.exact;
    const auto& cf = avg.closed_form;
    auto add = [&](const char* name, double closed, double exact) {
      rows.push_back(make_row(omega, kind, name, closed, exact, kAveragedTolerance,
                              std::abs(exact)));
    };
    add("avg_t1", cf.t1, ex.t1);
    add("avg_r1", cf.r1, ex.r1);
    add("avg_t2", cf.t2, ex.t2);
    add("avg_r2", cf.r2, ex.r2);
    add("avg_excess", cf.t1_gain + cf.r1_gain, ex.t1 + ex.r1 - 1.0);

    const auto one = exact_solve(s, res.kinematics());
    const double lhs = sigma * (one.t1 + one.r1 - 1.0);
    const double rhs = res.omega / res.partner * (one.t2 + one.r2);
    rows.push_back(make_row(omega, kind, "exact_photon_balance", lhs, rhs,
                            kExactBalanceTolerance, std::abs(rhs)));
  } catch (const Error& e) {
    rows.push_back(failed_row(omega, kind, "exact_solve", kAveragedTolerance, e));
  }
  return rows;
}

}  // namespace

void SweepRequest::validate() const {
  scenario.validate();
  const auto& w = settings;
  if (w.samples < 2) {
    throw Error(ErrorCode::domain, fmt::format("sweep needs at least 2 samples, got {}", w.samples));
  }
  if (!(w.omega_lo > 0.0) || !(w.omega_hi > w.omega_lo)) {
    throw Error(ErrorCode::domain,
                fmt::format("sweep band [{}, {}] must be positive and non-empty", w.omega_lo,
                            w.omega_hi));
  }
  if (w.kinds.empty()) throw Error(ErrorCode::domain, "sweep requests no kind");
  if (w.detuning_points < 1 || !(w.detuning_span >= 0.0)) {
    throw Error(ErrorCode::domain, "detuning scan needs >= 1 point and a span >= 0");
  }
}

std::vector<double> SweepRequest::frequencies() const {
  std::vector<double> out;
  const int n = settings.samples;
  for (int i = 0; i < n; ++i) {
    const double x = settings.omega_lo + (settings.omega_hi - settings.omega_lo) * i / (n - 1);
    out.push_back(x * scenario.omega0);
  }
  return out;
}

std::vector<double> SweepRequest::detunings() const {
  const int n = settings.detuning_points;
  if (n == 1) return {0.0};
  std::vector<double> out;
  const double span = settings.detuning_span * scenario.omega0;
  for (int i = 0; i < n; ++i) out.push_back(-span + 2.0 * span * i / (n - 1));
  return out;
}

std::vector<SweepRow> run_sweep(const SweepRequest& request) {
  request.validate();
  const auto omegas = request.frequencies();
  const auto dps = request.detunings();
  const auto& kinds = request.settings.kinds;

  struct Task {
    double omega;
    Kind kind;
  };
  std::vector<Task> tasks;
  for (double w : omegas)
    for (Kind k : kinds) tasks.push_back({w, k});

  std::vector<std::vector<SweepRow>> blocks(tasks.size());
  parallel_for(tasks.size(), request.settings.jobs, [&](std::size_t i) {
    const auto [omega, kind] = tasks[i];
    auto& block = blocks[i];
    auto skip_all = [&](const Error& e) {
      for (double dp : dps) {
        SweepRow row;
        row.omega = omega;
        row.kind = kind;
        row.dp = dp;
        row.skipped = true;
        row.skip_reason = std::string(to_string(e.code()));
        row.skip_detail = e.what();
        block.push_back(std::move(row));
      }
    };
    ResonancePoint res;
    try {
      res = resonance(request.scenario, omega, kind);
    } catch (const Error& e) {
      skip_all(e);
      return;
    }
    for (double dp : dps) {
      SweepRow row;
      row.omega = omega;
      row.kind = kind;
      row.dp = dp;
      try {
        // The working p must itself propagate.
        longitudinal(request.scenario, omega, res.p0 + dp, kind);
        row.report = channel_report(request.scenario, res, res.p0 + dp);
        row.forward_fraction = rainbow_split(row.report).forward;
      } catch (const Error& e) {
        row.skipped = true;
        row.skip_reason = std::string(to_string(e.code()));
        row.skip_detail = e.what();
      }
      block.push_back(std::move(row));
    }
  });

  std::vector<SweepRow> rows;
  std::map<std::string, int> skips;
  for (auto& b : blocks) {
    for (auto& r : b) {
      if (r.skipped) ++skips[r.skip_reason];
      rows.push_back(std::move(r));
    }
  }
  const auto valid = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.skipped; });
  if (valid == 0) {
    std::string summary;
    for (const auto& [reason, n] : skips) summary += fmt::format(" {}={}", reason, n);
    throw Error(ErrorCode::sweep, fmt::format("sweep produced no valid rows (skipped:{})", summary));
  }
  return rows;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"omega", "kind", "partner", "dp", "theta_d_deg", "theta_u_deg",
               "partner_angle_deg", "gamma", "r1", "t1", "r2", "t2", "flux_omega",
               "flux_partner", "ratio", "forward_fraction", "beyond_validity", "skip_reason"};
  for (const auto& r : rows) {
    std::vector<Cell> row{r.omega, std::string(to_string(r.kind))};
    if (r.skipped) {
      row.push_back(Cell{});
      row.push_back(r.dp);
      for (int i = 0; i < 13; ++i) row.push_back(Cell{});
      row.push_back(r.skip_reason);
    } else {
      const auto& c = r.report;
      const double angle = degrees(c.angle);
      row.push_back(c.partner);
      row.push_back(r.dp);
      row.push_back(r.kind == Kind::pdc ? Cell{angle} : Cell{});
      row.push_back(r.kind == Kind::puc ? Cell{angle} : Cell{});
      row.push_back(degrees(c.partner_angle));
      for (double v : {c.gamma, c.r1, c.t1, c.r2, c.t2, c.flux_omega, c.flux_partner, c.ratio,
                       r.forward_fraction}) {
        row.push_back(number(v));
      }
      row.push_back(c.beyond_validity);
      row.push_back(std::string());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

DegenerateSummary degenerate_summary(const CrystalScenario& scenario) {
  scenario.validate();
  DegenerateSummary d;
  const double w0 = scenario.omega0;
  d.omega = 0.5 * w0;
  d.mu1 = scenario.dispersion.mu(0.5 * w0);
  d.mu2 = scenario.dispersion.mu(w0);
  d.mu3 = scenario.dispersion.mu(1.5 * w0);
  d.forms = degenerate_closed_forms(d.mu1, d.mu2, d.mu3);
  d.theta_u_closed_deg = degrees(std::asin(std::sqrt(d.forms.qu_exact)));
  d.qu_gap = d.forms.qu_exact > 0.0
                 ? std::abs(d.forms.qu_quadratic - d.forms.qu_exact) / d.forms.qu_exact
                 : std::abs(d.forms.qu_quadratic);
  d.pdc = resonant_report(scenario, d.omega, Kind::pdc);
  d.puc = resonant_report(scenario, d.omega, Kind::puc);
  d.theta_d_deg = degrees(d.pdc.angle);
  d.theta_u_deg = degrees(d.puc.angle);
  d.channel_ratio = d.pdc.flux_omega != 0.0 ? d.puc.flux_omega / d.pdc.flux_omega : kNaN;
  const double pdc_total = d.pdc.flux_omega + d.pdc.flux_partner;
  d.total_ratio = pdc_total != 0.0 ? d.puc.flux_omega / pdc_total : kNaN;
  return d;
}

Table degenerate_table(const DegenerateSummary& d) {
  Table t;
  t.columns = {"omega",        "mu1",          "mu2",           "mu3",
               "theta_d_deg",  "theta_u_deg",  "theta_u_closed_deg", "qd",
               "qu_exact",     "qu_quadratic", "qu_gap",        "pdc_gamma",
               "puc_gamma",    "pdc_flux_omega", "puc_flux_omega", "puc_flux_partner",
               "puc_pdc_channel_ratio", "puc_pdc_total_ratio", "pdc_forward_fraction"};
  std::vector<Cell> row;
  for (double v : {d.omega, d.mu1, d.mu2, d.mu3, d.theta_d_deg, d.theta_u_deg,
                   d.theta_u_closed_deg, d.forms.qd, d.forms.qu_exact, d.forms.qu_quadratic,
                   d.qu_gap, d.pdc.gamma, d.puc.gamma, d.pdc.flux_omega, d.puc.flux_omega,
                   d.puc.flux_partner, d.channel_ratio, d.total_ratio,
                   rainbow_split(d.pdc).forward}) {
    row.push_back(number(v));
  }
  t.rows.push_back(std::move(row));
  return t;
}

double quartic_tolerance(double coupling) { return std::max(1e-3, 10.0 * coupling); }

std::vector<OracleRow> compare_oracle(const SweepRequest& request, int phases) {
  request.validate();
  const auto omegas = request.frequencies();
  struct Task {
    double omega;
    Kind kind;
  };
  std::vector<Task> tasks;
  for (double w : omegas)
    for (Kind k : request.settings.kinds) tasks.push_back({w, k});

  std::vector<std::vector<OracleRow>> blocks(tasks.size());
  parallel_for(tasks.size(), request.settings.jobs, [&](std::size_t i) {
    try {
      blocks[i] = oracle_rows(request.scenario, tasks[i].omega, tasks[i].kind, phases);
    } catch (const Error& e) {
      // Guard-band, out-of-band and evanescent samples are skipped.
      if (e.code() != ErrorCode::domain && e.code() != ErrorCode::regime &&
          e.code() != ErrorCode::no_resonance) {
        blocks[i].push_back(failed_row(tasks[i].omega, tasks[i].kind, "resonance", 0.0, e));
      }
    }
  });
  std::vector<OracleRow> rows;
  for (auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
  if (rows.empty()) throw Error(ErrorCode::sweep, "oracle comparison found no valid samples");
  return rows;
}

Table oracle_table(const std::vector<OracleRow>& rows) {
  Table t;
  t.columns = {"omega", "kind", "quantity", "closed_form", "oracle", "abs_err",
               "rel_err", "tol", "pass", "note"};
  for (const auto& r : rows) {
    t.rows.push_back({r.omega, std::string(to_string(r.kind)), r.quantity, number(r.closed_form),
                      number(r.oracle), number(r.abs_err), number(r.rel_err), r.tol, r.pass,
                      r.note});
  }
  return t;
}

}  // namespace pdcslab
