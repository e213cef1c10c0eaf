// Command-line driver: frequency sweeps, the degenerate-point summary,
// closed-form versus oracle comparisons and dispersion calibration.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 tolerance
// breach in compare-oracle, 3 no valid samples.

#include "pdcslab/config.hpp"
#include "pdcslab/error.hpp"
#include "pdcslab/sweep.hpp"
#include "pdcslab/table_output.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

namespace {

constexpr int kUsage = 1;
constexpr int kToleranceBreach = 2;
constexpr int kNoSamples = 3;

struct Overrides {
  std::string config;
  std::optional<double> omega_lo, omega_hi;
  std::optional<int> samples, jobs, detuning_points;
  std::optional<double> detuning_span;
  std::optional<std::string> kind, format, output;
  std::optional<double> coupling, thickness;
};

void add_common(CLI::App* cmd, Overrides& o, bool band) {
  cmd->add_option("-c,--config", o.config, "INI scenario file")->check(CLI::ExistingFile);
  cmd->add_option("-f,--format", o.format, "csv or jsonl");
  cmd->add_option("-o,--output", o.output, "output file (default stdout)");
  cmd->add_option("-g,--coupling", o.coupling, "effective coupling g");
  cmd->add_option("-l,--thickness", o.thickness, "slab thickness (units of 1/omega0)");
  if (!band) return;
  cmd->add_option("--omega-lo", o.omega_lo, "band start (units of omega0)");
  cmd->add_option("--omega-hi", o.omega_hi, "band end (units of omega0)");
  cmd->add_option("-n,--samples", o.samples, "frequency samples (>= 2)");
  cmd->add_option("-k,--kind", o.kind, "pdc, puc or both");
  cmd->add_option("-j,--jobs", o.jobs, "worker threads (0: all cores)");
}

pdcslab::RunConfig resolve(const Overrides& o) {
  auto cfg = o.config.empty() ? pdcslab::parse_config("") : pdcslab::load_config(o.config);
  auto& w = cfg.sweep;
  if (o.omega_lo) w.omega_lo = *o.omega_lo;
  if (o.omega_hi) w.omega_hi = *o.omega_hi;
  if (o.samples) w.samples = *o.samples;
  if (o.jobs) w.jobs = *o.jobs;
  if (o.kind) w.kinds = pdcslab::parse_kinds(*o.kind);
  if (o.detuning_span) w.detuning_span = *o.detuning_span;
  if (o.detuning_points) w.detuning_points = *o.detuning_points;
  if (o.format) cfg.output.format = pdcslab::parse_format(*o.format);
  if (o.output) cfg.output.path = *o.output;
  if (o.coupling) cfg.scenario.coupling = *o.coupling;
  if (o.thickness) cfg.scenario.thickness = *o.thickness;
  cfg.scenario.validate();
  return cfg;
}

void emit(const pdcslab::Table& table, const pdcslab::OutputSettings& out) {
  if (out.path.empty()) {
    pdcslab::write_table(std::cout, table, out.format);
    return;
  }
  std::ofstream file(out.path);
  if (!file) {
    throw pdcslab::Error(pdcslab::ErrorCode::parse, fmt::format("cannot write {}", out.path));
  }
  pdcslab::write_table(file, table, out.format);
}

int run_sweep(const Overrides& o) {
  const auto cfg = resolve(o);
  const pdcslab::SweepRequest req{cfg.scenario, cfg.sweep};
  const auto rows = pdcslab::run_sweep(req);
  int skipped = 0;
  for (const auto& r : rows) {
    if (!r.skipped) continue;
    ++skipped;
    fmt::print(stderr, "skip omega={:.12g} kind={} reason={}: {}\n", r.omega,
               pdcslab::to_string(r.kind), r.skip_reason, r.skip_detail);
  }
  if (skipped) fmt::print(stderr, "{} of {} rows skipped\n", skipped, rows.size());
  emit(pdcslab::sweep_table(rows), cfg.output);
  return 0;
}

int run_degenerate(const Overrides& o) {
  const auto cfg = resolve(o);
  const auto d = pdcslab::degenerate_summary(cfg.scenario);
  emit(pdcslab::degenerate_table(d), cfg.output);
  return 0;
}

int run_compare(const Overrides& o, int phases) {
  const auto cfg = resolve(o);
  const pdcslab::SweepRequest req{cfg.scenario, cfg.sweep};
  const auto rows = pdcslab::compare_oracle(req, phases);
  emit(pdcslab::oracle_table(rows), cfg.output);
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; });
  if (failed) {
    fmt::print(stderr, "{} of {} oracle rows outside tolerance\n", failed, rows.size());
    return kToleranceBreach;
  }
  return 0;
}

int run_calibrate(double theta_deg, double mu_pump, double band_lo, double band_hi,
                  const std::optional<std::string>& output) {
  const auto model = pdcslab::calibrate_degenerate_angle(theta_deg * std::numbers::pi / 180.0,
                                                         mu_pump, 1.0, band_lo, band_hi);
  const std::string text = fmt::format("# calibrated: theta_d = {} deg, mu(omega0) = {}\n{}",
                                       theta_deg, mu_pump, model.serialize());
  if (!output) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(*output);
  if (!file) throw pdcslab::Error(pdcslab::ErrorCode::parse, fmt::format("cannot write {}", *output));
  file << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pumped nonlinear slab: down/up-conversion rainbows, fluxes and oracle checks"};
  app.require_subcommand(1);

  Overrides sweep_opts, degen_opts, oracle_opts;
  auto* sweep = app.add_subcommand("sweep", "tabulate coefficients and fluxes over a band");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--detuning-span", sweep_opts.detuning_span, "|p - p0| scan half-width");
  sweep->add_option("--detuning-points", sweep_opts.detuning_points, "points in the p scan");

  auto* degen = app.add_subcommand("degenerate", "rainbow angles and fluxes at omega0/2");
  add_common(degen, degen_opts, false);

  int phases = 64;
  auto* oracle = app.add_subcommand("compare-oracle", "closed forms against the exact solves");
  add_common(oracle, oracle_opts, true);
  oracle->add_option("--phases", phases, "thickness phases per average")->check(CLI::PositiveNumber);

  double theta = 10.0, mu_pump = 1.51;
  double band_lo = pdcslab::kCalibratedBandLo, band_hi = pdcslab::kCalibratedBandHi;
  std::optional<std::string> cal_out;
  auto* cal = app.add_subcommand("calibrate", "write a dispersion model for a degenerate angle");
  cal->add_option("--theta-d", theta, "degenerate down-conversion angle (deg)");
  cal->add_option("--mu-pump", mu_pump, "refractive index at omega0");
  cal->add_option("--band-lo", band_lo, "band start (units of omega0)");
  cal->add_option("--band-hi", band_hi, "band end (units of omega0)");
  cal->add_option("-o,--output", cal_out, "model file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*sweep) return run_sweep(sweep_opts);
    if (*degen) return run_degenerate(degen_opts);
    if (*oracle) return run_compare(oracle_opts, phases);
    if (*cal) return run_calibrate(theta, mu_pump, band_lo, band_hi, cal_out);
  } catch (const pdcslab::Error& e) {
    fmt::print(stderr, "error [{}]: {}\n", pdcslab::to_string(e.code()), e.what());
    return e.code() == pdcslab::ErrorCode::sweep ? kNoSamples : kUsage;
  }
  return kUsage;
}
