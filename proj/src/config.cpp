#include "pdcslab/config.hpp"

#include "pdcslab/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace pdcslab {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string, std::less<>> kScenarioKeys{
    "omega0", "coupling", "thickness", "guard", "coupling_warning", "dispersion",
    "theta_d_deg", "mu_pump", "band_lo", "band_hi", "index", "background",
    "terms", "nodes", "model_file"};
const std::set<std::string, std::less<>> kSweepKeys{
    "omega_lo", "omega_hi", "samples", "kind", "detuning_span", "detuning_points", "jobs"};
const std::set<std::string, std::less<>> kOutputKeys{"format", "path"};

template <class T>
T number(const std::string& text, std::string_view key) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::parse, fmt::format("config: '{}' is not a valid value for {}", text, key));
  }
  return value;
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string_view name) : tree_(tree), name_(name) {}

  std::optional<std::string> text(std::string_view key) const {
    if (!tree_) return std::nullopt;
    auto it = tree_->find(std::string(key));
    if (it == tree_->not_found()) return std::nullopt;
    return it->second.data();
  }
  double real(std::string_view key, double fallback) const {
    auto t = text(key);
    return t ? number<double>(*t, qualified(key)) : fallback;
  }
  int integer(std::string_view key, int fallback) const {
    auto t = text(key);
    return t ? number<int>(*t, qualified(key)) : fallback;
  }
  std::string required(std::string_view key) const {
    auto t = text(key);
    if (!t) throw Error(ErrorCode::parse, fmt::format("config: missing {}", qualified(key)));
    return *t;
  }

 private:
  std::string qualified(std::string_view key) const { return fmt::format("{}.{}", name_, key); }

  const pt::ptree* tree_;
  std::string_view name_;
};

DispersionModel read_dispersion(const Section& s, const std::filesystem::path& base_dir,
                                double omega0, std::optional<double>& theta_d_deg) {
  const std::string kind = s.text("dispersion").value_or("calibrated");
  if (kind == "calibrated") {
    const double deg = s.real("theta_d_deg", 10.0);
    theta_d_deg = deg;
    return calibrate_degenerate_angle(deg * std::numbers::pi / 180.0, s.real("mu_pump", 1.51),
                                      omega0, s.real("band_lo", kCalibratedBandLo),
                                      s.real("band_hi", kCalibratedBandHi));
  }
  if (kind == "file") {
    std::filesystem::path file = s.required("model_file");
    if (file.is_relative()) file = base_dir / file;
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::parse, fmt::format("config: cannot open {}", file.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return DispersionModel::parse(buf.str());
  }
  if (kind != "constant" && kind != "sellmeier" && kind != "tabulated") {
    throw Error(ErrorCode::parse, fmt::format("config: unknown dispersion '{}'", kind));
  }
  // Same keys as the serialized model record.
  std::string record = "kind=" + kind + "\n";
  for (const char* key : {"band_lo", "band_hi", "index", "background", "terms", "nodes"}) {
    if (auto v = s.text(key)) record += fmt::format("{}={}\n", key, *v);
  }
  return DispersionModel::parse(record);
}

}  // namespace

Kind parse_kind(std::string_view text) {
  if (text == "pdc") return Kind::pdc;
  if (text == "puc") return Kind::puc;
  throw Error(ErrorCode::parse, fmt::format("unknown kind '{}' (expected pdc or puc)", text));
}

std::vector<Kind> parse_kinds(std::string_view text) {
  if (text == "both") return {Kind::pdc, Kind::puc};
  return {parse_kind(text)};
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "jsonl") return OutputFormat::jsonl;
  throw Error(ErrorCode::parse, fmt::format("unknown format '{}' (expected csv or jsonl)", text));
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::parse, fmt::format("config: {}", e.message()));
  }

  for (const auto& [name, section] : tree) {
    const std::set<std::string, std::less<>>* keys = nullptr;
    if (name == "scenario") keys = &kScenarioKeys;
    else if (name == "sweep") keys = &kSweepKeys;
    else if (name == "output") keys = &kOutputKeys;
    else throw Error(ErrorCode::parse, fmt::format("config: unknown section [{}]", name));
    for (const auto& entry : section) {
      if (!keys->contains(entry.first)) {
        throw Error(ErrorCode::parse, fmt::format("config: unknown key {}.{}", name, entry.first));
      }
    }
  }

  auto child = [&](const char* name) -> const pt::ptree* {
    auto c = tree.get_child_optional(name);
    return c ? &*c : nullptr;
  };
  const Section sc(child("scenario"), "scenario");
  const Section sw(child("sweep"), "sweep");
  const Section out(child("output"), "output");

  RunConfig cfg;
  auto& s = cfg.scenario;
  s.omega0 = sc.real("omega0", 1.0);
  s.coupling = sc.real("coupling", 1e-5);
  s.thickness = sc.real("thickness", 1000.0);
  s.guard = sc.real("guard", s.guard);
  s.coupling_warning = sc.real("coupling_warning", s.coupling_warning);
  s.dispersion = read_dispersion(sc, base_dir, s.omega0, cfg.theta_d_deg);
  s.validate();

  auto& w = cfg.sweep;
  w.omega_lo = sw.real("omega_lo", w.omega_lo);
  w.omega_hi = sw.real("omega_hi", w.omega_hi);
  w.samples = sw.integer("samples", w.samples);
  if (auto k = sw.text("kind")) w.kinds = parse_kinds(*k);
  w.detuning_span = sw.real("detuning_span", w.detuning_span);
  w.detuning_points = sw.integer("detuning_points", w.detuning_points);
  w.jobs = sw.integer("jobs", w.jobs);

  if (auto f = out.text("format")) cfg.output.format = parse_format(*f);
  cfg.output.path = out.text("path").value_or("");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, fmt::format("cannot open config {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace pdcslab
