#include "pdcslab/dispersion.hpp"

#include "pdcslab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <system_error>

namespace pdcslab {

namespace {

constexpr int kPhysicalSamples = 4097;

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, std::string_view key) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::parse,
                fmt::format("dispersion record: bad number '{}' for key '{}'", text, key));
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// "a:b;c:d" -> {(a,b),(c,d)}
std::vector<std::pair<double, double>> parse_pairs(std::string_view text,
                                                   std::string_view key) {
  std::vector<std::pair<double, double>> out;
  while (!text.empty()) {
    auto semi = text.find(';');
    auto item = trim(text.substr(0, semi));
    text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::parse,
                  fmt::format("dispersion record: '{}' entry '{}' lacks ':'", key, item));
    }
    out.emplace_back(parse_double(trim(item.substr(0, colon)), key),
                     parse_double(trim(item.substr(colon + 1)), key));
  }
  return out;
}

void check_band(const Band& band) {
  if (!(band.lo > 0.0) || !(band.hi > band.lo) || !std::isfinite(band.hi)) {
    throw Error(ErrorCode::domain,
                fmt::format("dispersion band [{}, {}] must satisfy 0 < lo < hi", band.lo,
                            band.hi));
  }
}

}  // namespace

std::string_view to_string(DispersionKind kind) {
  switch (kind) {
    case DispersionKind::constant: return "constant";
    case DispersionKind::sellmeier: return "sellmeier";
    case DispersionKind::tabulated: return "tabulated";
  }
  return "unknown";
}

DispersionModel DispersionModel::constant(double index, Band band) {
  check_band(band);
  DispersionModel m;
  m.kind_ = DispersionKind::constant;
  m.band_ = band;
  m.constant_index_ = index;
  m.check_physical();
  return m;
}

DispersionModel DispersionModel::sellmeier(double background,
                                           std::vector<SellmeierTerm> terms, Band band) {
  check_band(band);
  for (const auto& t : terms) {
    if (!(t.resonance > 0.0)) {
      throw Error(ErrorCode::domain, "sellmeier resonance frequency must be positive");
    }
    if (t.resonance >= band.lo && t.resonance <= band.hi) {
      throw Error(ErrorCode::domain,
                  fmt::format("sellmeier resonance {} lies inside band [{}, {}]", t.resonance,
                              band.lo, band.hi));
    }
  }
  DispersionModel m;
  m.kind_ = DispersionKind::sellmeier;
  m.band_ = band;
  m.background_ = background;
  m.terms_ = std::move(terms);
  m.check_physical();
  return m;
}

DispersionModel DispersionModel::tabulated(std::vector<double> frequencies,
                                           std::vector<double> indices) {
  if (frequencies.size() != indices.size() || frequencies.size() < 4) {
    throw Error(ErrorCode::domain, "tabulated dispersion needs >= 4 (frequency, index) nodes");
  }
  if (!std::is_sorted(frequencies.begin(), frequencies.end()) ||
      std::adjacent_find(frequencies.begin(), frequencies.end()) != frequencies.end()) {
    throw Error(ErrorCode::domain, "tabulated dispersion nodes must be strictly increasing");
  }
  DispersionModel m;
  m.kind_ = DispersionKind::tabulated;
  m.band_ = Band{frequencies.front(), frequencies.back()};
  check_band(m.band_);
  m.node_frequencies_ = frequencies;
  m.node_indices_ = indices;
  std::vector<double> squared(indices.size());
  std::transform(indices.begin(), indices.end(), squared.begin(),
                 [](double n) { return n * n; });
  m.spline_.emplace(std::move(frequencies), std::move(squared));
  m.check_physical();
  return m;
}

double DispersionModel::mu_squared_unchecked(double omega) const {
  switch (kind_) {
    case DispersionKind::constant:
      return constant_index_ * constant_index_;
    case DispersionKind::sellmeier: {
      double sum = background_;
      for (const auto& t : terms_) {
        const double x = omega / t.resonance;
        sum += t.strength / (1.0 - x * x);
      }
      return sum;
    }
    case DispersionKind::tabulated:
      return (*spline_)(omega);
  }
  return 1.0;
}

double DispersionModel::mu(double omega) const {
  if (!band_.contains(omega)) {
    throw Error(ErrorCode::domain,
                fmt::format("frequency {} outside dispersion band [{}, {}]", omega, band_.lo,
                            band_.hi));
  }
  return std::sqrt(mu_squared_unchecked(omega));
}

void DispersionModel::check_physical() const {
  for (int i = 0; i < kPhysicalSamples; ++i) {
    const double w = band_.lo + (band_.hi - band_.lo) * i / (kPhysicalSamples - 1);
    const double m2 = mu_squared_unchecked(w);
    if (!std::isfinite(m2) || m2 < 1.0) {
      throw Error(ErrorCode::domain,
                  fmt::format("refractive index^2 = {} < 1 at frequency {}", m2, w));
    }
  }
}

std::string DispersionModel::serialize() const {
  std::ostringstream out;
  out << "kind=" << to_string(kind_) << '\n';
  out << "band_lo=" << format_double(band_.lo) << '\n';
  out << "band_hi=" << format_double(band_.hi) << '\n';
  switch (kind_) {
    case DispersionKind::constant:
      out << "index=" << format_double(constant_index_) << '\n';
      break;
    case DispersionKind::sellmeier: {
      out << "background=" << format_double(background_) << '\n';
      out << "terms=";
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out << ';';
        out << format_double(terms_[i].strength) << ':' << format_double(terms_[i].resonance);
      }
      out << '\n';
      break;
    }
    case DispersionKind::tabulated: {
      out << "nodes=";
      for (std::size_t i = 0; i < node_frequencies_.size(); ++i) {
        if (i) out << ';';
        out << format_double(node_frequencies_[i]) << ':' << format_double(node_indices_[i]);
      }
      out << '\n';
      break;
    }
  }
  return out.str();
}

DispersionModel DispersionModel::parse(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::parse, fmt::format("dispersion record: line '{}' lacks '='", line));
    }
    kv[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  auto need = [&](std::string_view key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw Error(ErrorCode::parse, fmt::format("dispersion record: missing key '{}'", key));
    }
    return it->second;
  };

  const auto& kind = need("kind");
  if (kind == "tabulated") {
    std::vector<double> w, n;
    for (auto [a, b] : parse_pairs(need("nodes"), "nodes")) {
      w.push_back(a);
      n.push_back(b);
    }
    return tabulated(std::move(w), std::move(n));
  }
  Band band{parse_double(need("band_lo"), "band_lo"), parse_double(need("band_hi"), "band_hi")};
  if (kind == "constant") {
    return constant(parse_double(need("index"), "index"), band);
  }
  if (kind == "sellmeier") {
    std::vector<SellmeierTerm> terms;
    for (auto [b, w] : parse_pairs(need("terms"), "terms")) terms.push_back({b, w});
    return sellmeier(parse_double(need("background"), "background"), std::move(terms), band);
  }
  throw Error(ErrorCode::parse, fmt::format("dispersion record: unknown kind '{}'", kind));
}

DispersionModel calibrate_degenerate_angle(double theta_d, double mu_pump, double omega0,
                                           double band_lo, double band_hi) {
  if (!(theta_d >= 0.0) || !(theta_d < M_PI / 2)) {
    throw Error(ErrorCode::calibration,
                fmt::format("degenerate angle {} rad outside [0, pi/2)", theta_d));
  }
  if (!(mu_pump > 1.0)) {
    throw Error(ErrorCode::calibration,
                fmt::format("pump refractive index {} must exceed 1", mu_pump));
  }
  if (!(omega0 > 0.0) || !(band_lo > 0.0) || !(band_lo < 0.5) || !(band_hi > 1.5)) {
    throw Error(ErrorCode::calibration,
                "calibration band must contain [omega0/2, 3 omega0/2] and start above 0");
  }
  const double s = std::sin(theta_d);
  const double qd = s * s;
  const double m2 = mu_pump * mu_pump;
  // mu^2(w) = mu_pump^2 + 2 q_d (1 - w / omega0); exact at the three anchors.
  auto index_sq = [&](double x) { return m2 + 2.0 * qd * (1.0 - x); };

  const std::vector<double> xs{band_lo, 0.5, 1.0, 1.5, band_hi};
  std::vector<double> freqs, indices;
  for (double x : xs) {
    double n2 = index_sq(x);
    if (x == 0.5) n2 = m2 + qd;
    if (x == 1.0) n2 = m2;
    if (x == 1.5) n2 = m2 - qd;
    if (!(n2 >= 1.0)) {
      throw Error(ErrorCode::calibration,
                  fmt::format("calibration to theta_d = {} deg forces mu^2 = {} < 1 at omega = {}",
                              theta_d * 180.0 / M_PI, n2, x * omega0));
    }
    freqs.push_back(x * omega0);
    indices.push_back(std::sqrt(n2));
  }
  return DispersionModel::tabulated(std::move(freqs), std::move(indices));
}

}  // namespace pdcslab
