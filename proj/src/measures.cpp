#include "chordlab/measures.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "chordlab/errors.hpp"

namespace chordlab::measures {
namespace {

using std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw FormatError("tabulated CDF line " + std::to_string(line) + ": bad number '" +
                      std::string(field) + "'");
  return value;
}

}  // namespace

double normalize_angle(double angle) {
  constexpr double two_pi = 2.0 * pi;
  double a = std::fmod(angle, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

PolarLine PolarLine::make(double dist, double foot_angle) {
  if (!(dist >= 0.0) || !std::isfinite(dist))
    throw DomainError("PolarLine: distance must be finite and >= 0");
  if (!std::isfinite(foot_angle)) throw DomainError("PolarLine: angle must be finite");
  return PolarLine{dist, normalize_angle(foot_angle)};
}

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::UniformRadius: return "uniform-radius";
    case MeasureKind::UniformMidpoint: return "uniform-midpoint";
    case MeasureKind::UniformEndpoints: return "uniform-endpoints";
    case MeasureKind::Rayleigh: return "gaussian";
    case MeasureKind::Custom: return "custom";
  }
  return "unknown";
}

MeasureKind parse_kind(std::string_view name) {
  if (name == "radius" || name == "uniform-radius") return MeasureKind::UniformRadius;
  if (name == "midpoint" || name == "uniform-midpoint") return MeasureKind::UniformMidpoint;
  if (name == "endpoints" || name == "uniform-endpoints") return MeasureKind::UniformEndpoints;
  if (name == "gaussian" || name == "rayleigh") return MeasureKind::Rayleigh;
  if (name == "custom") return MeasureKind::Custom;
  throw DomainError("unknown model '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// TabulatedCdf

TabulatedCdf::TabulatedCdf(std::vector<double> t, std::vector<double> F)
    : t_(std::move(t)), F_(std::move(F)) {
  if (t_.size() != F_.size()) throw FormatError("tabulated CDF: column length mismatch");
  if (t_.size() < 2) throw FormatError("tabulated CDF: need at least two rows");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(F_[i]))
      throw FormatError("tabulated CDF: non-finite entry");
    if (F_[i] < 0.0 || F_[i] > 1.0) throw FormatError("tabulated CDF: F outside [0, 1]");
    if (i > 0 && !(t_[i] > t_[i - 1]))
      throw FormatError("tabulated CDF: t must be strictly increasing");
    if (i > 0 && F_[i] < F_[i - 1]) throw FormatError("tabulated CDF: F must be nondecreasing");
  }
  if (t_.front() < 0.0) throw FormatError("tabulated CDF: t must be >= 0");
  if (std::abs(F_.back() - 1.0) > kAtomTolerance)
    throw FormatError("tabulated CDF: last row must reach F = 1");
  if (F_.front() > kAtomTolerance)
    throw DomainError("tabulated CDF: jump of " + std::to_string(F_.front()) + " at t = " +
                      std::to_string(t_.front()) + " (measure must be atomless)");
  F_.front() = 0.0;
  F_.back() = 1.0;
}

TabulatedCdf TabulatedCdf::read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> t, F;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos)
      throw FormatError("tabulated CDF line " + std::to_string(line_no) + ": expected two columns");
    const auto first = trim(row.substr(0, comma));
    const auto second = trim(row.substr(comma + 1));
    if (!header_seen) {
      if (first != "t" || second != "F")
        throw FormatError("tabulated CDF: header must be 't,F'");
      header_seen = true;
      continue;
    }
    t.push_back(parse_double(first, line_no));
    F.push_back(parse_double(second, line_no));
  }
  if (!header_seen) throw FormatError("tabulated CDF: empty input");
  return TabulatedCdf(std::move(t), std::move(F));
}

TabulatedCdf TabulatedCdf::read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open measure file '" + path + "'");
  return read_csv(in);
}

double TabulatedCdf::slope(std::size_t cell) const {
  return (F_[cell + 1] - F_[cell]) / (t_[cell + 1] - t_[cell]);
}

double TabulatedCdf::cdf(double t) const {
  if (t <= t_.front()) return 0.0;
  if (t >= t_.back()) return 1.0;
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t cell = static_cast<std::size_t>(it - t_.begin()) - 1;
  return F_[cell] + slope(cell) * (t - t_[cell]);
}

double TabulatedCdf::pdf(double t) const {
  if (t < t_.front() || t >= t_.back()) return 0.0;
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  return slope(static_cast<std::size_t>(it - t_.begin()) - 1);
}

double TabulatedCdf::inv_cdf(double u) const {
  if (u <= 0.0) return t_.front();
  if (u >= 1.0) return t_.back();
  // First cell whose right value exceeds u; flat cells are skipped.
  const auto it = std::upper_bound(F_.begin(), F_.end(), u);
  const std::size_t cell = static_cast<std::size_t>(it - F_.begin()) - 1;
  return t_[cell] + (u - F_[cell]) / slope(cell);
}

// ---------------------------------------------------------------------------
// RadialMeasure

RadialMeasure RadialMeasure::builtin(MeasureKind kind) {
  if (kind == MeasureKind::Custom)
    throw DomainError("custom measures are built from a tabulated CDF");
  return RadialMeasure(kind);
}

RadialMeasure RadialMeasure::tabulated(TabulatedCdf table) {
  return RadialMeasure(MeasureKind::Custom, std::make_shared<const TabulatedCdf>(std::move(table)));
}

double RadialMeasure::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case MeasureKind::UniformRadius: return std::min(t, 1.0);
    case MeasureKind::UniformMidpoint: return t >= 1.0 ? 1.0 : t * t;
    case MeasureKind::UniformEndpoints: return t >= 1.0 ? 1.0 : 2.0 / pi * std::asin(t);
    case MeasureKind::Rayleigh: return -std::expm1(-0.5 * t * t);
    case MeasureKind::Custom: return table_->cdf(t);
  }
  return 0.0;
}

double RadialMeasure::pdf(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case MeasureKind::UniformRadius: return t <= 1.0 ? 1.0 : 0.0;
    case MeasureKind::UniformMidpoint: return t <= 1.0 ? 2.0 * t : 0.0;
    case MeasureKind::UniformEndpoints:
      if (t > 1.0) return 0.0;
      if (t == 1.0) return std::numeric_limits<double>::infinity();
      return 2.0 / (pi * std::sqrt((1.0 - t) * (1.0 + t)));
    case MeasureKind::Rayleigh: return t * std::exp(-0.5 * t * t);
    case MeasureKind::Custom: return table_->pdf(t);
  }
  return 0.0;
}

double RadialMeasure::inv_cdf(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("inv_cdf: probability outside [0, 1]");
  switch (kind_) {
    case MeasureKind::UniformRadius: return u;
    case MeasureKind::UniformMidpoint: return std::sqrt(u);
    case MeasureKind::UniformEndpoints: return std::sin(0.5 * pi * u);
    case MeasureKind::Rayleigh:
      return u >= 1.0 ? std::numeric_limits<double>::infinity()
                      : std::sqrt(-2.0 * std::log1p(-u));
    case MeasureKind::Custom: return table_->inv_cdf(u);
  }
  return 0.0;
}

double RadialMeasure::support_upper() const {
  switch (kind_) {
    case MeasureKind::Rayleigh: return std::numeric_limits<double>::infinity();
    case MeasureKind::Custom: return table_->abscissae().back();
    default: return 1.0;
  }
}

// ---------------------------------------------------------------------------

PolarLine chord_from_endpoints(double phi1, double phi2) {
  // |phi1 - phi2| keeps the result bitwise symmetric in its arguments.
  const double half_gap = 0.5 * std::abs(phi1 - phi2);
  if (std::abs(std::sin(half_gap)) <= 1e-15)
    throw DegenerateChordError("chord_from_endpoints: endpoints coincide");
  const double signed_dist = std::cos(half_gap);
  double foot = 0.5 * (phi1 + phi2);
  if (signed_dist < 0.0) foot += pi;
  return PolarLine{std::abs(signed_dist), normalize_angle(foot)};
}

}  // namespace chordlab::measures
