#include "chordlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "chordlab/distribution.hpp"
#include "chordlab/errors.hpp"
#include "chordlab/io.hpp"
#include "chordlab/montecarlo.hpp"
#include "chordlab/ngon.hpp"

namespace chordlab::cli {
namespace {

using distribution::CdfCurve;
using measures::RadialMeasure;

struct Options {
  std::string model = "endpoints";
  std::string measure_file;
  double rmin = 0.0;
  double rmax = 2.0;
  int steps = 41;
  bool log_grid = false;
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  std::optional<unsigned> threads;
  double tol = 1e-12;
  std::string format = "csv";
  std::string out_path;
  bool density = false;
  bool distinct = false;
  bool lines = false;
  double snap_tol = 1e-9;
  double threshold = 0.005;
  std::vector<double> radii;
  double rlo = 0.0;
  std::string rhi = "inf";
  double thlo = 0.0;
  double thhi = 2.0 * std::numbers::pi;
};

// Routes data to --out or the primary stream and reports where the summary
// belongs.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw FormatError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& data() { return file_.is_open() ? file_ : out_; }
  std::ostream& summary() { return file_.is_open() ? out_ : err_; }

 private:
  std::ofstream file_;
  std::ostream& out_;
  std::ostream& err_;
};

unsigned resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) {
    if (*flag < 1) throw DomainError("--threads must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("CHORDLAB_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096)
      throw DomainError("CHORDLAB_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RadialMeasure resolve_measure(const Options& o) {
  if (!o.measure_file.empty())
    return RadialMeasure::tabulated(measures::TabulatedCdf::read_csv_file(o.measure_file));
  const auto kind = measures::parse_kind(o.model);
  if (kind == measures::MeasureKind::Custom)
    throw DomainError("--model custom needs --measure-file");
  return RadialMeasure::builtin(kind);
}

quadrature::QuadratureSpec quad_spec(const Options& o) {
  quadrature::QuadratureSpec q;
  q.abs_tol = o.tol;
  q.validate();
  return q;
}

double parse_radius(const std::string& text, const char* flag) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  std::istringstream in(text);
  double v = 0.0;
  if (!(in >> v) || !in.eof()) throw DomainError(std::string(flag) + ": not a number: " + text);
  return v;
}

void emit_curve(const CdfCurve& curve, const Options& o, Sink& sink) {
  if (o.format == "json")
    sink.data() << io::curve_json(curve).dump(2) << '\n';
  else
    io::write_curve_csv(sink.data(), curve);
}

std::vector<double> grid_from(const Options& o) {
  return distribution::make_grid(o.rmin, o.rmax, o.steps, o.log_grid);
}

int cmd_curve(const Options& o, bool density, Sink& sink) {
  const auto m = resolve_measure(o);
  const auto q = quad_spec(o);
  const auto grid = grid_from(o);
  const auto curve = density ? distribution::tabulate_density(m, grid, q)
                             : distribution::tabulate_cdf(m, grid, q);
  emit_curve(curve, o, sink);
  sink.summary() << (density ? "density" : "cdf") << " model=" << curve.model_label
                 << " points=" << curve.grid.size()
                 << " provenance=" << distribution::to_string(curve.provenance) << '\n';
  return kExitOk;
}

montecarlo::McConfig mc_config(const Options& o, std::uint64_t default_n) {
  montecarlo::McConfig cfg;
  cfg.n = o.n == 0 ? default_n : o.n;
  cfg.seed = o.seed;
  cfg.threads = resolve_threads(o.threads);
  return cfg;
}

int cmd_sample(const Options& o, Sink& sink) {
  const auto m = resolve_measure(o);
  const auto cfg = mc_config(o, 100000);
  if (o.format == "json") {
    const auto h = montecarlo::run_mc_histogram(m, cfg);
    sink.data() << io::histogram_json(h).dump() << '\n';
    sink.summary() << "sample model=" << h.model_label << " count=" << h.count
                   << " parallel_skips=" << h.parallel_skips << '\n';
  } else {
    const auto s = montecarlo::run_mc(m, cfg);
    io::write_sample_csv(sink.data(), s);
    sink.summary() << "sample model=" << s.model_label << " count=" << s.count
                   << " parallel_skips=" << s.parallel_skips << '\n';
  }
  return kExitOk;
}

int cmd_kstest(const Options& o, std::ostream& out) {
  const auto m = resolve_measure(o);
  const auto q = quad_spec(o);
  const auto s = montecarlo::run_mc(m, mc_config(o, 1000000));
  const double d =
      montecarlo::ks_statistic(s, [&](double r) { return distribution::model_cdf(m, r, q); });
  const bool pass = d <= o.threshold;
  out << "kstest model=" << s.model_label << " n=" << s.count << " seed=" << s.seed
      << " D=" << io::format_double(d) << " threshold=" << io::format_double(o.threshold) << ' '
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitTestFailed;
}

int cmd_ngon(const Options& o, Sink& sink) {
  if (o.n < 4 || o.n > 100000) throw DomainError("ngon: --n must lie in [4, 100000]");
  const int n = static_cast<int>(o.n);
  std::vector<double> radii = o.radii;
  if (radii.empty()) radii = o.lines ? std::vector<double>{0.25, 0.5, 0.75, 0.9, 1.0, 1.5, 3.0}
                                     : std::vector<double>{0.25, 0.5, 0.75, 0.9, 1.0};
  const bool interior = std::all_of(radii.begin(), radii.end(), [](double r) { return r <= 1.0; });
  if (!interior && !o.lines) throw DomainError("ngon: radii above 1 need --lines");

  auto report = ngon::enumerate(n, radii, true, o.lines, resolve_threads(o.threads));
  if (o.distinct) report.distinct_interior = ngon::distinct_count(n, o.snap_tol);

  if (o.format == "json") {
    sink.data() << io::ngon_json(report).dump(2) << '\n';
  } else {
    auto& d = sink.data();
    d << "r,with_multiplicity" << (o.lines ? ",lines" : "") << '\n';
    for (std::size_t i = 0; i < radii.size(); ++i) {
      d << io::format_double(radii[i]) << ',' << report.counts_with_multiplicity[i];
      if (o.lines) d << ',' << report.lines_counts[i];
      d << '\n';
    }
  }
  auto& s = sink.summary();
  s << "ngon n=" << n << " pairs=" << report.total_pairs;
  if (o.lines) s << " parallel_pairs=" << report.parallel_pairs;
  s << " pr_formula=" << report.pr_formula_value << '\n';
  if (report.distinct_interior) {
    s << "distinct interior points: " << *report.distinct_interior << '\n';
    s << "matches PR formula: "
      << (*report.distinct_interior == report.pr_formula_value ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int cmd_region(const Options& o, std::ostream& out) {
  const auto m = resolve_measure(o);
  const double rhi = parse_radius(o.rhi, "--rhi");
  const double p = distribution::region_probability(m, o.rlo, rhi, o.thlo, o.thhi, quad_spec(o));
  out << "region model=" << m.label() << " probability=" << io::format_double(p) << '\n';
  return kExitOk;
}

void add_grid(CLI::App* cmd, Options& o) {
  cmd->add_option("--rmin", o.rmin, "Smallest radius of the grid")->capture_default_str();
  cmd->add_option("--rmax", o.rmax, "Largest radius of the grid")->capture_default_str();
  cmd->add_option("--steps", o.steps, "Number of grid points (>= 2)")->capture_default_str();
  cmd->add_flag("--log", o.log_grid, "Logarithmic spacing (needs --rmin > 0)");
}

void add_model(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model,
                  "radius | midpoint | endpoints | gaussian (custom measures use --measure-file)")
      ->capture_default_str();
  cmd->add_option("--measure-file", o.measure_file, "Tabulated foot-distance CDF, CSV 't,F'");
  cmd->add_option("--tol", o.tol, "Absolute quadrature tolerance")->capture_default_str();
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Data format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "Write data here instead of standard output");
}

void add_sampling(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "Number of trials");
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (default: CHORDLAB_THREADS or all cores)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersection distance of two random lines through the unit disc", "chordlab"};
  app.require_subcommand(1);
  Options o;

  auto* cdf = app.add_subcommand("cdf", "P(distance <= r) on an r-grid");
  add_model(cdf, o);
  add_grid(cdf, o);
  add_output(cdf, o);

  auto* density = app.add_subcommand("density", "Density of the distance on an r-grid");
  add_model(density, o);
  add_grid(density, o);
  add_output(density, o);

  auto* sample = app.add_subcommand("sample", "Monte Carlo distances (csv) or histogram (json)");
  add_model(sample, o);
  add_sampling(sample, o);
  add_output(sample, o);

  auto* kstest = app.add_subcommand("kstest", "Kolmogorov-Smirnov test of sampler against the CDF");
  add_model(kstest, o);
  add_sampling(kstest, o);
  kstest->add_option("--threshold", o.threshold, "Pass when D <= threshold")->capture_default_str();

  auto* ngon_cmd = app.add_subcommand("ngon", "Diagonal intersections of the regular n-gon");
  ngon_cmd->add_option("--n", o.n, "Number of vertices (>= 4)")->required();
  ngon_cmd->add_option("--radii", o.radii, "Ascending query radii")->delimiter(',');
  ngon_cmd->add_flag("--lines", o.lines, "Also count the extended-lines variant");
  ngon_cmd->add_flag("--distinct", o.distinct, "Count distinct interior points (n <= 120)");
  ngon_cmd->add_option("--snap-tol", o.snap_tol, "Snapping pitch for --distinct")
      ->capture_default_str();
  ngon_cmd->add_option("--threads", o.threads, "Worker threads");
  add_output(ngon_cmd, o);

  auto* transform = app.add_subcommand("transform", "CDF of a tabulated line measure");
  transform->add_option("--measure-file", o.measure_file, "Tabulated foot-distance CDF, CSV 't,F'")
      ->required();
  transform->add_option("--tol", o.tol, "Absolute quadrature tolerance")->capture_default_str();
  transform->add_flag("--density", o.density, "Emit the density instead of the CDF");
  add_grid(transform, o);
  add_output(transform, o);

  auto* region = app.add_subcommand("region", "Probability of an annulus sector");
  add_model(region, o);
  region->add_option("--rlo", o.rlo, "Inner radius")->capture_default_str();
  region->add_option("--rhi", o.rhi, "Outer radius (number or inf)")->capture_default_str();
  region->add_option("--thlo", o.thlo, "Start angle")->capture_default_str();
  region->add_option("--thhi", o.thhi, "End angle")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (kstest->parsed()) return cmd_kstest(o, out);
    if (region->parsed()) return cmd_region(o, out);
    Sink sink(o.out_path, out, err);
    if (cdf->parsed()) return cmd_curve(o, false, sink);
    if (density->parsed()) return cmd_curve(o, true, sink);
    if (transform->parsed()) return cmd_curve(o, o.density, sink);
    if (sample->parsed()) return cmd_sample(o, sink);
    if (ngon_cmd->parsed()) return cmd_ngon(o, sink);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AmbiguityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitAmbiguity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace chordlab::cli
