#include "chordlab/io.hpp"

#include <charconv>
#include <ostream>

namespace chordlab::io {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_curve_csv(std::ostream& out, const distribution::CdfCurve& curve) {
  out << "r,value\n";
  for (const auto& [r, v] : curve.grid) out << format_double(r) << ',' << format_double(v) << '\n';
}

nlohmann::json curve_json(const distribution::CdfCurve& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& [r, v] : curve.grid) points.push_back({r, v});
  return {{"model", curve.model_label},
          {"quantity", curve.quantity == distribution::Quantity::Cdf ? "cdf" : "density"},
          {"provenance", std::string(distribution::to_string(curve.provenance))},
          {"points", std::move(points)}};
}

void write_sample_csv(std::ostream& out, const montecarlo::EmpiricalSample& s) {
  out << "r\n";
  for (double r : s.distances) out << format_double(r) << '\n';
}

nlohmann::json histogram_json(const montecarlo::Histogram& h) {
  nlohmann::json bins = nlohmann::json::array();
  bins.push_back({0.0, h.edges.front(), h.underflow});
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    bins.push_back({h.edges[i], h.edges[i + 1], h.counts[i]});
  bins.push_back({h.edges.back(), nullptr, h.overflow});
  return {{"model", h.model_label},
          {"seed", h.seed},
          {"count", h.count},
          {"parallel_skips", h.parallel_skips},
          {"bins", std::move(bins)}};
}

nlohmann::json ngon_json(const ngon::NgonReport& r) {
  auto or_null = [](const auto& v) -> nlohmann::json {
    if (v.empty()) return nullptr;
    return v;
  };
  nlohmann::json out = {{"n", r.n},
                        {"radii", r.radii},
                        {"total_pairs", r.total_pairs},
                        {"with_multiplicity", or_null(r.counts_with_multiplicity)},
                        {"lines", or_null(r.lines_counts)},
                        {"pr_formula_value", r.pr_formula_value}};
  if (r.lines_counts.empty()) {
    out["parallel_pairs"] = nullptr;
  } else {
    out["parallel_pairs"] = r.parallel_pairs;
    out["non_parallel_pairs"] = r.non_parallel_pairs;
  }
  out["distinct_interior"] =
      r.distinct_interior ? nlohmann::json(*r.distinct_interior) : nlohmann::json(nullptr);
  return out;
}

}  // namespace chordlab::io
