#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "chordlab/distribution.hpp"
#include "chordlab/montecarlo.hpp"
#include "chordlab/ngon.hpp"

namespace chordlab::io {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

void write_curve_csv(std::ostream& out, const distribution::CdfCurve& curve);
nlohmann::json curve_json(const distribution::CdfCurve& curve);

/// One distance per row under the header `r`.
void write_sample_csv(std::ostream& out, const montecarlo::EmpiricalSample& s);

/// {model, seed, count, bins: [[lo, hi, count], ...]}. Underflow and overflow
/// are the first and last bins; the open overflow edge is written as null.
nlohmann::json histogram_json(const montecarlo::Histogram& h);

/// {n, radii, with_multiplicity, lines, parallel_pairs, distinct_interior,
///  pr_formula_value}; absent parts are null.
nlohmann::json ngon_json(const ngon::NgonReport& r);

}  // namespace chordlab::io
