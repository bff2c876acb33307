#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace chordlab::ngon {

/// Diagonal intersections of the regular n-gon inscribed in the unit circle,
/// vertex k at angle 2*pi*k/n. Counts are cumulative: entry i counts points at
/// distance <= radii[i] from the center.
struct NgonReport {
  int n = 0;
  std::vector<double> radii;

  // Crossing pair of each 4-subset, counted with multiplicity.
  std::vector<std::uint64_t> counts_with_multiplicity;
  std::uint64_t total_pairs = 0;  // C(n, 4)

  // All three pairings of each 4-subset, chords extended to lines.
  std::vector<std::uint64_t> lines_counts;
  std::uint64_t non_parallel_pairs = 0;
  std::uint64_t parallel_pairs = 0;

  std::optional<std::int64_t> distinct_interior;
  std::int64_t pr_formula_value = 0;
};

std::uint64_t binomial4(int n);

/// Chords {i,j} and {k,l} are parallel iff i + j == k + l (mod n).
bool chords_parallel(int i, int j, int k, int l, int n);

/// One pass over all 4-subsets filling the requested variants. radii must be
/// ascending and >= 0; the work is split by the smallest vertex index.
NgonReport enumerate(int n, const std::vector<double>& radii, bool interior, bool lines,
                     unsigned threads = 1);

/// Interior crossing points only; radii must lie in [0, 1].
NgonReport count_with_multiplicity(int n, const std::vector<double>& radii, unsigned threads = 1);

/// Extended-lines variant; radii may exceed 1.
NgonReport lines_histogram(int n, const std::vector<double>& radii, unsigned threads = 1);

/// Number of distinct interior intersection points by the closed formula with
/// divisibility indicators, in exact integer arithmetic.
std::int64_t poonen_rubinstein(int n);

/// Distinct interior intersection points by coordinate snapping at pitch
/// snap_tol. Throws AmbiguityError when two clusters sit closer than
/// 10 * snap_tol. Limited to 4 <= n <= 120.
std::int64_t distinct_count(int n, double snap_tol = 1e-9);

/// I_n(r) / I_n(1) for 0 <= r <= 1.
double karamata_ratio(int n, double r, unsigned threads = 1);

}  // namespace chordlab::ngon
