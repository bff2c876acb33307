#include "chordlab/ngon.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <utility>

#include "chordlab/errors.hpp"
#include "chordlab/geometry.hpp"

namespace chordlab::ngon {
namespace {

using std::numbers::pi;

// cos(pi * m / n), exact at the quarter turns so that zero offsets stay zero.
double cospi_ratio(int m, int n) {
  const int period = 2 * n;
  m %= period;
  if (m < 0) m += period;
  if (2 * m == n || 2 * m == 3 * n) return 0.0;
  if (m == 0) return 1.0;
  if (m == n) return -1.0;
  return std::cos(pi * static_cast<double>(m) / static_cast<double>(n));
}

double sinpi_ratio(int m, int n) { return cospi_ratio(2 * m - n, 2 * n); }

// cos(pi m / n) and sin^2(pi m / n) for m in [-2n, 2n). Both are even in m,
// so every pairing below reads them at an index that grows with d.
struct Tables {
  std::vector<double> cos_store, sin2_store;
  const double* cos_m;
  const double* sin2_m;

  explicit Tables(int n) : cos_store(4 * n), sin2_store(4 * n) {
    for (int m = -2 * n; m < 2 * n; ++m) {
      cos_store[m + 2 * n] = cospi_ratio(m, n);
      const double s = sinpi_ratio(m, n);
      sin2_store[m + 2 * n] = s * s;
    }
    cos_m = cos_store.data() + 2 * n;
    sin2_m = sin2_store.data() + 2 * n;
  }
};

struct Tally {
  std::vector<std::uint64_t> interior;  // cumulative, one per radius
  std::vector<std::uint64_t> lines;
  std::uint64_t parallel = 0;
};

// Adds #{v in values : v <= r2[k]} to counts[k]. Few radii: one branch-free
// pass per radius. Many radii: histogram by binary search, then cumulate.
void accumulate(const double* values, int len, const std::vector<double>& r2,
                std::uint64_t* counts, std::vector<std::uint64_t>& scratch) {
  const std::size_t k = r2.size();
  if (k <= 16) {
    for (std::size_t j = 0; j < k; ++j) {
      // Sums of 0.0/1.0 are exact in any order, so the reduction may be
      // reassociated into packed adds.
      const double bound = r2[j];
      double hits = 0.0;
#pragma omp simd reduction(+ : hits)
      for (int i = 0; i < len; ++i) hits += values[i] <= bound ? 1.0 : 0.0;
      counts[j] += static_cast<std::uint64_t>(hits);
    }
    return;
  }
  scratch.assign(k + 1, 0);
  for (int i = 0; i < len; ++i)
    ++scratch[static_cast<std::size_t>(std::lower_bound(r2.begin(), r2.end(), values[i]) -
                                       r2.begin())];
  std::uint64_t running = 0;
  for (std::size_t j = 0; j < k; ++j) {
    running += scratch[j];
    counts[j] += running;
  }
}

void scan_leading(int n, int a, const Tables& t, const std::vector<double>& r2, bool interior,
                  bool lines, Tally& out) {
  const double* C = t.cos_m;
  const double* S2 = t.sin2_m;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Exterior pairings share one buffer: (a,b)x(c,d) in the first len slots,
  // (a,d)x(b,c) in the next len.
  std::vector<double> crossing(n), exterior(2 * n);
  std::vector<std::uint64_t> scratch;
  std::vector<std::uint64_t> cross_counts(r2.size(), 0);

  for (int b = a + 1; b < n - 2; ++b) {
    for (int c = b + 1; c < n - 1; ++c) {
      // d runs over c+1 .. n-1; slot i holds d = c + 1 + i.
      const int len = n - c - 1;
      const int d0 = c + 1;
      const double s_ac = C[c - a];
      // Crossing pairing (a,c) x (b,d); never parallel.
      for (int i = 0; i < len; ++i) {
        const int d = d0 + i;
        const int m = b + d - a - c;
        crossing[i] = geometry::intersection_distance_sq(s_ac, C[d - b], C[m], S2[m]);
      }
      accumulate(crossing.data(), len, r2, cross_counts.data(), scratch);
      if (!lines) continue;

      // (a,b) x (c,d) and (a,d) x (b,c), extended to lines.
      const double s_ab = C[b - a];
      const double s_bc = C[c - b];
      double* side = exterior.data();
      double* outer = side + len;
      for (int i = 0; i < len; ++i) {
        const int d = d0 + i;
        const int m1 = c + d - a - b;
        side[i] = geometry::intersection_distance_sq(s_ab, C[d - c], C[m1], S2[m1]);
        const int m2 = a + d - b - c;
        outer[i] = geometry::intersection_distance_sq(C[d - a], s_bc, C[m2], S2[m2]);
      }
      // The exact predicate picks at most one parallel d per pairing.
      const int d_side = n + a + b - c;
      if (d_side >= d0 && d_side < n) {
        side[d_side - d0] = kInf;
        ++out.parallel;
      }
      const int d_outer = b + c - a;
      if (d_outer >= d0 && d_outer < n) {
        outer[d_outer - d0] = kInf;
        ++out.parallel;
      }
      accumulate(side, 2 * len, r2, out.lines.data(), scratch);
    }
  }
  for (std::size_t j = 0; j < r2.size(); ++j) {
    if (interior) out.interior[j] += cross_counts[j];
    if (lines) out.lines[j] += cross_counts[j];
  }
}

void check_n(int n) {
  if (n < 4) throw DomainError("ngon: n must be >= 4");
  if (n > 1'000'000) throw DomainError("ngon: n too large");
}

void check_radii(const std::vector<double>& radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0) || !std::isfinite(radii[i]))
      throw DomainError("ngon: radii must be finite and >= 0");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("ngon: radii must be ascending");
  }
}

// Snapped coordinates of a point.
using Key = std::pair<std::int64_t, std::int64_t>;

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::uint64_t binomial4(int n) {
  if (n < 4) return 0;
  const auto m = static_cast<std::uint64_t>(n);
  return m * (m - 1) / 2 * (m - 2) / 3 * (m - 3) / 4;
}

bool chords_parallel(int i, int j, int k, int l, int n) {
  if (n < 3) throw DomainError("chords_parallel: n must be >= 3");
  return ((i + j - k - l) % n + n) % n == 0;
}

NgonReport enumerate(int n, const std::vector<double>& radii, bool interior, bool lines,
                     unsigned threads) {
  check_n(n);
  check_radii(radii);
  const std::size_t k = radii.size();
  std::vector<double> r2(k);
  for (std::size_t i = 0; i < k; ++i) r2[i] = radii[i] * radii[i];
  const Tables tables(n);

  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n - 3));
  std::vector<Tally> tallies(workers);
  for (auto& t : tallies) {
    t.interior.assign(k, 0);
    t.lines.assign(k, 0);
  }
  // Leading indices are handed out dynamically since a = 0 carries the most
  // work; the sums do not depend on the assignment.
  std::atomic<int> next{0};
  auto worker = [&](unsigned id) {
    for (int a = next++; a < n - 3; a = next++)
      scan_leading(n, a, tables, r2, interior, lines, tallies[id]);
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }

  NgonReport report;
  report.n = n;
  report.radii = radii;
  report.total_pairs = binomial4(n);
  report.pr_formula_value = poonen_rubinstein(n);
  if (interior) report.counts_with_multiplicity.assign(k, 0);
  if (lines) report.lines_counts.assign(k, 0);
  std::uint64_t parallel = 0;
  for (const auto& t : tallies) {
    for (std::size_t i = 0; i < k; ++i) {
      if (interior) report.counts_with_multiplicity[i] += t.interior[i];
      if (lines) report.lines_counts[i] += t.lines[i];
    }
    parallel += t.parallel;
  }
  if (lines) {
    report.parallel_pairs = parallel;
    report.non_parallel_pairs = 3 * report.total_pairs - parallel;
  }
  return report;
}

NgonReport count_with_multiplicity(int n, const std::vector<double>& radii, unsigned threads) {
  for (double r : radii)
    if (r > 1.0) throw DomainError("count_with_multiplicity: radii must lie in [0, 1]");
  return enumerate(n, radii, true, false, threads);
}

NgonReport lines_histogram(int n, const std::vector<double>& radii, unsigned threads) {
  return enumerate(n, radii, false, true, threads);
}

std::int64_t poonen_rubinstein(int n) {
  if (n < 3) throw DomainError("poonen_rubinstein: n must be >= 3");
  const std::int64_t m = n;
  auto exact_div = [](std::int64_t num, std::int64_t den) {
    if (num % den != 0) throw Error("poonen_rubinstein: inexact division");
    return num / den;
  };
  auto divides = [m](std::int64_t k) { return m % k == 0; };

  std::int64_t total = static_cast<std::int64_t>(binomial4(n));
  if (divides(2)) total -= exact_div(5 * m * m * m - 45 * m * m + 70 * m - 24, 24);
  if (divides(4)) total -= exact_div(3 * m, 2);
  if (divides(6)) total -= exact_div(45 * m * m - 262 * m, 6);
  if (divides(12)) total += 42 * m;
  if (divides(18)) total += 60 * m;
  if (divides(24)) total += 35 * m;
  if (divides(30)) total -= 38 * m;
  if (divides(42)) total -= 82 * m;
  if (divides(60)) total -= 330 * m;
  if (divides(84)) total -= 144 * m;
  if (divides(90)) total -= 96 * m;
  if (divides(120)) total -= 144 * m;
  if (divides(210)) total -= 96 * m;
  return total;
}

std::int64_t distinct_count(int n, double snap_tol) {
  if (n < 4 || n > 120) throw DomainError("distinct_count: n must lie in [4, 120]");
  if (!(snap_tol > 0.0) || !(snap_tol < 1e-3))
    throw DomainError("distinct_count: snap_tol must lie in (0, 1e-3)");

  auto chord = [n](int i, int j) {
    const double step = 2.0 * pi / static_cast<double>(n);
    return measures::chord_from_endpoints(step * i, step * j);
  };

  std::vector<geometry::PlanarPoint> points;
  points.reserve(binomial4(n));
  for (int a = 0; a < n - 3; ++a)
    for (int b = a + 1; b < n - 2; ++b)
      for (int c = b + 1; c < n - 1; ++c) {
        const auto ac = chord(a, c);
        for (int d = c + 1; d < n; ++d) points.push_back(geometry::intersect(ac, chord(b, d)));
      }

  auto snap = [snap_tol](double v) { return static_cast<std::int64_t>(std::llround(v / snap_tol)); };
  std::vector<Key> keys;
  keys.reserve(points.size());
  for (const auto& p : points) keys.emplace_back(snap(p.x()), snap(p.y()));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  // Copies of one point can straddle a rounding boundary; merge neighbouring
  // grid cells.
  DisjointSets sets(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const Key probe{keys[i].first + dx, keys[i].second + dy};
        const auto it = std::lower_bound(keys.begin(), keys.end(), probe);
        if (it != keys.end() && *it == probe)
          sets.unite(i, static_cast<std::size_t>(it - keys.begin()));
      }
  }

  // One representative per cluster, bucketed on a grid of pitch 10 * snap_tol.
  const double coarse = 10.0 * snap_tol;
  struct Rep {
    Key cell;
    double x, y;
  };
  std::vector<Rep> reps;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (sets.find(i) != i) continue;
    const double x = static_cast<double>(keys[i].first) * snap_tol;
    const double y = static_cast<double>(keys[i].second) * snap_tol;
    reps.push_back({{static_cast<std::int64_t>(std::floor(x / coarse)),
                     static_cast<std::int64_t>(std::floor(y / coarse))},
                    x, y});
  }
  std::sort(reps.begin(), reps.end(), [](const Rep& l, const Rep& r) { return l.cell < r.cell; });
  auto cell_less = [](const Rep& r, const Key& k) { return r.cell < k; };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const Key probe{reps[i].cell.first + dx, reps[i].cell.second + dy};
        auto it = std::lower_bound(reps.begin(), reps.end(), probe, cell_less);
        for (; it != reps.end() && it->cell == probe; ++it) {
          if (&*it == &reps[i]) continue;
          if (std::hypot(it->x - reps[i].x, it->y - reps[i].y) < coarse)
            throw AmbiguityError("distinct_count: clusters closer than 10 * snap_tol at n = " +
                                 std::to_string(n) + "; tolerance inconclusive");
        }
      }
  }
  return static_cast<std::int64_t>(reps.size());
}

double karamata_ratio(int n, double r, unsigned threads) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("karamata_ratio: r must lie in [0, 1]");
  const auto report = count_with_multiplicity(n, {r}, threads);
  return static_cast<double>(report.counts_with_multiplicity[0]) /
         static_cast<double>(report.total_pairs);
}

}  // namespace chordlab::ngon
