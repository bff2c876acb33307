#include "chordlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "chordlab/errors.hpp"
#include "chordlab/geometry.hpp"

namespace chordlab::montecarlo {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t chunk_count(std::uint64_t n) { return (n + kChunkTrials - 1) / kChunkTrials; }

std::uint64_t chunk_size(std::uint64_t n, std::uint64_t chunk) {
  return std::min(kChunkTrials, n - chunk * kChunkTrials);
}

// Runs body(chunk) for every chunk, chunks handed out through an atomic
// counter. Any exception from a worker is rethrown on the caller.
template <class Body>
void for_each_chunk(std::uint64_t chunks, unsigned threads, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(threads, 1u), chunks));
  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto worker = [&](unsigned id) {
    try {
      for (std::uint64_t k = next++; k < chunks; k = next++) body(k);
    } catch (...) {
      errors[id] = std::current_exception();
      next = chunks;
    }
  };
  if (workers <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

void McConfig::validate() const {
  if (n < 1) throw DomainError("run_mc: n must be >= 1");
  if (threads < 1) throw DomainError("run_mc: threads must be >= 1");
}

std::optional<std::pair<PolarLine, PolarLine>> draw_pair(const RadialMeasure& m, Rng& rng) {
  PolarLine l1, l2;
  if (m.kind() == measures::MeasureKind::UniformEndpoints) {
    const double a1 = kTwoPi * rng.uniform(), b1 = kTwoPi * rng.uniform();
    const double a2 = kTwoPi * rng.uniform(), b2 = kTwoPi * rng.uniform();
    try {
      l1 = measures::chord_from_endpoints(a1, b1);
      l2 = measures::chord_from_endpoints(a2, b2);
    } catch (const DegenerateChordError&) {
      return std::nullopt;
    }
  } else {
    auto next = [&rng] { return rng.uniform(); };
    l1 = measures::sample_line(m, next);
    l2 = measures::sample_line(m, next);
  }
  if (geometry::is_parallel(l1, l2)) return std::nullopt;
  return std::make_pair(l1, l2);
}

EmpiricalSample run_mc(const RadialMeasure& m, const McConfig& cfg) {
  cfg.validate();
  const std::uint64_t chunks = chunk_count(cfg.n);
  std::vector<std::vector<double>> parts(chunks);
  std::vector<std::uint64_t> skips(chunks, 0);

  for_each_chunk(chunks, cfg.threads, [&](std::uint64_t k) {
    Rng rng(cfg.seed, cfg.stream_offset + k);
    const std::uint64_t trials = chunk_size(cfg.n, k);
    auto& out = parts[k];
    out.reserve(trials);
    for (std::uint64_t i = 0; i < trials; ++i) {
      const auto pair = draw_pair(m, rng);
      if (!pair) {
        ++skips[k];
        continue;
      }
      out.push_back(geometry::distance_only(pair->first, pair->second));
    }
  });

  EmpiricalSample s;
  s.model_label = std::string(m.label());
  s.seed = cfg.seed;
  s.distances.reserve(cfg.n);
  for (std::uint64_t k = 0; k < chunks; ++k) {
    s.distances.insert(s.distances.end(), parts[k].begin(), parts[k].end());
    s.parallel_skips += skips[k];
    std::vector<double>().swap(parts[k]);
  }
  std::sort(s.distances.begin(), s.distances.end());
  s.count = s.distances.size();
  return s;
}

Histogram run_mc_histogram(const RadialMeasure& m, const McConfig& cfg, double r_lo, double r_hi,
                           std::size_t bins) {
  cfg.validate();
  if (!(r_lo > 0.0 && r_hi > r_lo && std::isfinite(r_hi)))
    throw DomainError("histogram: need 0 < r_lo < r_hi < inf");
  if (bins < 1) throw DomainError("histogram: bins must be >= 1");

  Histogram h;
  h.model_label = std::string(m.label());
  h.seed = cfg.seed;
  h.edges.resize(bins + 1);
  const double log_lo = std::log(r_lo);
  const double log_step = (std::log(r_hi) - log_lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i)
    h.edges[i] = std::exp(log_lo + log_step * static_cast<double>(i));
  h.edges.front() = r_lo;
  h.edges.back() = r_hi;

  // Per-chunk tallies keep the merge order fixed; the last two slots hold
  // underflow and overflow.
  const std::uint64_t chunks = chunk_count(cfg.n);
  std::vector<std::vector<std::uint64_t>> tallies(chunks);
  std::vector<std::uint64_t> skips(chunks, 0);

  for_each_chunk(chunks, cfg.threads, [&](std::uint64_t k) {
    Rng rng(cfg.seed, cfg.stream_offset + k);
    auto& tally = tallies[k];
    tally.assign(bins + 2, 0);
    const std::uint64_t trials = chunk_size(cfg.n, k);
    for (std::uint64_t i = 0; i < trials; ++i) {
      const auto pair = draw_pair(m, rng);
      if (!pair) {
        ++skips[k];
        continue;
      }
      const double r = geometry::distance_only(pair->first, pair->second);
      if (r < r_lo) {
        ++tally[bins];
      } else if (r >= r_hi) {
        ++tally[bins + 1];
      } else {
        // The log estimate can land one bin off at an edge; the edges decide.
        auto idx = static_cast<std::size_t>((std::log(r) - log_lo) / log_step);
        idx = std::min(idx, bins - 1);
        while (idx > 0 && r < h.edges[idx]) --idx;
        while (idx + 1 < bins && r >= h.edges[idx + 1]) ++idx;
        ++tally[idx];
      }
    }
  });

  h.counts.assign(bins, 0);
  for (std::uint64_t k = 0; k < chunks; ++k) {
    for (std::size_t i = 0; i < bins; ++i) h.counts[i] += tallies[k][i];
    h.underflow += tallies[k][bins];
    h.overflow += tallies[k][bins + 1];
    h.parallel_skips += skips[k];
  }
  h.count = cfg.n - h.parallel_skips;
  return h;
}

double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw DomainError("ks_statistic: empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

double ks_statistic(const EmpiricalSample& s, const std::function<double(double)>& cdf) {
  return ks_statistic(s.distances, cdf);
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<TailPoint> tail_probe(const EmpiricalSample& s, const std::vector<double>& r_values) {
  std::vector<TailPoint> out;
  out.reserve(r_values.size());
  const double n = static_cast<double>(s.distances.size());
  for (double r : r_values) {
    TailPoint p;
    p.r = r;
    if (n > 0) {
      const auto above =
          s.distances.end() - std::upper_bound(s.distances.begin(), s.distances.end(), r);
      p.tail = static_cast<double>(above) / n;
    }
    p.scaled_tail = r * p.tail;
    out.push_back(p);
  }
  return out;
}

}  // namespace chordlab::montecarlo
