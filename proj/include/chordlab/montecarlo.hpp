#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chordlab/measures.hpp"

namespace chordlab::montecarlo {

using measures::PolarLine;
using measures::RadialMeasure;

/// Trials are generated in fixed chunks; chunk k draws from stream
/// stream_offset + k. The output therefore depends on (seed, stream_offset, n)
/// only, never on the thread count.
inline constexpr std::uint64_t kChunkTrials = 65536;

/// 64-bit Mersenne Twister keyed by (seed, stream).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct McConfig {
  std::uint64_t n = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t stream_offset = 0;

  void validate() const;
};

struct EmpiricalSample {
  std::string model_label;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::vector<double> distances;  // ascending
  std::uint64_t parallel_skips = 0;
};

/// One trial: two independent lines of the model. Uniform-endpoint chords are
/// built from four uniform angles. Returns nullopt for a numerically parallel
/// pair or a degenerate chord.
std::optional<std::pair<PolarLine, PolarLine>> draw_pair(const RadialMeasure& m, Rng& rng);

EmpiricalSample run_mc(const RadialMeasure& m, const McConfig& cfg);

/// Streaming alternative to run_mc for very large n: counts per log-spaced bin
/// plus underflow (r < r_lo) and overflow (r >= r_hi).
struct Histogram {
  std::string model_label;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::uint64_t parallel_skips = 0;
  std::vector<double> edges;          // bins + 1 ascending edges
  std::vector<std::uint64_t> counts;  // one per bin
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
};

inline constexpr std::size_t kHistogramBins = 10000;

Histogram run_mc_histogram(const RadialMeasure& m, const McConfig& cfg, double r_lo = 1e-4,
                           double r_hi = 1e6, std::size_t bins = kHistogramBins);

/// Two-sided Kolmogorov-Smirnov distance between the sample and cdf.
double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf);
double ks_statistic(const EmpiricalSample& s, const std::function<double(double)>& cdf);

/// Two-sample KS distance of two sorted samples.
double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

struct TailPoint {
  double r = 0.0;
  double tail = 0.0;         // empirical P(l > r)
  double scaled_tail = 0.0;  // r * tail
};

std::vector<TailPoint> tail_probe(const EmpiricalSample& s, const std::vector<double>& r_values);

}  // namespace chordlab::montecarlo
