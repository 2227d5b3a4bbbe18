#pragma once

// Fractional Gaussian noise increments, the dependent Gaussian walk they drive,
// and fine-grid fractional Brownian motion paths.

#include <cstdint>
#include <memory>
#include <vector>

#include "rwrs/random.hpp"

namespace rwrs {

struct HurstParams {
  double H = 0.5;

  /// Throws UsageError unless 0 < H < 1.
  void validate() const;
};

/// Increments X_1..X_n and partial sums S_0..S_n of the walk.
struct WalkPath {
  std::int64_t n = 0;
  std::vector<double> increments;  // size n
  std::vector<double> sums;        // size n + 1, sums[0] == 0
};

/// fBm sampled at i/m for i = 0..floor(m T).
struct FbmGrid {
  std::int64_t m = 0;
  double T = 0.0;
  std::vector<double> values;

  [[nodiscard]] std::int64_t last_index() const { return static_cast<std::int64_t>(values.size()) - 1; }
};

/// r(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
double fgn_covariance(std::int64_t k, const HurstParams& h);

enum class FgnMethod {
  /// Circulant embedding, falling back to Durbin-Levinson when the embedding
  /// has a negative eigenvalue and n is small enough.
  Automatic,
  CirculantEmbedding,
  DurbinLevinson,
};

/// Largest n for which the O(n^2) dense fallback is used.
inline constexpr std::int64_t kDenseFallbackLimit = 2048;

/// Circulant embedding weights for fGn of length up to `capacity()`.
/// Immutable after construction and safe to share between threads.
class CirculantFgn {
 public:
  /// Throws NumericalFailure if the embedding has a materially negative eigenvalue.
  CirculantFgn(std::int64_t n, const HurstParams& h);
  ~CirculantFgn();
  CirculantFgn(const CirculantFgn&) = delete;
  CirculantFgn& operator=(const CirculantFgn&) = delete;

  [[nodiscard]] std::int64_t capacity() const { return half_size_; }
  [[nodiscard]] const std::vector<double>& eigenvalues() const { return eigenvalues_; }

  /// Fills `out` (size <= capacity()) with one fGn sample.
  void sample(std::vector<double>& out, CounterRng& rng) const;

  /// Shared instance for (n rounded up to a power of two, H).
  static std::shared_ptr<const CirculantFgn> cached(std::int64_t n, const HurstParams& h);

 private:
  std::int64_t half_size_;           // N, embedding size is 2N
  std::vector<double> eigenvalues_;  // lambda_0..lambda_N
  void* plan_ = nullptr;             // fftw_plan (complex-to-real, size 2N)
};

/// Exact fGn via the Durbin-Levinson recursion, O(n^2).
void sample_fgn_dense(std::vector<double>& out, const HurstParams& h, CounterRng& rng);

WalkPath sample_walk(std::int64_t n, const HurstParams& h, CounterRng& rng,
                     FgnMethod method = FgnMethod::Automatic);

/// B(i/m) = m^{-H} S_i with S from sample_walk(floor(m T)).
FbmGrid sample_fbm(std::int64_t m, double T, const HurstParams& h, CounterRng& rng);

}  // namespace rwrs
