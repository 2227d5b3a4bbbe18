#pragma once

// Monte Carlo estimates of the limiting objects: fBm local time on a spatial
// grid, the functional X = int |sum_j theta_j L_{t_j}(x)|^beta dx, the process
// Delta(t) = int L_t(x) dW(x), and normalized sums Gamma_n of its copies.

#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/fgn.hpp"
#include "rwrs/model.hpp"
#include "rwrs/random.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

inline constexpr std::int64_t kDefaultGridDensity = 4096;
inline constexpr std::int64_t kDefaultBins = 512;

/// Box-counting occupation density of an fBm path.
struct FbmLocalTimeGrid {
  std::int64_t m = 0;
  std::vector<double> times;
  double bin_origin = 0.0;
  double bin_width = 0.0;
  std::int64_t bins = 0;
  /// densities[j][b] estimates L_{t_j}(bin_origin + b * bin_width).
  std::vector<std::vector<double>> densities;
  /// Set when the path is constant and the bin width fell back to kFloorBinWidth.
  bool degenerate = false;
};

inline constexpr double kFloorBinWidth = 1.0 / 1024.0;

/// Bins span [min B - h, max B + h] over the full path, with h = (max B - min B) / (K - 2).
/// L_{t_j}(x_b) = #{i : i/m <= t_j, B(i/m) in bin b} / (m h).
FbmLocalTimeGrid fbm_local_time(const FbmGrid& path, std::span<const double> times, std::int64_t bins);

/// sum_b |sum_j theta_j L_{t_j}(x_b)|^beta h.
double x_functional(const FbmLocalTimeGrid& grid, std::span<const double> thetas, double beta);

struct MonteCarloEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::int64_t M = 0;
};

struct OracleConfig {
  std::int64_t m = kDefaultGridDensity;
  std::int64_t bins = kDefaultBins;
  unsigned jobs = 0;
};

/// x_functional evaluated on each of `replicates` independent fBm paths.
std::vector<double> sample_x_functional(const ModelParams& params, std::span<const double> thetas,
                                        std::span<const double> times, std::int64_t replicates, StreamKey key,
                                        const OracleConfig& cfg = {});

/// Monte Carlo mean and standard error of X over `replicates` fBm paths.
MonteCarloEstimate estimate_EX(const ModelParams& params, std::span<const double> thetas,
                               std::span<const double> times, std::int64_t replicates, StreamKey key,
                               const OracleConfig& cfg = {});

struct DeltaSample {
  std::vector<double> times;
  std::vector<double> values;
};

/// Delta(t_j) = sum_b L_{t_j}(x_b) dW_b for given bin increments dW_b. Delta(0) = 0.
DeltaSample delta_from_increments(const FbmLocalTimeGrid& grid, std::span<const double> increments);

/// dW_b = h^{1/beta} Z_b with Z_b i.i.d. symmetric stable(beta, sigma).
std::vector<double> sample_bin_increments(const FbmLocalTimeGrid& grid, const StableParams& p, CounterRng& rng);

DeltaSample sample_delta(const FbmGrid& path, std::span<const double> times, std::int64_t bins,
                         const StableParams& p, CounterRng& rng);

/// Gamma_n(t) = n^{-1/beta} sum_{i=1}^n Delta^{(i)}(t) with independent fBm
/// paths and stable noise per copy. Copies are drawn from `key.child(i)`.
std::vector<double> sample_gamma_n(std::int64_t copies, std::span<const double> times, const ModelParams& params,
                                   StreamKey key, std::int64_t m = kDefaultGridDensity,
                                   std::int64_t bins = kDefaultBins);

}  // namespace rwrs
