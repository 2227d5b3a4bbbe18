#include "rwrs/limit_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rwrs/errors.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {
namespace {

std::int64_t grid_cutoff(std::int64_t m, double t) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(m) * t));
}

double max_time(std::span<const double> times) {
  if (times.empty()) throw UsageError("at least one evaluation time is required");
  for (double t : times)
    if (!(t >= 0.0)) throw UsageError("evaluation times must be nonnegative");
  return *std::max_element(times.begin(), times.end());
}

}  // namespace

FbmLocalTimeGrid fbm_local_time(const FbmGrid& path, std::span<const double> times, std::int64_t bins) {
  if (bins < 2) throw UsageError("need at least two bins, got " + std::to_string(bins));
  const double t_max = max_time(times);
  if (grid_cutoff(path.m, t_max) > path.last_index())
    throw UsageError("local-time time " + std::to_string(t_max) + " beyond path horizon");

  FbmLocalTimeGrid grid;
  grid.m = path.m;
  grid.times.assign(times.begin(), times.end());
  grid.bins = bins;

  const auto [lo_it, hi_it] = std::minmax_element(path.values.begin(), path.values.end());
  const double span = *hi_it - *lo_it;
  if (span > 0.0 && bins > 2) {
    grid.bin_width = span / static_cast<double>(bins - 2);
    grid.bin_origin = *lo_it - grid.bin_width;
  } else if (span > 0.0) {
    // Two bins cannot carry padding on both sides; centre the range instead.
    grid.bin_width = span;
    grid.bin_origin = *lo_it - 0.5 * span;
  } else {
    grid.bin_width = kFloorBinWidth;
    grid.bin_origin = *lo_it - 0.5 * kFloorBinWidth * static_cast<double>(bins);
    grid.degenerate = span == 0.0;
  }

  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return times[a] < times[b]; });

  const auto nb = static_cast<std::size_t>(bins);
  std::vector<std::int64_t> counts(nb, 0);
  grid.densities.assign(times.size(), {});
  const double norm = 1.0 / (static_cast<double>(path.m) * grid.bin_width);
  std::int64_t i = 0;
  for (auto idx : order) {
    const std::int64_t cutoff = grid_cutoff(path.m, times[idx]);
    for (; i <= cutoff; ++i) {
      const double pos = (path.values[i] - grid.bin_origin) / grid.bin_width;
      const auto b = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(pos)), 0, bins - 1);
      ++counts[static_cast<std::size_t>(b)];
    }
    auto& dens = grid.densities[idx];
    dens.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) dens[b] = static_cast<double>(counts[b]) * norm;
  }
  return grid;
}

double x_functional(const FbmLocalTimeGrid& grid, std::span<const double> thetas, double beta) {
  if (thetas.size() != grid.times.size()) throw UsageError("one theta per grid time is required");
  CompensatedSum total;
  for (std::size_t b = 0; b < static_cast<std::size_t>(grid.bins); ++b) {
    double mixed = 0.0;
    for (std::size_t j = 0; j < thetas.size(); ++j) mixed += thetas[j] * grid.densities[j][b];
    if (mixed != 0.0) total.add(std::pow(std::abs(mixed), beta));
  }
  return total.value() * grid.bin_width;
}

std::vector<double> sample_x_functional(const ModelParams& params, std::span<const double> thetas,
                                        std::span<const double> times, std::int64_t replicates, StreamKey key,
                                        const OracleConfig& cfg) {
  if (replicates < 1) throw UsageError("need at least one replicate");
  if (thetas.size() != times.size()) throw UsageError("thetas and times must have equal length");
  const double horizon = std::max(max_time(times), 1.0 / static_cast<double>(cfg.m));
  std::vector<double> out(static_cast<std::size_t>(replicates));
  parallel_for(out.size(), cfg.jobs, [&](std::size_t r) {
    CounterRng rng(role_key(key.child(r), StreamRole::Fbm));
    const FbmGrid path = sample_fbm(cfg.m, horizon, params.hurst(), rng);
    out[r] = x_functional(fbm_local_time(path, times, cfg.bins), thetas, params.beta());
  });
  return out;
}

MonteCarloEstimate estimate_EX(const ModelParams& params, std::span<const double> thetas,
                               std::span<const double> times, std::int64_t replicates, StreamKey key,
                               const OracleConfig& cfg) {
  if (replicates < 2) throw UsageError("estimate_EX needs M >= 2 replicates");
  if (std::all_of(thetas.begin(), thetas.end(), [](double t) { return t == 0.0; }))
    return {0.0, 0.0, replicates};
  const auto xs = sample_x_functional(params, thetas, times, replicates, key, cfg);
  RunningStats s;
  for (double x : xs) s.push(x);
  return {mean(xs), s.sem(), replicates};
}

DeltaSample delta_from_increments(const FbmLocalTimeGrid& grid, std::span<const double> increments) {
  if (static_cast<std::int64_t>(increments.size()) != grid.bins)
    throw UsageError("one increment per bin is required");
  DeltaSample out;
  out.times = grid.times;
  out.values.resize(grid.times.size());
  for (std::size_t j = 0; j < grid.times.size(); ++j) {
    // At t = 0 the grid holds the single starting point; the local time itself vanishes.
    if (grid.times[j] == 0.0) {
      out.values[j] = 0.0;
      continue;
    }
    CompensatedSum s;
    for (std::size_t b = 0; b < increments.size(); ++b) s.add(grid.densities[j][b] * increments[b]);
    out.values[j] = s.value();
  }
  return out;
}

std::vector<double> sample_bin_increments(const FbmLocalTimeGrid& grid, const StableParams& p, CounterRng& rng) {
  const double scale = std::pow(grid.bin_width, 1.0 / p.beta);
  std::vector<double> dw(static_cast<std::size_t>(grid.bins));
  for (auto& w : dw) w = scale * sample_stable(p, rng);
  return dw;
}

DeltaSample sample_delta(const FbmGrid& path, std::span<const double> times, std::int64_t bins,
                         const StableParams& p, CounterRng& rng) {
  p.validate();
  const auto grid = fbm_local_time(path, times, bins);
  const auto dw = sample_bin_increments(grid, p, rng);
  return delta_from_increments(grid, dw);
}

std::vector<double> sample_gamma_n(std::int64_t copies, std::span<const double> times, const ModelParams& params,
                                   StreamKey key, std::int64_t m, std::int64_t bins) {
  if (copies < 1) throw UsageError("Gamma_n needs at least one copy");
  const double horizon = std::max(max_time(times), 1.0 / static_cast<double>(m));
  std::vector<CompensatedSum> sums(times.size());
  for (std::int64_t i = 0; i < copies; ++i) {
    const StreamKey copy = key.child(static_cast<std::uint64_t>(i));
    CounterRng path_rng(role_key(copy, StreamRole::Fbm));
    CounterRng noise_rng(role_key(copy, StreamRole::BinNoise));
    const FbmGrid path = sample_fbm(m, horizon, params.hurst(), path_rng);
    const DeltaSample d = sample_delta(path, times, bins, params.stable(), noise_rng);
    for (std::size_t j = 0; j < times.size(); ++j) sums[j].add(d.values[j]);
  }
  const double scale = std::pow(static_cast<double>(copies), -1.0 / params.beta());
  std::vector<double> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) out[j] = scale * sums[j].value();
  return out;
}

}  // namespace rwrs
