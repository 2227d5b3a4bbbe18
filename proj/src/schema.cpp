#include "rwrs/schema.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwrs/errors.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

double delta_exponent(double H, double beta) {
  HurstParams{H}.validate();
  StableParams{beta, 1.0}.validate();
  return 1.0 - H + H / beta;
}

ModelParams::ModelParams(double H, double beta, double sigma)
    : H_(H), beta_(beta), sigma_(sigma), delta_(delta_exponent(H, beta)) {
  StableParams{beta, sigma}.validate();
  if (std::abs(delta_ - (1.0 - H_ + H_ / beta_)) > 1e-15 || 1.0 / beta_ < delta_ - (1.0 - H_) - 1e-15)
    throw DefectError("delta exponent inconsistent with (H, beta)");
}

void SchemaConfig::validate() const {
  if (n < 1) throw UsageError("schema time scale n must be >= 1");
  if (copies < 1) throw UsageError("number of copies c_n must be >= 1");
  if (times.empty()) throw UsageError("schema needs at least one evaluation time");
  if (!std::is_sorted(times.begin(), times.end())) throw UsageError("schema times must be sorted");
  if (times.front() < 0.0) throw UsageError("schema times must be nonnegative");
}

std::int64_t schema_horizon(std::int64_t n, std::span<const double> times) {
  if (times.empty()) throw UsageError("schema needs at least one evaluation time");
  const double t_max = *std::max_element(times.begin(), times.end());
  if (t_max < 0.0) throw UsageError("schema times must be nonnegative");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(static_cast<double>(n) * t_max)));
}

std::vector<double> evaluate_Dn(const WalkPath& path, const SceneryMap& scenery, std::int64_t n,
                                std::span<const double> times, const ModelParams& params,
                                SiteConvention convention) {
  const std::int64_t horizon = schema_horizon(n, times);
  if (horizon > path.n) throw UsageError("walk too short for n * max(times)");
  const RwrsSeries z = rwrs_series(path, scenery, horizon, convention);
  const double scale = std::pow(static_cast<double>(n), -params.delta());
  std::vector<double> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) out[j] = scale * interpolate(z, static_cast<double>(n) * times[j]);
  return out;
}

std::vector<double> sample_Dn(std::int64_t n, std::span<const double> times, const ModelParams& params,
                              StreamKey key, const SchemaOptions& options, std::int64_t copy_index) {
  const std::int64_t horizon = schema_horizon(n, times);
  CounterRng walk_rng(role_key(key, StreamRole::Walk));
  const WalkPath path = sample_walk(horizon, params.hurst(), walk_rng);

  auto sites = visited_sites(path, horizon, options.convention);
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());

  SceneryMap scenery;
  if (options.scenery_override) {
    scenery.reserve(sites.size());
    for (auto x : sites) scenery.emplace(x, options.scenery_override(copy_index, x));
  } else {
    scenery = sample_scenery(options.scenery, params.stable(), sites, role_key(key, StreamRole::Scenery));
  }
  return evaluate_Dn(path, scenery, n, times, params, options.convention);
}

std::vector<double> sample_Gn(const SchemaConfig& cfg, const ModelParams& params, StreamKey key,
                              const SchemaOptions& options) {
  cfg.validate();
  std::vector<CompensatedSum> sums(cfg.times.size());
  for (std::int64_t i = 0; i < cfg.copies; ++i) {
    const auto d = sample_Dn(cfg.n, cfg.times, params, key.child(static_cast<std::uint64_t>(i)), options, i);
    for (std::size_t j = 0; j < d.size(); ++j) sums[j].add(d[j]);
  }
  const double scale = std::pow(static_cast<double>(cfg.copies), -1.0 / params.beta());
  std::vector<double> out(cfg.times.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = scale * sums[j].value();
  return out;
}

}  // namespace rwrs
