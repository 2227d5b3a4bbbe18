#include "rwrs/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rwrs/errors.hpp"

namespace rwrs {

void StableParams::validate() const {
  if (!(beta > 0.0 && beta <= 2.0)) throw UsageError("beta must lie in (0, 2], got " + std::to_string(beta));
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw UsageError("sigma must be positive, got " + std::to_string(sigma));
}

SceneryKind parse_scenery_kind(std::string_view name) {
  if (name == "stable" || name == "exact-stable") return SceneryKind::ExactStable;
  if (name == "pareto" || name == "symmetric-pareto") return SceneryKind::SymmetricPareto;
  throw UsageError("unknown scenery kind '" + std::string(name) + "' (expected stable or pareto)");
}

std::string_view to_string(SceneryKind kind) {
  switch (kind) {
    case SceneryKind::ExactStable:
      return "stable";
    case SceneryKind::SymmetricPareto:
      return "pareto";
  }
  return "unknown";
}

double theoretical_cf(double u, const StableParams& p) {
  return std::exp(-std::pow(p.sigma * std::abs(u), p.beta));
}

double sample_stable(const StableParams& p, CounterRng& rng) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double v = std::numbers::pi * rng.uniform() - half_pi;
  const double w = rng.exponential();
  const double b = p.beta;
  if (b == 1.0) return p.sigma * std::tan(v);
  if (b == 2.0) return 2.0 * p.sigma * std::sin(v) * std::sqrt(w);
  const double x = std::sin(b * v) / std::pow(std::cos(v), 1.0 / b) *
                   std::pow(std::cos((1.0 - b) * v) / w, (1.0 - b) / b);
  return p.sigma * x;
}

double pareto_scale(const StableParams& p) {
  const double b = p.beta;
  const double tail_constant = std::numbers::pi / (2.0 * std::tgamma(b) * std::sin(std::numbers::pi * b / 2.0));
  return p.sigma / std::pow(tail_constant, 1.0 / b);
}

double sample_scenery_variate(SceneryKind kind, const StableParams& p, CounterRng& rng) {
  // Pareto tails with beta = 2 leave the normal domain of attraction, so the
  // Gaussian member of the domain is used instead.
  if (kind == SceneryKind::ExactStable || p.beta == 2.0) return sample_stable(p, rng);
  const double sign = (rng() >> 63) != 0 ? 1.0 : -1.0;
  return sign * pareto_scale(p) * std::pow(rng.uniform(), -1.0 / p.beta);
}

double scenery_value(SceneryKind kind, const StableParams& p, StreamKey key, std::int64_t site) {
  CounterRng rng(key.child(static_cast<std::uint64_t>(site)));
  return sample_scenery_variate(kind, p, rng);
}

SceneryMap sample_scenery(SceneryKind kind, const StableParams& p, std::span<const std::int64_t> sites,
                          StreamKey key) {
  SceneryMap out;
  out.reserve(sites.size());
  for (auto site : sites) out.try_emplace(site, scenery_value(kind, p, key, site));
  return out;
}

}  // namespace rwrs
