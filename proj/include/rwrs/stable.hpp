#pragma once

// Symmetric beta-stable variates and i.i.d. random sceneries.

#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>

#include "rwrs/random.hpp"

namespace rwrs {

/// Symmetric stable law with characteristic function exp(-sigma^beta |u|^beta).
struct StableParams {
  double beta = 2.0;
  double sigma = 1.0;

  /// Throws UsageError unless 0 < beta <= 2 and sigma > 0.
  void validate() const;
};

enum class SceneryKind {
  /// Exact symmetric stable variates.
  ExactStable,
  /// Symmetric Pareto tails P(|xi| > x) = (s/x)^beta, with s calibrated so that
  /// n^{-1/beta} partial sums converge to the same stable law.
  SymmetricPareto,
};

SceneryKind parse_scenery_kind(std::string_view name);
std::string_view to_string(SceneryKind kind);

/// Scenery values keyed by integer site.
using SceneryMap = std::unordered_map<std::int64_t, double>;

double theoretical_cf(double u, const StableParams& p);

/// Chambers-Mallows-Stuck draw, scaled so the characteristic function is
/// exactly exp(-sigma^beta |u|^beta). For beta = 2 the variance is 2 sigma^2.
double sample_stable(const StableParams& p, CounterRng& rng);

/// Scale s of the symmetric Pareto scenery. With P(|xi| > x) = (s/x)^beta the
/// normalized sums have limit exponent s^beta * pi / (2 Gamma(beta) sin(pi beta / 2)),
/// which is set equal to sigma^beta.
double pareto_scale(const StableParams& p);

/// Single scenery draw of the given kind from an arbitrary stream.
double sample_scenery_variate(SceneryKind kind, const StableParams& p, CounterRng& rng);

/// Value of the scenery at `site`. A pure function of (key, site).
double scenery_value(SceneryKind kind, const StableParams& p, StreamKey key, std::int64_t site);

/// One independent variate per requested site; re-querying a site with the same
/// key yields the same value.
SceneryMap sample_scenery(SceneryKind kind, const StableParams& p, std::span<const std::int64_t> sites,
                          StreamKey key);

}  // namespace rwrs
