#pragma once

// Integer-site local times of the walk, the random walk in random scenery Z,
// and the statistics built on top of them (L_n, V_n, R_n, X_n).

#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/fgn.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

/// How a real walk position is mapped to a lattice site.
enum class SiteConvention {
  Ceiling,  // smallest integer >= s (default)
  Floor,    // integer part, for sensitivity checks
};

std::int64_t site_of(double s, SiteConvention convention = SiteConvention::Ceiling);

/// Sites occupied at times 0..n.
std::vector<std::int64_t> visited_sites(const WalkPath& path, std::int64_t n,
                                        SiteConvention convention = SiteConvention::Ceiling);

/// N_n(x) = #{k in 0..n : site_of(S_k) = x}.
///
/// Stored densely over the contiguous span [min_site, max_site] of visited
/// sites; the span is O(n^H) wide, so this is both compact and cache friendly.
class LocalTimeProfile {
 public:
  LocalTimeProfile() = default;
  LocalTimeProfile(std::int64_t horizon, std::int64_t origin, std::vector<std::int64_t> counts);

  [[nodiscard]] std::int64_t horizon() const { return horizon_; }
  [[nodiscard]] std::int64_t count(std::int64_t site) const;
  [[nodiscard]] std::int64_t min_site() const { return origin_; }
  [[nodiscard]] std::int64_t max_site() const { return origin_ + static_cast<std::int64_t>(counts_.size()) - 1; }
  [[nodiscard]] std::span<const std::int64_t> dense_counts() const { return counts_; }

  /// Calls f(site, count) for every site with a nonzero count, in increasing site order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (counts_[i] != 0) f(origin_ + static_cast<std::int64_t>(i), counts_[i]);
  }

  /// Sum of all counts; equals horizon() + 1.
  [[nodiscard]] std::int64_t mass() const;

 private:
  std::int64_t horizon_ = 0;
  std::int64_t origin_ = 0;
  std::vector<std::int64_t> counts_;
};

LocalTimeProfile local_times(const WalkPath& path, std::int64_t n,
                             SiteConvention convention = SiteConvention::Ceiling);

/// Profiles at several horizons from a single pass over the path. The result is
/// ordered like `horizons`, which need not be sorted.
std::vector<LocalTimeProfile> local_times_at(const WalkPath& path, std::span<const std::int64_t> horizons,
                                             SiteConvention convention = SiteConvention::Ceiling);

/// L_n = max_x N_n(x).
std::int64_t max_local_time(const LocalTimeProfile& profile);
/// V_n = sum_x N_n(x)^2.
std::int64_t self_intersections(const LocalTimeProfile& profile);
/// R_n = #{x : N_n(x) != 0}.
std::int64_t range_count(const LocalTimeProfile& profile);

struct RwrsSeries {
  std::int64_t n = 0;
  std::vector<double> values;  // Z_0..Z_n
};

/// Z_j = sum_{k=0}^{j} xi_{site_of(S_k)}. Throws DefectError on a site missing from `scenery`.
RwrsSeries rwrs_series(const WalkPath& path, const SceneryMap& scenery, std::int64_t n,
                       SiteConvention convention = SiteConvention::Ceiling);

/// sum_x N_n(x) xi_x, the local-time form of Z_n.
double rwrs_local_time_form(const LocalTimeProfile& profile, const SceneryMap& scenery);

/// Linear interpolation Z_s for real 0 <= s <= n.
double interpolate(const RwrsSeries& series, double s);

struct KsStatParams {
  std::vector<double> thetas;
  std::vector<double> times;

  void validate() const;
};

/// floor(n t) as used for horizons of the statistic.
std::int64_t scaled_horizon(std::int64_t n, double t);

/// X_n = n^{-delta beta} sum_x |sum_j theta_j N_{floor(n t_j)}(x)|^beta,
/// with delta = 1 - H + H / beta. `profiles[j]` must have horizon floor(n t_j).
double ks_statistic(std::span<const LocalTimeProfile> profiles, const KsStatParams& p, std::int64_t n, double H,
                    double beta);

}  // namespace rwrs
