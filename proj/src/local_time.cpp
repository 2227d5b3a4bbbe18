#include "rwrs/local_time.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rwrs/errors.hpp"
#include "rwrs/model.hpp"

namespace rwrs {

std::int64_t site_of(double s, SiteConvention convention) {
  const double snapped = convention == SiteConvention::Ceiling ? std::ceil(s) : std::floor(s);
  return static_cast<std::int64_t>(snapped);
}

std::vector<std::int64_t> visited_sites(const WalkPath& path, std::int64_t n, SiteConvention convention) {
  if (n < 0 || n > path.n) throw UsageError("horizon " + std::to_string(n) + " outside walk of length " +
                                            std::to_string(path.n));
  std::vector<std::int64_t> sites(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) sites[k] = site_of(path.sums[k], convention);
  return sites;
}

LocalTimeProfile::LocalTimeProfile(std::int64_t horizon, std::int64_t origin, std::vector<std::int64_t> counts)
    : horizon_(horizon), origin_(origin), counts_(std::move(counts)) {}

std::int64_t LocalTimeProfile::count(std::int64_t site) const {
  if (site < origin_ || site > max_site()) return 0;
  return counts_[static_cast<std::size_t>(site - origin_)];
}

std::int64_t LocalTimeProfile::mass() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

LocalTimeProfile local_times(const WalkPath& path, std::int64_t n, SiteConvention convention) {
  const std::int64_t horizons[] = {n};
  return std::move(local_times_at(path, horizons, convention).front());
}

std::vector<LocalTimeProfile> local_times_at(const WalkPath& path, std::span<const std::int64_t> horizons,
                                             SiteConvention convention) {
  if (horizons.empty()) return {};
  const std::int64_t last = *std::max_element(horizons.begin(), horizons.end());
  for (auto h : horizons)
    if (h < 0) throw UsageError("negative local-time horizon");
  const auto sites = visited_sites(path, last, convention);

  // Each checkpoint stores counts over the span visited up to its own horizon.
  std::vector<std::size_t> order(horizons.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return horizons[a] < horizons[b]; });

  const auto [lo_it, hi_it] = std::minmax_element(sites.begin(), sites.end());
  const std::int64_t lo = *lo_it;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(*hi_it - lo + 1), 0);

  std::vector<LocalTimeProfile> out(horizons.size());
  std::int64_t span_lo = sites[0];
  std::int64_t span_hi = sites[0];
  std::int64_t k = 0;
  for (auto idx : order) {
    for (; k <= horizons[idx]; ++k) {
      ++counts[static_cast<std::size_t>(sites[k] - lo)];
      span_lo = std::min(span_lo, sites[k]);
      span_hi = std::max(span_hi, sites[k]);
    }
    std::vector<std::int64_t> window(counts.begin() + (span_lo - lo), counts.begin() + (span_hi - lo + 1));
    out[idx] = LocalTimeProfile(horizons[idx], span_lo, std::move(window));
  }
  return out;
}

std::int64_t max_local_time(const LocalTimeProfile& profile) {
  const auto c = profile.dense_counts();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end());
}

std::int64_t self_intersections(const LocalTimeProfile& profile) {
  std::int64_t v = 0;
  for (auto c : profile.dense_counts()) v += c * c;
  return v;
}

std::int64_t range_count(const LocalTimeProfile& profile) {
  const auto c = profile.dense_counts();
  return std::count_if(c.begin(), c.end(), [](auto x) { return x != 0; });
}

namespace {

double lookup(const SceneryMap& scenery, std::int64_t site) {
  const auto it = scenery.find(site);
  if (it == scenery.end()) throw DefectError("scenery has no value for visited site " + std::to_string(site));
  return it->second;
}

}  // namespace

RwrsSeries rwrs_series(const WalkPath& path, const SceneryMap& scenery, std::int64_t n, SiteConvention convention) {
  const auto sites = visited_sites(path, n, convention);
  RwrsSeries series;
  series.n = n;
  series.values.resize(sites.size());
  double z = 0.0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    z += lookup(scenery, sites[k]);
    series.values[k] = z;
  }
  return series;
}

double rwrs_local_time_form(const LocalTimeProfile& profile, const SceneryMap& scenery) {
  double z = 0.0;
  profile.for_each([&](std::int64_t site, std::int64_t c) { z += static_cast<double>(c) * lookup(scenery, site); });
  return z;
}

double interpolate(const RwrsSeries& series, double s) {
  if (!(s >= 0.0 && s <= static_cast<double>(series.n)))
    throw UsageError("interpolation time " + std::to_string(s) + " outside [0, " + std::to_string(series.n) + "]");
  const double base = std::floor(s);
  const auto i = static_cast<std::size_t>(base);
  if (i >= static_cast<std::size_t>(series.n)) return series.values[static_cast<std::size_t>(series.n)];
  const double frac = s - base;
  if (frac == 0.0) return series.values[i];
  return series.values[i] + frac * (series.values[i + 1] - series.values[i]);
}

void KsStatParams::validate() const {
  if (thetas.empty()) throw UsageError("statistic needs at least one (theta, t) pair");
  if (thetas.size() != times.size()) throw UsageError("thetas and times must have equal length");
  for (double t : times)
    if (!(t >= 0.0)) throw UsageError("times must be nonnegative");
}

std::int64_t scaled_horizon(std::int64_t n, double t) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(n) * t));
}

double ks_statistic(std::span<const LocalTimeProfile> profiles, const KsStatParams& p, std::int64_t n, double H,
                    double beta) {
  p.validate();
  if (profiles.size() != p.times.size()) throw UsageError("one profile per time is required");
  std::int64_t lo = profiles[0].min_site();
  std::int64_t hi = profiles[0].max_site();
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    if (profiles[j].horizon() != scaled_horizon(n, p.times[j]))
      throw UsageError("profile " + std::to_string(j) + " has horizon " + std::to_string(profiles[j].horizon()) +
                       ", expected floor(n t) = " + std::to_string(scaled_horizon(n, p.times[j])));
    lo = std::min(lo, profiles[j].min_site());
    hi = std::max(hi, profiles[j].max_site());
  }

  double total = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    double mixed = 0.0;
    for (std::size_t j = 0; j < profiles.size(); ++j)
      mixed += p.thetas[j] * static_cast<double>(profiles[j].count(x));
    if (mixed != 0.0) total += std::pow(std::abs(mixed), beta);
  }
  const double delta = delta_exponent(H, beta);
  return std::pow(static_cast<double>(n), -delta * beta) * total;
}

}  // namespace rwrs
