#include "rwrs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwrs/errors.hpp"

namespace rwrs {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

void RunningStats::push(double x) noexcept {
  ++count_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(count_);
  m2_ += d * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const auto n = static_cast<double>(count_ + other.count_);
  const double d = other.mean_ - mean_;
  mean_ += d * static_cast<double>(other.count_) / n;
  m2_ += other.m2_ + d * d * static_cast<double>(count_) * static_cast<double>(other.count_) / n;
  count_ += other.count_;
}

double RunningStats::variance() const noexcept {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningStats::stddev() const noexcept { return std::sqrt(variance()); }

double RunningStats::sem() const noexcept {
  return count_ < 1 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_));
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw UsageError("mean of empty sample");
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw UsageError("variance needs at least two samples");
  const double mu = mean(xs);
  CompensatedSum s;
  for (double x : xs) s.add((x - mu) * (x - mu));
  return s.value() / static_cast<double>(xs.size() - 1);
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw UsageError("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw UsageError("quantile level must lie in [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

double interquartile_range(std::vector<double> xs) {
  const double q3 = quantile(xs, 0.75);
  return q3 - quantile(std::move(xs), 0.25);
}

EcfEstimate ecf(std::span<const double> samples, std::span<const double> u_grid) {
  if (samples.empty()) throw UsageError("empirical characteristic function of an empty sample");
  EcfEstimate e;
  e.u_grid.assign(u_grid.begin(), u_grid.end());
  e.M = static_cast<std::int64_t>(samples.size());
  const double root_m = std::sqrt(static_cast<double>(samples.size()));
  for (double u : u_grid) {
    std::vector<double> c(samples.size());
    std::vector<double> s(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      c[i] = std::cos(u * samples[i]);
      s[i] = std::sin(u * samples[i]);
    }
    e.re.push_back(mean(c));
    e.im.push_back(mean(s));
    e.se_re.push_back(samples.size() < 2 ? 0.0 : std::sqrt(sample_variance(c)) / root_m);
    e.se_im.push_back(samples.size() < 2 ? 0.0 : std::sqrt(sample_variance(s)) / root_m);
  }
  return e;
}

SlopeFit slope_fit(std::span<const double> n_grid, std::span<const double> y) {
  if (n_grid.size() != y.size()) throw UsageError("slope fit needs equally long grids");
  if (n_grid.size() < 3) throw UsageError("slope fit needs at least three points");
  const std::size_t k = y.size();
  std::vector<double> lx(k), ly(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(n_grid[i] > 0.0)) throw UsageError("slope fit needs positive abscissae");
    if (!(y[i] > 0.0)) throw UsageError("slope fit needs positive values, got " + std::to_string(y[i]));
    lx[i] = std::log(n_grid[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = mean(lx);
  const double my = mean(ly);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw UsageError("slope fit needs distinct abscissae");

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    sse += r * r;
  }
  fit.stderr_slope = std::sqrt(sse / static_cast<double>(k - 2) / sxx);
  fit.r2 = syy == 0.0 ? 1.0 : std::clamp(1.0 - sse / syy, 0.0, 1.0);
  return fit;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw UsageError("KS distance needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto na = static_cast<double>(x.size());
  const auto nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

bool CfComparison::passed() const {
  return std::none_of(flagged.begin(), flagged.end(), [](bool f) { return f; });
}

CfComparison cf_compare(const EcfEstimate& e, std::span<const double> target,
                        std::optional<std::span<const double>> target_se, double threshold) {
  if (target.size() != e.re.size()) throw UsageError("target grid does not match the ECF grid");
  if (target_se && target_se->size() != target.size()) throw UsageError("target SE grid does not match");
  CfComparison out;
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double extra = target_se ? (*target_se)[k] : 0.0;
    const double se = std::sqrt(e.se_re[k] * e.se_re[k] + extra * extra);
    const double dev = e.re[k] - target[k];
    double z = 0.0;
    if (se > 0.0) {
      z = dev / se;
    } else if (dev != 0.0) {
      throw NumericalFailure("zero standard error with nonzero deviation at u = " + std::to_string(e.u_grid[k]));
    }
    out.z.push_back(z);
    out.flagged.push_back(std::abs(z) > threshold);
    out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
  }
  return out;
}

}  // namespace rwrs
