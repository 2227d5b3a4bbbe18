#pragma once

// Statistical verification kernel: ECFs, log-log fits, KS distances and
// mergeable summaries.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rwrs {

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Welford (count, mean, M2) summary. `merge` combines partial summaries from workers.
class RunningStats {
 public:
  void push(double x) noexcept;
  void merge(const RunningStats& other) noexcept;

  [[nodiscard]] std::int64_t count() const noexcept { return count_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  [[nodiscard]] double variance() const noexcept;
  [[nodiscard]] double stddev() const noexcept;
  /// Standard error of the mean.
  [[nodiscard]] double sem() const noexcept;

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Compensated mean.
double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);
/// Linear-interpolated quantile (type 7), q in [0, 1].
double quantile(std::vector<double> xs, double q);
double median(std::vector<double> xs);
double interquartile_range(std::vector<double> xs);

struct EcfEstimate {
  std::vector<double> u_grid;
  std::vector<double> re;
  std::vector<double> im;
  std::vector<double> se_re;
  std::vector<double> se_im;
  std::int64_t M = 0;
};

/// Per u: means of cos(u x) and sin(u x), each with SE = sample SD / sqrt(M).
EcfEstimate ecf(std::span<const double> samples, std::span<const double> u_grid);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
};

/// Least squares of log y on log n.
SlopeFit slope_fit(std::span<const double> n_grid, std::span<const double> y);

/// Sup distance between the two empirical CDFs.
double ks_distance(std::span<const double> a, std::span<const double> b);

struct CfComparison {
  std::vector<double> z;
  double max_abs_z = 0.0;
  std::vector<bool> flagged;  // |z| > threshold

  [[nodiscard]] bool passed() const;
};

/// z_u = (re_u - target_u) / sqrt(se_u^2 + target_se_u^2). Throws NumericalFailure
/// when the combined SE is zero but the deviation is not.
CfComparison cf_compare(const EcfEstimate& e, std::span<const double> target,
                        std::optional<std::span<const double>> target_se = std::nullopt, double threshold = 3.0);

}  // namespace rwrs
