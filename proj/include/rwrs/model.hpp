#pragma once

#include "rwrs/fgn.hpp"
#include "rwrs/stable.hpp"

namespace rwrs {

/// delta = 1 - H + H / beta. Throws UsageError for H outside (0,1) or beta outside (0,2].
double delta_exponent(double H, double beta);

/// (H, beta, sigma) together with the derived self-similarity exponent delta.
class ModelParams {
 public:
  ModelParams(double H, double beta, double sigma = 1.0);

  [[nodiscard]] double H() const { return H_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] double sigma() const { return sigma_; }
  [[nodiscard]] double delta() const { return delta_; }

  [[nodiscard]] HurstParams hurst() const { return {H_}; }
  [[nodiscard]] StableParams stable() const { return {beta_, sigma_}; }

 private:
  double H_;
  double beta_;
  double sigma_;
  double delta_;
};

}  // namespace rwrs
