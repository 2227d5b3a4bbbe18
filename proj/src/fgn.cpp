#include "rwrs/fgn.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "rwrs/errors.hpp"

namespace rwrs {
namespace {

// The FFTW planner is not thread-safe; executing an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void HurstParams::validate() const {
  if (!(H > 0.0 && H < 1.0)) throw UsageError("Hurst index must lie in (0, 1), got " + std::to_string(H));
}

double fgn_covariance(std::int64_t k, const HurstParams& h) {
  const double a = std::abs(static_cast<double>(k));
  const double e = 2.0 * h.H;
  return 0.5 * (std::pow(a + 1.0, e) - 2.0 * std::pow(a, e) + std::pow(std::abs(a - 1.0), e));
}

CirculantFgn::CirculantFgn(std::int64_t n, const HurstParams& h) {
  h.validate();
  if (n < 1) throw UsageError("fGn length must be >= 1");
  half_size_ = static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(n)));
  const std::int64_t size = 2 * half_size_;

  std::vector<double> row(static_cast<std::size_t>(size));
  for (std::int64_t j = 0; j <= half_size_; ++j) row[j] = fgn_covariance(j, h);
  for (std::int64_t j = half_size_ + 1; j < size; ++j) row[j] = row[size - j];

  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(half_size_ + 1));
  std::vector<std::complex<double>> scratch(spectrum.size());
  std::vector<double> real_out(static_cast<std::size_t>(size));
  {
    std::lock_guard lock(planner_mutex());
    fftw_plan forward = fftw_plan_dft_r2c_1d(static_cast<int>(size), row.data(),
                                             reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_ESTIMATE);
    fftw_execute(forward);
    fftw_destroy_plan(forward);
    plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(size), reinterpret_cast<fftw_complex*>(scratch.data()),
                                 real_out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  }

  eigenvalues_.resize(spectrum.size());
  double largest = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    eigenvalues_[k] = spectrum[k].real();
    largest = std::max(largest, std::abs(eigenvalues_[k]));
  }
  for (std::size_t k = 0; k < eigenvalues_.size(); ++k) {
    double& lambda = eigenvalues_[k];
    if (lambda < -1e-9 * largest) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(static_cast<fftw_plan>(plan_));
      plan_ = nullptr;
      throw NumericalFailure("circulant embedding has negative eigenvalue " + std::to_string(lambda) +
                             " at frequency " + std::to_string(k));
    }
    lambda = std::max(lambda, 0.0);
  }
}

CirculantFgn::~CirculantFgn() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

void CirculantFgn::sample(std::vector<double>& out, CounterRng& rng) const {
  if (static_cast<std::int64_t>(out.size()) > half_size_) throw UsageError("requested fGn longer than embedding");
  const std::int64_t size = 2 * half_size_;
  const double inv = 1.0 / static_cast<double>(size);

  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(half_size_ + 1));
  spectrum[0] = std::sqrt(eigenvalues_[0] * inv) * rng.normal();
  for (std::int64_t k = 1; k < half_size_; ++k) {
    const double scale = std::sqrt(0.5 * eigenvalues_[k] * inv);
    const double re = rng.normal();
    const double im = rng.normal();
    spectrum[k] = {scale * re, scale * im};
  }
  spectrum[half_size_] = std::sqrt(eigenvalues_[half_size_] * inv) * rng.normal();

  std::vector<double> real_out(static_cast<std::size_t>(size));
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_), reinterpret_cast<fftw_complex*>(spectrum.data()),
                       real_out.data());
  std::copy_n(real_out.begin(), out.size(), out.begin());
}

std::shared_ptr<const CirculantFgn> CirculantFgn::cached(std::int64_t n, const HurstParams& h) {
  static std::mutex mutex;
  static std::map<std::pair<std::int64_t, double>, std::shared_ptr<const CirculantFgn>> cache;
  const auto key = std::make_pair(static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(n))), h.H);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_shared<const CirculantFgn>(key.first, h)).first;
  return it->second;
}

void sample_fgn_dense(std::vector<double>& out, const HurstParams& h, CounterRng& rng) {
  const std::size_t n = out.size();
  if (n == 0) return;
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = fgn_covariance(static_cast<std::int64_t>(k), h);

  std::vector<double> phi(n, 0.0);
  std::vector<double> prev(n, 0.0);
  double v = r[0];
  out[0] = std::sqrt(v) * rng.normal();
  for (std::size_t t = 1; t < n; ++t) {
    double acc = r[t];
    for (std::size_t j = 1; j < t; ++j) acc -= prev[j] * r[t - j];
    const double reflection = acc / v;
    phi[t] = reflection;
    for (std::size_t j = 1; j < t; ++j) phi[j] = prev[j] - reflection * prev[t - j];
    v *= 1.0 - reflection * reflection;
    if (!(v > 0.0)) throw NumericalFailure("Durbin-Levinson innovation variance collapsed at lag " + std::to_string(t));

    double mean = 0.0;
    for (std::size_t j = 1; j <= t; ++j) mean += phi[j] * out[t - j];
    out[t] = mean + std::sqrt(v) * rng.normal();
    std::copy_n(phi.begin(), t + 1, prev.begin());
  }
}

WalkPath sample_walk(std::int64_t n, const HurstParams& h, CounterRng& rng, FgnMethod method) {
  h.validate();
  if (n < 1) throw UsageError("walk length must be >= 1, got " + std::to_string(n));

  WalkPath path;
  path.n = n;
  path.increments.resize(static_cast<std::size_t>(n));
  switch (method) {
    case FgnMethod::DurbinLevinson:
      sample_fgn_dense(path.increments, h, rng);
      break;
    case FgnMethod::CirculantEmbedding:
      CirculantFgn::cached(n, h)->sample(path.increments, rng);
      break;
    case FgnMethod::Automatic:
      try {
        CirculantFgn::cached(n, h)->sample(path.increments, rng);
      } catch (const NumericalFailure&) {
        if (n > kDenseFallbackLimit) throw;
        sample_fgn_dense(path.increments, h, rng);
      }
      break;
  }

  path.sums.resize(static_cast<std::size_t>(n) + 1);
  path.sums[0] = 0.0;
  for (std::int64_t k = 0; k < n; ++k) path.sums[k + 1] = path.sums[k] + path.increments[k];
  return path;
}

FbmGrid sample_fbm(std::int64_t m, double T, const HurstParams& h, CounterRng& rng) {
  if (m < 2) throw UsageError("fBm grid density m must be >= 2");
  if (!(T > 0.0)) throw UsageError("fBm horizon T must be positive");
  const auto steps = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(static_cast<double>(m) * T)));
  const WalkPath walk = sample_walk(steps, h, rng);
  const double scale = std::pow(static_cast<double>(m), -h.H);

  FbmGrid grid;
  grid.m = m;
  grid.T = T;
  grid.values.resize(walk.sums.size());
  for (std::size_t i = 0; i < walk.sums.size(); ++i) grid.values[i] = scale * walk.sums[i];
  return grid;
}

}  // namespace rwrs
