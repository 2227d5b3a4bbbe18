#pragma once

// The discrete random rewards schema: D_n(t) = n^{-delta} Z_{nt} for one walk
// in one scenery, and G_n(t) = c_n^{-1/beta} sum_i D_n^{(i)}(t) over c_n
// independent (walk, scenery) pairs.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rwrs/local_time.hpp"
#include "rwrs/model.hpp"
#include "rwrs/random.hpp"

namespace rwrs {

struct SchemaConfig {
  std::int64_t n = 2048;
  std::int64_t copies = 32;  // c_n
  std::vector<double> times{1.0};

  void validate() const;
};

/// Optional replacement for the sampled scenery: value at (copy index, site).
using SceneryOverride = std::function<double(std::int64_t copy, std::int64_t site)>;

struct SchemaOptions {
  SceneryKind scenery = SceneryKind::ExactStable;
  SiteConvention convention = SiteConvention::Ceiling;
  SceneryOverride scenery_override;
};

/// Smallest walk length that covers n * max(times).
std::int64_t schema_horizon(std::int64_t n, std::span<const double> times);

/// n^{-delta} Z_{n t} for a fixed walk and scenery, interpolating at non-integer n t.
std::vector<double> evaluate_Dn(const WalkPath& path, const SceneryMap& scenery, std::int64_t n,
                                std::span<const double> times, const ModelParams& params,
                                SiteConvention convention = SiteConvention::Ceiling);

/// One walk from role Walk of `key`, one lazy scenery from role Scenery of `key`.
std::vector<double> sample_Dn(std::int64_t n, std::span<const double> times, const ModelParams& params,
                              StreamKey key, const SchemaOptions& options = {}, std::int64_t copy_index = 0);

/// Copy i uses substream key.child(i).
std::vector<double> sample_Gn(const SchemaConfig& cfg, const ModelParams& params, StreamKey key,
                              const SchemaOptions& options = {});

}  // namespace rwrs
