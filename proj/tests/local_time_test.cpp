#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "oracles.hpp"
#include "rwrs/errors.hpp"
#include "rwrs/local_time.hpp"
#include "rwrs/stats.hpp"

using namespace rwrs;
using Catch::Approx;

namespace {

WalkPath path_from_sums(std::vector<double> sums) {
  WalkPath p;
  p.n = static_cast<std::int64_t>(sums.size()) - 1;
  for (std::size_t k = 1; k < sums.size(); ++k) p.increments.push_back(sums[k] - sums[k - 1]);
  p.sums = std::move(sums);
  return p;
}

WalkPath random_path(std::uint64_t seed, std::int64_t n = 300, double H = 0.6) {
  CounterRng rng{StreamKey{seed}};
  return sample_walk(n, {H}, rng);
}

/// Brute-force occupation map, independent of LocalTimeProfile.
std::map<std::int64_t, std::int64_t> brute_counts(const WalkPath& p, std::int64_t n) {
  std::map<std::int64_t, std::int64_t> c;
  for (std::int64_t k = 0; k <= n; ++k) ++c[static_cast<std::int64_t>(std::ceil(p.sums[k]))];
  return c;
}

}  // namespace

TEST_CASE("site_of uses the ceiling by default", "[core]") {
  CHECK(site_of(0.0) == 0);
  CHECK(site_of(0.3) == 1);
  CHECK(site_of(-0.3) == 0);
  CHECK(site_of(-1.0) == -1);
  CHECK(site_of(0.3, SiteConvention::Floor) == 0);
  CHECK(site_of(-0.3, SiteConvention::Floor) == -1);
}

TEST_CASE("local_times small cases", "[core]") {
  const auto flat = local_times(path_from_sums({0.0, 0.0, 0.0}), 2);
  CHECK(flat.count(0) == 3);
  CHECK(flat.mass() == 3);
  CHECK(max_local_time(flat) == 3);
  CHECK(self_intersections(flat) == 9);
  CHECK(range_count(flat) == 1);

  const auto p = path_from_sums({0.0, 0.5, 1.2});
  const auto prof = local_times(p, 2);
  CHECK(prof.count(0) == 1);
  CHECK(prof.count(1) == 1);
  CHECK(prof.count(2) == 1);
  CHECK(prof.count(3) == 0);
  CHECK(max_local_time(prof) == 1);
  CHECK(self_intersections(prof) == 3);
  CHECK(range_count(prof) == 3);

  const auto floor_prof = local_times(p, 2, SiteConvention::Floor);
  CHECK(floor_prof.count(0) == 2);
  CHECK(floor_prof.count(1) == 1);

  CHECK_THROWS_AS(local_times(p, 3), UsageError);
  CHECK_THROWS_AS(local_times(p, -1), UsageError);
}

TEST_CASE("profiles agree with brute-force counting and obey their invariants", "[core][property]") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = random_path(seed, 200 + static_cast<std::int64_t>(seed) * 7, 0.2 + 0.015 * seed);
    const std::vector<std::int64_t> horizons{p.n, 0, p.n / 3, p.n / 2};
    const auto profiles = local_times_at(p, horizons);
    for (std::size_t j = 0; j < horizons.size(); ++j) {
      const auto& prof = profiles[j];
      INFO("seed=" << seed << " n=" << horizons[j]);
      CHECK(prof.horizon() == horizons[j]);
      CHECK(prof.mass() == horizons[j] + 1);

      const auto ref = brute_counts(p, horizons[j]);
      std::map<std::int64_t, std::int64_t> got;
      prof.for_each([&](std::int64_t x, std::int64_t c) { got[x] = c; });
      CHECK(got == ref);

      const auto n1 = static_cast<double>(horizons[j] + 1);
      const auto V = static_cast<double>(self_intersections(prof));
      CHECK(V >= n1 * n1 / static_cast<double>(range_count(prof)));
      CHECK(static_cast<double>(max_local_time(prof)) * n1 >= V);
    }
    // N_n(x) is nondecreasing in n.
    for (std::int64_t x = profiles[0].min_site(); x <= profiles[0].max_site(); ++x) {
      CHECK(profiles[1].count(x) <= profiles[2].count(x));
      CHECK(profiles[2].count(x) <= profiles[3].count(x));
      CHECK(profiles[3].count(x) <= profiles[0].count(x));
    }
  }
}

TEST_CASE("rwrs_series direct sum equals the local-time form", "[core]") {
  const auto p = path_from_sums({0.0, 0.5, 1.2});
  SceneryMap xi{{0, 0.0}, {1, 1.0}, {2, 2.0}};
  const auto z = rwrs_series(p, xi, 2);
  CHECK(z.values.back() == 3.0);

  SceneryMap constant{{0, 2.5}, {1, 2.5}, {2, 2.5}};
  CHECK(rwrs_series(p, constant, 2).values.back() == Approx(7.5));

  SceneryMap missing{{0, 1.0}, {1, 1.0}};
  CHECK_THROWS_AS(rwrs_series(p, missing, 2), DefectError);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = random_path(100 + seed, 500, 0.7);
    auto sites = visited_sites(w, w.n);
    const auto scenery = sample_scenery(SceneryKind::ExactStable, {1.5, 1.0}, sites, StreamKey{seed});
    const auto series = rwrs_series(w, scenery, w.n);
    REQUIRE(series.values.size() == static_cast<std::size_t>(w.n) + 1);
    CHECK(series.values[0] == scenery.at(site_of(0.0)));
    for (std::int64_t j : {std::int64_t{0}, w.n / 4, w.n}) {
      const auto prof = local_times(w, j);
      CHECK(rwrs_local_time_form(prof, scenery) == Approx(series.values[j]).epsilon(1e-12).margin(1e-12));
    }
  }
}

TEST_CASE("interpolate is linear between integer times", "[core]") {
  RwrsSeries s{3, {1.0, 0.0, 4.0, -2.0}};
  CHECK(interpolate(s, 1.0) == 0.0);
  CHECK(interpolate(s, 1.25) == Approx(1.0));
  CHECK(interpolate(s, 3.0) == -2.0);
  CHECK(interpolate(s, 0.0) == 1.0);
  CHECK(interpolate(s, 2.5) == Approx(1.0));
  CHECK_THROWS_AS(interpolate(s, 3.01), UsageError);
  CHECK_THROWS_AS(interpolate(s, -0.1), UsageError);
}

TEST_CASE("ks_statistic identities", "[core]") {
  const auto p = random_path(7, 1000, 0.5);
  const std::int64_t n = 1000;
  KsStatParams one{{1.0}, {1.0}};
  const auto prof = local_times(p, n);
  const std::vector<LocalTimeProfile> ps{prof};
  const double delta = 1.0 - 0.5 + 0.5 / 2.0;
  CHECK(ks_statistic(ps, one, n, 0.5, 2.0) ==
        Approx(std::pow(1000.0, -2.0 * delta) * static_cast<double>(self_intersections(prof))).epsilon(1e-14));

  KsStatParams zero{{0.0, 0.0}, {0.5, 1.0}};
  const std::vector<std::int64_t> hz{500, 1000};
  const auto two = local_times_at(p, hz);
  CHECK(ks_statistic(two, zero, n, 0.5, 2.0) == 0.0);

  // Homogeneity of degree beta in theta.
  KsStatParams base{{1.0, -0.5}, {0.5, 1.0}};
  KsStatParams scaled{{-3.0, 1.5}, {0.5, 1.0}};
  CHECK(ks_statistic(two, scaled, n, 0.5, 1.5) ==
        Approx(std::pow(3.0, 1.5) * ks_statistic(two, base, n, 0.5, 1.5)).epsilon(1e-12));

  const std::vector<std::int64_t> wrong{400, 1000};
  CHECK_THROWS_AS(ks_statistic(local_times_at(p, wrong), base, n, 0.5, 2.0), UsageError);
  KsStatParams mismatched{{1.0}, {0.5, 1.0}};
  CHECK_THROWS_AS(ks_statistic(two, mismatched, n, 0.5, 2.0), UsageError);
}

TEST_CASE("mean of X_n approaches the Brownian self-intersection constant", "[core][oracle]") {
  CHECK(testing::brownian_self_intersection_quadrature() ==
        Approx(testing::kBrownianSelfIntersection).epsilon(1e-5));

  const std::int64_t n = 4096;
  const int M = 500;
  KsStatParams one{{1.0}, {1.0}};
  std::vector<double> xs(M);
  for (int r = 0; r < M; ++r) {
    CounterRng rng{StreamKey{900}.child(static_cast<std::uint64_t>(r))};
    const auto w = sample_walk(n, {0.5}, rng);
    const std::vector<LocalTimeProfile> ps{local_times(w, n)};
    xs[r] = ks_statistic(ps, one, n, 0.5, 2.0);
  }
  CHECK(std::abs(mean(xs) / testing::kBrownianSelfIntersection - 1.0) <= 0.15);
}

TEST_CASE("scaled maximum local time decreases and V_n, R_n scale like n^{2-H}, n^H", "[core]") {
  const double H = 0.5;
  const std::vector<std::int64_t> ns{256, 512, 1024, 2048, 4096, 8192};
  const int M = 200;
  std::vector<RunningStats> v(ns.size()), r(ns.size());
  std::vector<std::vector<double>> l(ns.size());
  for (int i = 0; i < M; ++i) {
    CounterRng rng{StreamKey{901}.child(static_cast<std::uint64_t>(i))};
    const auto w = sample_walk(ns.back(), {H}, rng);
    const auto profiles = local_times_at(w, ns);
    for (std::size_t j = 0; j < ns.size(); ++j) {
      v[j].push(static_cast<double>(self_intersections(profiles[j])));
      r[j].push(static_cast<double>(range_count(profiles[j])));
      l[j].push_back(std::pow(static_cast<double>(ns[j]), -0.75) * static_cast<double>(max_local_time(profiles[j])));
    }
  }
  std::vector<double> x, mv, mr;
  for (std::size_t j = 0; j < ns.size(); ++j) {
    x.push_back(static_cast<double>(ns[j]));
    mv.push_back(v[j].mean());
    mr.push_back(r[j].mean());
  }
  CHECK(std::abs(slope_fit(x, mv).slope - (2.0 - H)) <= 0.1);
  CHECK(std::abs(slope_fit(x, mr).slope - H) <= 0.1);
  CHECK(median(l[0]) > median(l[2]));
  CHECK(median(l[2]) > median(l[4]));
}
