#include "rwrs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rwrs/errors.hpp"
#include "rwrs/fgn.hpp"
#include "rwrs/limit_oracle.hpp"
#include "rwrs/model.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/schema.hpp"
#include "rwrs/stats.hpp"

namespace rwrs::cli {
namespace {

constexpr const char* kCsvHelp = R"(CSV output (header lines start with '#'):
  walk       k,increment,position,site            one path (replicate 0)
  rwrs       k,position,site,scenery,z            one walk in one scenery
  scaling    n,mean_Vn,se_Vn,mean_Rn,se_Rn,median_Ln_scaled   n = 2^8..2^14
  ks-stat    replicate,x_n,x_limit                X_n draws and limit draws
  delta      replicate,t,delta                    Delta(t) per fBm path
  gamma      replicate,t,gamma                    Gamma_n(t), n = --cn copies
  schema     replicate,t,g                        G_n(t), n = --n, c_n = --cn
  ecf-check  u,ecf_re,ecf_se,target,z             ECF at max(times) vs limit CF
Exit codes: 0 ok, 1 usage error, 2 numerical failure, 3 check failed.
Config file: key = value per line (keys are long flag names), '#' comments.
RWRS_SEED sets the default seed; --seed wins.)";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw UsageError("invalid value '" + text + "' for " + key);
  return value;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<double>(key, item));
  if (out.empty()) throw UsageError("empty list for " + key);
  return out;
}

SiteConvention parse_convention(const std::string& text) {
  if (text == "ceiling") return SiteConvention::Ceiling;
  if (text == "floor") return SiteConvention::Floor;
  throw UsageError("unknown site convention '" + text + "' (expected ceiling or floor)");
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw UsageError("invalid boolean '" + text + "' for " + key);
}

std::string num(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + num(xs[i]);
  return s;
}

std::vector<double> resolved_thetas(const RunConfig& cfg) {
  return cfg.thetas.empty() ? std::vector<double>(cfg.times.size(), 1.0) : cfg.thetas;
}

// ---------------------------------------------------------------------------
// Commands. Each fills a CSV body and a summary line; `ok` is the acceptance
// verdict for commands that check something.

struct Outcome {
  std::string columns;
  std::vector<std::string> rows;
  std::string summary;
  bool ok = true;
};

ModelParams model_of(const RunConfig& cfg) { return {cfg.H, cfg.beta, cfg.sigma}; }

Outcome run_walk(const RunConfig& cfg) {
  const HurstParams h{cfg.H};
  const StreamKey root(cfg.seed);
  Outcome o;
  o.columns = "k,increment,position,site";

  std::vector<double> endpoints(static_cast<std::size_t>(cfg.replicates));
  WalkPath first;
  parallel_for(endpoints.size(), cfg.jobs, [&](std::size_t r) {
    CounterRng rng(role_key(root.child(r), StreamRole::Walk));
    WalkPath p = sample_walk(cfg.n, h, rng);
    endpoints[r] = p.sums.back();
    if (r == 0) first = std::move(p);
  });
  for (std::int64_t k = 0; k <= cfg.n; ++k)
    o.rows.push_back(std::to_string(k) + "," + (k == 0 ? "0" : num(first.increments[k - 1])) + "," +
                     num(first.sums[k]) + "," + std::to_string(site_of(first.sums[k], cfg.convention)));
  std::vector<double> sq(endpoints.size());
  for (std::size_t r = 0; r < sq.size(); ++r) sq[r] = endpoints[r] * endpoints[r];
  const double ratio = mean(sq) / std::pow(static_cast<double>(cfg.n), 2.0 * cfg.H);
  o.summary = "walk n=" + std::to_string(cfg.n) + " H=" + num(cfg.H) + " E[S_n^2]/n^(2H)=" + num(ratio) +
              " over M=" + std::to_string(cfg.replicates);
  return o;
}

Outcome run_rwrs(const RunConfig& cfg) {
  const ModelParams params = model_of(cfg);
  const StreamKey rep = StreamKey(cfg.seed).child(0);
  CounterRng rng(role_key(rep, StreamRole::Walk));
  const WalkPath path = sample_walk(cfg.n, params.hurst(), rng);
  auto sites = visited_sites(path, cfg.n, cfg.convention);
  const SceneryMap scenery =
      sample_scenery(cfg.scenery, params.stable(), sites, role_key(rep, StreamRole::Scenery));
  const RwrsSeries z = rwrs_series(path, scenery, cfg.n, cfg.convention);
  const LocalTimeProfile prof = local_times(path, cfg.n, cfg.convention);

  Outcome o;
  o.columns = "k,position,site,scenery,z";
  for (std::int64_t k = 0; k <= cfg.n; ++k)
    o.rows.push_back(std::to_string(k) + "," + num(path.sums[k]) + "," + std::to_string(sites[k]) + "," +
                     num(scenery.at(sites[k])) + "," + num(z.values[k]));
  o.summary = "rwrs n=" + std::to_string(cfg.n) + " L_n=" + std::to_string(max_local_time(prof)) +
              " V_n=" + std::to_string(self_intersections(prof)) + " R_n=" + std::to_string(range_count(prof)) +
              " Z_n=" + num(z.values.back());
  return o;
}

Outcome run_scaling(const RunConfig& cfg) {
  const ModelParams params = model_of(cfg);
  const StreamKey root(cfg.seed);
  std::vector<std::int64_t> horizons;
  for (int e = 8; e <= 14; ++e) horizons.push_back(std::int64_t{1} << e);
  const std::size_t k = horizons.size();
  const auto reps = static_cast<std::size_t>(cfg.replicates);

  std::vector<std::vector<double>> v(reps), r(reps), l(reps);
  parallel_for(reps, cfg.jobs, [&](std::size_t i) {
    CounterRng rng(role_key(root.child(i), StreamRole::Walk));
    const WalkPath path = sample_walk(horizons.back(), params.hurst(), rng);
    const auto profiles = local_times_at(path, horizons, cfg.convention);
    for (std::size_t j = 0; j < k; ++j) {
      v[i].push_back(static_cast<double>(self_intersections(profiles[j])));
      r[i].push_back(static_cast<double>(range_count(profiles[j])));
      l[i].push_back(std::pow(static_cast<double>(horizons[j]), -params.delta()) *
                     static_cast<double>(max_local_time(profiles[j])));
    }
  });

  Outcome o;
  o.columns = "n,mean_Vn,se_Vn,mean_Rn,se_Rn,median_Ln_scaled";
  std::vector<double> ns, mean_v, mean_r, med_l;
  for (std::size_t j = 0; j < k; ++j) {
    RunningStats sv, sr;
    std::vector<double> lj, vj, rj;
    for (std::size_t i = 0; i < reps; ++i) {
      sv.push(v[i][j]);
      sr.push(r[i][j]);
      vj.push_back(v[i][j]);
      rj.push_back(r[i][j]);
      lj.push_back(l[i][j]);
    }
    ns.push_back(static_cast<double>(horizons[j]));
    mean_v.push_back(mean(vj));
    mean_r.push_back(mean(rj));
    med_l.push_back(median(lj));
    o.rows.push_back(std::to_string(horizons[j]) + "," + num(mean_v.back()) + "," + num(sv.sem()) + "," +
                     num(mean_r.back()) + "," + num(sr.sem()) + "," + num(med_l.back()));
  }
  // Exponent fits use n = 2^8..2^13; the maximum local time uses n = 2^8, 2^10, 2^12, 2^14.
  const std::span<const double> fit_n(ns.data(), k - 1);
  const auto fv = slope_fit(fit_n, std::span<const double>(mean_v.data(), k - 1));
  const auto fr = slope_fit(fit_n, std::span<const double>(mean_r.data(), k - 1));
  const bool v_ok = std::abs(fv.slope - (2.0 - cfg.H)) <= 0.1;
  const bool r_ok = std::abs(fr.slope - cfg.H) <= 0.1;
  bool l_ok = true;
  for (std::size_t j = 2; j < k; j += 2) l_ok = l_ok && med_l[j] < med_l[j - 2];
  o.ok = v_ok && r_ok && l_ok;
  o.summary = "scaling V_slope=" + num(fv.slope) + " (target " + num(2.0 - cfg.H) + "+-0.1) R_slope=" +
              num(fr.slope) + " (target " + num(cfg.H) + "+-0.1) median_Ln_decreasing=" + (l_ok ? "yes" : "no") +
              (o.ok ? " PASS" : " FAIL");
  return o;
}

Outcome run_ks_stat(const RunConfig& cfg) {
  const ModelParams params = model_of(cfg);
  const StreamKey root(cfg.seed);
  KsStatParams ks{resolved_thetas(cfg), cfg.times};
  ks.validate();
  std::vector<std::int64_t> horizons;
  for (double t : cfg.times) horizons.push_back(scaled_horizon(cfg.n, t));
  const std::int64_t walk_len = std::max<std::int64_t>(1, *std::max_element(horizons.begin(), horizons.end()));

  std::vector<double> xn(static_cast<std::size_t>(cfg.replicates));
  parallel_for(xn.size(), cfg.jobs, [&](std::size_t i) {
    CounterRng rng(role_key(root.child(i), StreamRole::Walk));
    const WalkPath path = sample_walk(walk_len, params.hurst(), rng);
    const auto profiles = local_times_at(path, horizons, cfg.convention);
    xn[i] = ks_statistic(profiles, ks, cfg.n, cfg.H, cfg.beta);
  });
  const auto limit = sample_x_functional(params, ks.thetas, ks.times, cfg.replicates,
                                         role_key(root, StreamRole::Oracle), {cfg.m, cfg.bins, cfg.jobs});

  Outcome o;
  o.columns = "replicate,x_n,x_limit";
  for (std::size_t i = 0; i < xn.size(); ++i)
    o.rows.push_back(std::to_string(i) + "," + num(xn[i]) + "," + num(limit[i]));
  const double mx = mean(xn);
  const double ml = mean(limit);
  o.summary = "ks-stat n=" + std::to_string(cfg.n) + " KS=" + num(ks_distance(xn, limit)) + " mean_Xn=" + num(mx) +
              " mean_X=" + num(ml) + " rel_diff=" + num(ml != 0.0 ? std::abs(mx - ml) / ml : 0.0);
  return o;
}

Outcome per_time_rows(const RunConfig& cfg, const std::vector<std::vector<double>>& values,
                      const std::string& name) {
  Outcome o;
  o.columns = "replicate,t," + name;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < cfg.times.size(); ++j)
      o.rows.push_back(std::to_string(i) + "," + num(cfg.times[j]) + "," + num(values[i][j]));
  const std::size_t last = cfg.times.size() - 1;
  std::vector<double> at_last;
  for (const auto& v : values) at_last.push_back(v[last]);
  o.summary = name + " M=" + std::to_string(values.size()) + " t=" + num(cfg.times[last]) +
              " IQR=" + num(interquartile_range(at_last)) + " median=" + num(median(at_last));
  return o;
}

std::vector<std::vector<double>> gamma_samples(const RunConfig& cfg, std::int64_t copies) {
  const ModelParams params = model_of(cfg);
  const StreamKey root(cfg.seed);
  std::vector<std::vector<double>> out(static_cast<std::size_t>(cfg.replicates));
  parallel_for(out.size(), cfg.jobs, [&](std::size_t i) {
    out[i] = sample_gamma_n(copies, cfg.times, params, root.child(i), cfg.m, cfg.bins);
  });
  return out;
}

std::vector<std::vector<double>> schema_samples(const RunConfig& cfg) {
  const ModelParams params = model_of(cfg);
  const StreamKey root(cfg.seed);
  const SchemaConfig sc{cfg.n, cfg.cn, cfg.times};
  SchemaOptions opts;
  opts.scenery = cfg.scenery;
  opts.convention = cfg.convention;
  std::vector<std::vector<double>> out(static_cast<std::size_t>(cfg.replicates));
  parallel_for(out.size(), cfg.jobs, [&](std::size_t i) { out[i] = sample_Gn(sc, params, root.child(i), opts); });
  return out;
}

Outcome run_ecf_check(const RunConfig& cfg) {
  const ModelParams params = model_of(cfg);
  const auto samples = cfg.source == "gamma" ? gamma_samples(cfg, cfg.cn) : schema_samples(cfg);
  const std::size_t last = cfg.times.size() - 1;
  std::vector<double> xs;
  for (const auto& s : samples) xs.push_back(s[last]);

  const double t = cfg.times[last];
  const double theta[] = {1.0};
  const double tt[] = {t};
  const auto ex = estimate_EX(params, theta, tt, cfg.oracle_replicates,
                              role_key(StreamKey(cfg.seed), StreamRole::Oracle), {cfg.m, cfg.bins, cfg.jobs});
  const auto e = ecf(xs, cfg.u);
  std::vector<double> target, target_se;
  for (double u : cfg.u) {
    const double rate = std::pow(cfg.sigma * std::abs(u), cfg.beta);
    target.push_back(std::exp(-rate * ex.mean));
    target_se.push_back(target.back() * rate * ex.se);
  }
  const auto cmp = cf_compare(e, target, std::span<const double>(target_se));
  bool im_ok = true;
  for (std::size_t k = 0; k < cfg.u.size(); ++k)
    im_ok = im_ok && std::abs(e.im[k]) <= 3.0 * e.se_im[k] + (e.se_im[k] == 0.0 ? 1e-12 : 0.0);

  Outcome o;
  o.columns = "u,ecf_re,ecf_se,target,z";
  for (std::size_t k = 0; k < cfg.u.size(); ++k)
    o.rows.push_back(num(cfg.u[k]) + "," + num(e.re[k]) + "," + num(e.se_re[k]) + "," + num(target[k]) + "," +
                     num(cmp.z[k]));
  o.ok = cmp.passed() && im_ok;
  o.summary = "ecf-check source=" + cfg.source + " t=" + num(t) + " E[X]=" + num(ex.mean) + "+-" + num(ex.se) +
              " max|z|=" + num(cmp.max_abs_z) + " imag_ok=" + (im_ok ? "yes" : "no") + (o.ok ? " PASS" : " FAIL");
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.command == "walk") return run_walk(cfg);
  if (cfg.command == "rwrs") return run_rwrs(cfg);
  if (cfg.command == "scaling") return run_scaling(cfg);
  if (cfg.command == "ks-stat") return run_ks_stat(cfg);
  if (cfg.command == "delta") {
    const ModelParams params = model_of(cfg);
    const StreamKey root(cfg.seed);
    const double horizon = *std::max_element(cfg.times.begin(), cfg.times.end());
    std::vector<std::vector<double>> values(static_cast<std::size_t>(cfg.replicates));
    parallel_for(values.size(), cfg.jobs, [&](std::size_t i) {
      CounterRng path_rng(role_key(root.child(i), StreamRole::Fbm));
      CounterRng noise_rng(role_key(root.child(i), StreamRole::BinNoise));
      const FbmGrid path = sample_fbm(cfg.m, std::max(horizon, 1.0 / static_cast<double>(cfg.m)), params.hurst(),
                                      path_rng);
      values[i] = sample_delta(path, cfg.times, cfg.bins, params.stable(), noise_rng).values;
    });
    return per_time_rows(cfg, values, "delta");
  }
  if (cfg.command == "gamma") return per_time_rows(cfg, gamma_samples(cfg, cfg.cn), "gamma");
  if (cfg.command == "schema") return per_time_rows(cfg, schema_samples(cfg), "g");
  if (cfg.command == "ecf-check") return run_ecf_check(cfg);
  throw UsageError("unknown command '" + cfg.command + "'");
}

void write_header(std::ostream& out, const RunConfig& cfg) {
  out << "# rwrs " << kVersion << "\n"
      << "# command = " << cfg.command << "\n"
      << "# hurst = " << num(cfg.H) << "\n"
      << "# beta = " << num(cfg.beta) << "\n"
      << "# sigma = " << num(cfg.sigma) << "\n"
      << "# delta = " << num(delta_exponent(cfg.H, cfg.beta)) << "\n"
      << "# n = " << cfg.n << "\n"
      << "# cn = " << cfg.cn << "\n"
      << "# m = " << cfg.m << "\n"
      << "# bins = " << cfg.bins << "\n"
      << "# replicates = " << cfg.replicates << "\n"
      << "# oracle-replicates = " << cfg.oracle_replicates << "\n"
      << "# times = " << join(cfg.times) << "\n"
      << "# thetas = " << join(resolved_thetas(cfg)) << "\n"
      << "# u = " << join(cfg.u) << "\n"
      << "# seed = " << cfg.seed << "\n"
      << "# scenery = " << to_string(cfg.scenery) << "\n"
      << "# convention = " << (cfg.convention == SiteConvention::Ceiling ? "ceiling" : "floor") << "\n"
      << "# source = " << cfg.source << "\n";
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"walk",  "rwrs",  "scaling", "ks-stat",
                                              "delta", "gamma", "schema",  "ecf-check"};
  return names;
}

void validate(const RunConfig& cfg) {
  if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end())
    throw UsageError("unknown command '" + cfg.command + "'");
  HurstParams{cfg.H}.validate();
  StableParams{cfg.beta, cfg.sigma}.validate();
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  if (cfg.cn < 1) throw UsageError("--cn must be >= 1");
  if (cfg.m < 2) throw UsageError("--m must be >= 2");
  if (cfg.bins < 2) throw UsageError("--bins must be >= 2");
  if (cfg.replicates < 1) throw UsageError("--replicates must be >= 1");
  if (cfg.times.empty()) throw UsageError("--times must not be empty");
  if (!std::is_sorted(cfg.times.begin(), cfg.times.end())) throw UsageError("--times must be sorted");
  for (double t : cfg.times)
    if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("--times must be finite and nonnegative");
  if (!cfg.thetas.empty() && cfg.thetas.size() != cfg.times.size())
    throw UsageError("--thetas must have one entry per time");
  if (cfg.u.empty()) throw UsageError("--u must not be empty");
  if (cfg.source != "schema" && cfg.source != "gamma") throw UsageError("--source must be schema or gamma");
  if (cfg.command == "ecf-check") {
    if (cfg.replicates < 2) throw UsageError("ecf-check needs --replicates >= 2 (standard errors undefined)");
    if (cfg.oracle_replicates < 2) throw UsageError("ecf-check needs --oracle-replicates >= 2");
  }
  if (cfg.command == "ks-stat" && cfg.replicates < 2) throw UsageError("ks-stat needs --replicates >= 2");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "hurst") cfg.H = parse_number<double>(key, v);
  else if (key == "beta") cfg.beta = parse_number<double>(key, v);
  else if (key == "sigma") cfg.sigma = parse_number<double>(key, v);
  else if (key == "n") cfg.n = parse_number<std::int64_t>(key, v);
  else if (key == "cn") cfg.cn = parse_number<std::int64_t>(key, v);
  else if (key == "m") cfg.m = parse_number<std::int64_t>(key, v);
  else if (key == "bins") cfg.bins = parse_number<std::int64_t>(key, v);
  else if (key == "replicates") cfg.replicates = parse_number<std::int64_t>(key, v);
  else if (key == "oracle-replicates") cfg.oracle_replicates = parse_number<std::int64_t>(key, v);
  else if (key == "times") cfg.times = parse_list(key, v);
  else if (key == "thetas") cfg.thetas = parse_list(key, v);
  else if (key == "u") cfg.u = parse_list(key, v);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, v);
  else if (key == "scenery") cfg.scenery = parse_scenery_kind(v);
  else if (key == "convention") cfg.convention = parse_convention(v);
  else if (key == "source") cfg.source = v;
  else if (key == "output") cfg.output = v;
  else if (key == "jobs") cfg.jobs = parse_number<unsigned>(key, v);
  else if (key == "assert") cfg.assert_mode = parse_bool(key, v);
  else throw UsageError("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& env_seed) {
  RunConfig cfg;
  if (env_seed && !env_seed->empty()) cfg.seed = parse_number<std::uint64_t>("RWRS_SEED", *env_seed);

  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) load_config_file(cfg, args[i + 1]);
    else if (args[i].starts_with("--config=")) load_config_file(cfg, args[i].substr(9));
  }

  CLI::App app{"Random walks in random scenery: simulation and limit-theorem checks", "rwrs"};
  app.footer(kCsvHelp);
  std::string config_path, scenery, convention, times, thetas, u;
  app.add_option("command", cfg.command, "walk | rwrs | scaling | ks-stat | delta | gamma | schema | ecf-check")
      ->required();
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--hurst,-H", cfg.H, "Hurst index in (0,1) (default 0.5)");
  app.add_option("--beta", cfg.beta, "stability index in (0,2] (default 2)");
  app.add_option("--sigma", cfg.sigma, "stable scale > 0 (default 1)");
  app.add_option("--n", cfg.n, "walk time scale n (default 2048)");
  app.add_option("--cn", cfg.cn, "number of copies c_n (default 32)");
  app.add_option("--m", cfg.m, "fBm grid density (default 4096)");
  app.add_option("--bins", cfg.bins, "local-time bins K (default 512)");
  app.add_option("--replicates,-M", cfg.replicates, "Monte Carlo replicates (default 500)");
  app.add_option("--oracle-replicates", cfg.oracle_replicates, "replicates for E[X] (default 2000)");
  auto* times_opt = app.add_option("--times", times, "comma-separated sorted times (default 0.5,1)");
  auto* thetas_opt = app.add_option("--thetas", thetas, "comma-separated weights, one per time (default 1)");
  auto* u_opt = app.add_option("--u", u, "comma-separated frequencies (default 0.5,1,2)");
  app.add_option("--seed", cfg.seed, "64-bit master seed (default 0 or RWRS_SEED)");
  auto* scenery_opt = app.add_option("--scenery", scenery, "stable | pareto (default stable)");
  auto* conv_opt = app.add_option("--convention", convention, "ceiling | floor site mapping (default ceiling)");
  app.add_option("--source", cfg.source, "ecf-check sample source: schema | gamma (default schema)");
  app.add_option("--output,-o", cfg.output, "CSV path (default stdout)");
  app.add_option("--jobs,-j", cfg.jobs, "worker threads, 0 = all cores (results do not depend on it)");
  app.add_flag("--assert", cfg.assert_mode, "exit 3 when the scaling checks fail");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (times_opt->count()) cfg.times = parse_list("--times", times);
  if (thetas_opt->count()) cfg.thetas = parse_list("--thetas", thetas);
  if (u_opt->count()) cfg.u = parse_list("--u", u);
  if (scenery_opt->count()) cfg.scenery = parse_scenery_kind(scenery);
  if (conv_opt->count()) cfg.convention = parse_convention(convention);
  validate(cfg);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  validate(cfg);
  const Outcome o = dispatch(cfg);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open output '" + cfg.output + "'");
    sink = &file;
  }
  write_header(*sink, cfg);
  *sink << o.columns << "\n";
  for (const auto& row : o.rows) *sink << row << "\n";
  sink->flush();
  log << o.summary << "\n";

  const bool checks = cfg.command == "ecf-check" || (cfg.command == "scaling" && cfg.assert_mode);
  return checks && !o.ok ? kCheckFailed : kSuccess;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("RWRS_SEED")) env_seed = s;
  try {
    return run(parse_config(args, env_seed), std::cout, std::cerr);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return kSuccess;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace rwrs::cli
