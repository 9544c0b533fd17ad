/*
 * Copyright 2026 The codedcache Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// ccsim: simulation, sweep and bounds driver for the coded caching library.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "codedcache/bounds.hpp"
#include "codedcache/config.hpp"
#include "codedcache/errors.hpp"
#include "codedcache/example1.hpp"
#include "codedcache/experiment.hpp"
#include "codedcache/optimizer.hpp"
#include "codedcache/placement.hpp"
#include "codedcache/random.hpp"

namespace cc = codedcache;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTrial = 3;

// Flags that mirror configuration keys. Values stay textual so the config
// parser is the single place that interprets them.
struct KeyFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_option(flag, values[key], help));
  }
  void add_switch(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_flag(flag, switches[key], help));
  }

  cc::ExperimentConfig resolve() const {
    cc::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = cc::load_config_file(config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() == 0) continue;
      if (switches.contains(key)) {
        const bool on = switches.at(key);
        cc::apply_setting(cfg, key, key == "lower_bound" ? (on ? "false" : "true") : (on ? "true" : "false"));
      } else {
        cc::apply_setting(cfg, key, values.at(key));
      }
    }
    return cfg;
  }
};

void add_system_flags(CLI::App* app, KeyFlags& f) {
  app->add_option("-c,--config", f.config_path, "key=value configuration file (flags override it)");
  f.add(app, "-n,--users", "n", "number of users");
  f.add(app, "-m,--files", "m", "library size");
  f.add(app, "-M,--cache", "M", "cache size in files");
  f.add(app, "-B,--packets", "B", "packets per file");
  f.add(app, "--alpha", "alpha", "Zipf exponent");
  f.add(app, "--q", "q", "explicit demand pmf, comma separated");
  f.add(app, "--scheme", "scheme", "up | lfu | lfu-nm | rlfu:<k> | rlfu:auto | rap:<file>, comma separated");
  f.add(app, "--seed", "seed", "base seed");
  f.add_switch(app, "--no-lower-bound", "lower_bound", "skip the converse grid");
}

void add_run_flags(CLI::App* app, KeyFlags& f) {
  f.add(app, "--delivery", "delivery", "gcc | gcc1 | gcc2 | exact");
  f.add(app, "--trials", "trials", "trials per scheme");
  f.add(app, "--demand-rounds", "demand_rounds", "demand vectors per cache draw; 0 enumerates all");
  f.add(app, "--enumeration-limit", "enumeration_limit", "max m^n for demand_rounds=0");
  f.add(app, "--threads", "threads", "worker threads, 0 = all cores");
  f.add(app, "--exact-limit", "exact_limit", "vertex limit of exact delivery");
  f.add(app, "--packet-bytes", "packet_bytes", "payload bytes per packet when verifying");
  f.add_switch(app, "--verify", "verify", "encode and decode every delivery");
  f.add_switch(app, "--fix-cache", "fix_cache", "reuse the trial-0 cache configuration");
  f.add_switch(app, "--timing", "timing", "fill elapsed_ms (output is then not reproducible)");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw cc::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int report_failures(const std::vector<cc::TrialRecord>& records) {
  int failed = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      std::cerr << "trial " << r.trial.value_or(0) << " (" << r.scheme << "): " << r.error << '\n';
      ++failed;
    } else if (r.decode_ok && !*r.decode_ok) {
      std::cerr << "trial " << r.trial.value_or(0) << " (" << r.scheme << "): decode mismatch\n";
      ++failed;
    }
  }
  return failed == 0 ? kExitOk : kExitTrial;
}

struct OptimizeFlags {
  std::vector<std::size_t> users;
  std::size_t m = 0;
  std::optional<double> alpha;
  std::string q;
  double M = 1.0;
  std::size_t budget = 200000;
  std::uint64_t seed = 1;
  std::optional<double> rho;

  cc::DemandDistribution demand() const {
    if (!q.empty()) return cc::DemandDistribution(cc::parse_number_list(q));
    if (m == 0 || !alpha) throw cc::ConfigError("give --q, or both -m and --alpha");
    return cc::zipf_distribution(m, *alpha);
  }
};

void add_optimize_flags(CLI::App* app, OptimizeFlags& f) {
  app->add_option("-n,--users", f.users, "one or more user counts")->required()->delimiter(',');
  app->add_option("-m,--files", f.m, "library size (with --alpha)");
  app->add_option("--alpha", f.alpha, "Zipf exponent");
  app->add_option("--q", f.q, "explicit demand pmf, comma separated");
  app->add_option("-M,--cache", f.M, "cache size in files")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded caching simulator: random fractional placement with conflict-graph coloring delivery"};
  app.require_subcommand(1);

  KeyFlags sim_flags;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "run trials and write one CSV row per trial");
  add_system_flags(simulate, sim_flags);
  add_run_flags(simulate, sim_flags);
  simulate->add_option("-o,--output", sim_out, "CSV path (default stdout)");

  KeyFlags sweep_flags;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run trials over M_sweep and write one CSV row per (scheme, M)");
  add_system_flags(sweep, sweep_flags);
  add_run_flags(sweep, sweep_flags);
  sweep_flags.add(sweep, "--M-sweep", "M_sweep", "comma separated cache sizes");
  sweep->add_option("-o,--output", sweep_out, "CSV path (default stdout)");

  KeyFlags bounds_flags;
  std::string bounds_out;
  auto* bounds = app.add_subcommand("bounds", "analytic rates per scheme as CSV rows");
  add_system_flags(bounds, bounds_flags);
  bounds->add_option("-o,--output", bounds_out, "CSV path (default stdout)");

  OptimizeFlags opt_p;
  auto* optimize_p = app.add_subcommand("optimize-p", "search the caching distribution; one JSON line per n");
  add_optimize_flags(optimize_p, opt_p);
  optimize_p->add_option("--budget", opt_p.budget, "objective evaluations per search");
  optimize_p->add_option("--seed", opt_p.seed, "seed for grid subsampling");

  OptimizeFlags opt_m;
  auto* optimize_m = app.add_subcommand("optimize-mtilde", "best RLFU cutoff; one JSON line per n");
  add_optimize_flags(optimize_m, opt_m);
  optimize_m->add_option("--rho", opt_m.rho, "override n / m^alpha in the regime selector");

  std::string fixture_delivery = "gcc";
  std::string fixture_out;
  std::string fixture_cache;
  bool fixture_timing = false;
  auto* fixture = app.add_subcommand("fixture-example1", "replay the three-user worked example");
  fixture->add_option("--delivery", fixture_delivery, "gcc | gcc1 | gcc2 | exact");
  fixture->add_option("-o,--output", fixture_out, "CSV path (default stdout)");
  fixture->add_option("--cache-out", fixture_cache, "also write the cache configuration");
  fixture->add_flag("--timing", fixture_timing, "fill elapsed_ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) {
      const auto cfg = sim_flags.resolve();
      const auto records = cc::run_experiment(cfg);
      Output out(sim_out);
      cc::write_csv(out.stream(), records);
      return report_failures(records);
    }
    if (*sweep) {
      const auto cfg = sweep_flags.resolve();
      const auto points = cc::run_sweep(cfg);
      Output out(sweep_out);
      cc::write_sweep_csv(out.stream(), points);
      std::size_t failures = 0;
      for (const auto& p : points) {
        failures += p.failures;
        if (p.summary.decode_ok && !*p.summary.decode_ok) ++failures;
      }
      if (failures != 0) std::cerr << failures << " failed trial(s)\n";
      return failures == 0 ? kExitOk : kExitTrial;
    }
    if (*bounds) {
      const auto cfg = bounds_flags.resolve();
      Output out(bounds_out);
      cc::write_csv(out.stream(), cc::bounds_rows(cfg));
      return kExitOk;
    }
    if (*optimize_p) {
      const auto q = opt_p.demand();
      for (std::size_t n : opt_p.users) {
        cc::Rng rng(cc::mix_seed(opt_p.seed, n, cc::Stream::kSearch));
        const auto r = cc::optimize_caching_distribution(q, opt_p.M, n, opt_p.budget, rng);
        json line{{"n", n},
                  {"m", q.size()},
                  {"M", opt_p.M},
                  {"p", std::vector<double>(r.p.values().begin(), r.p.values().end())},
                  {"objective", r.objective},
                  {"converged", r.converged},
                  {"evaluations", r.evaluations}};
        std::cout << line.dump() << '\n';
      }
      return kExitOk;
    }
    if (*optimize_m) {
      const auto q = opt_m.demand();
      for (std::size_t n : opt_m.users) {
        const auto choice = cc::optimize_mtilde(q, opt_m.M, n);
        json line{{"n", n},
                  {"m", q.size()},
                  {"M", opt_m.M},
                  {"mtilde", choice.mtilde},
                  {"objective", choice.objective},
                  {"converged", true}};
        if (opt_m.alpha && opt_m.q.empty() && *opt_m.alpha != 1.0) {
          const auto reg = cc::regime_mtilde(n, q.size(), opt_m.M, *opt_m.alpha, opt_m.rho);
          json regime{{"regime", reg.regime}, {"mtilde", reg.mtilde}, {"rationale", reg.rationale}};
          if (reg.refined_mtilde) regime["refined_mtilde"] = *reg.refined_mtilde;
          line["regime"] = regime;
        }
        std::cout << line.dump() << '\n';
      }
      return kExitOk;
    }
    if (*fixture) {
      const auto record = cc::run_example1(cc::parse_delivery(fixture_delivery), fixture_timing);
      if (!fixture_cache.empty()) {
        std::ofstream c(fixture_cache, std::ios::binary);
        if (!c) throw cc::ConfigError("cannot open '" + fixture_cache + "'");
        cc::write_cache_configuration(c, cc::example1_cache());
      }
      Output out(fixture_out);
      cc::write_csv(out.stream(), {record});
      return report_failures({record});
    }
  } catch (const cc::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitTrial;
  }
  return kExitOk;
}
