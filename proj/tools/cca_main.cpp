// Command-line front end: closed-form schedules, single dissipative runs,
// figure-reproduction sweeps and threshold searches.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cca/exact_dynamics.hpp"
#include "cca/ideal_protocol.hpp"
#include "cca/mode_basis.hpp"
#include "cca/open_system.hpp"
#include "cca/presets.hpp"
#include "cca/run_config.hpp"
#include "cca/sweep.hpp"

namespace {

using namespace cca;

void print_presets() {
  for (const auto& p : presets())
    std::printf("%-14s %s\n", p.name.c_str(), p.description.c_str());
}

std::string provenance_line(const SweepSpec& spec) {
  const auto rates = rates_for(spec.param_set, spec.custom_rates);
  std::ostringstream os;
  os << "param_set=" << to_string(spec.param_set)
     << " gamma_over_g=" << rates.gamma_over_g
     << " kappa_over_g=" << rates.kappa_over_g << " mode_decay=paper"
     << " s=1 r=N q=(N+1)/2";
  return os.str();
}

void write_records(const std::vector<RunRecord>& records,
                   const std::string& path, const std::string& format,
                   const std::string& provenance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  if (format == "json")
    write_records_json(out, records, provenance);
  else
    write_records_csv(out, records, provenance);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void warn_regime(const ChainParams& params) {
  if (auto w = params.regime_warning()) std::cerr << "warning: " << *w << "\n";
}

int cmd_schedule(const RunConfig& cfg) {
  if (!cfg.preset.empty()) {
    const Preset* preset = find_preset(cfg.preset);
    if (preset == nullptr || preset->kind != Preset::Kind::ScheduleTable) {
      std::cerr << "error: '" << cfg.preset << "' is not a schedule preset\n";
      return 1;
    }
    std::printf("%-4s %-4s %-4s %-4s %-22s %-22s %s\n", "N", "q", "s", "r",
                "gt1", "gt2", "exact");
    for (const auto& [n, s, r] : preset->rows) {
      const ModeBasis basis(n);
      const auto rep = schedule_report(basis, s, r, (n + 1) / 2);
      std::printf("%-4d %-4d %-4d %-4d %-22.16g %-22.16g %s ; %s\n", n,
                  (n + 1) / 2, s, r, rep.schedule.gt1, rep.schedule.gt2,
                  rep.t1.text().c_str(), rep.t2.text().c_str());
    }
    return 0;
  }

  const int n = cfg.n_cavities;
  const int q = cfg.resonant_mode == 0 ? (n + 1) / 2 : cfg.resonant_mode;
  const ModeBasis basis(n);
  const auto rep = schedule_report(basis, cfg.sender, cfg.receiver, q);
  std::printf("N=%d q=%d s=%d r=%d\n", n, q, cfg.sender, cfg.receiver);
  std::printf("gt1 = %.16g%s\n", rep.schedule.gt1,
              rep.t1.exact ? ("  (" + rep.t1.text() + ")").c_str() : "");
  std::printf("gt2 = %.16g%s\n", rep.schedule.gt2,
              rep.t2.exact ? ("  (" + rep.t2.text() + ")").c_str() : "");
  std::printf("f(gt1,gt2) = %.12g\n",
              transfer_function(basis, cfg.sender, cfg.receiver, q,
                                rep.schedule.gt1, rep.schedule.gt2));
  return 0;
}

int cmd_run(const RunConfig& cfg, const std::string& traj_path) {
  const ChainParams params = cfg.chain_params();
  warn_regime(params);
  const ModeBasis basis(params.n_cavities);
  ProtocolSchedule sched = perfect_schedule(basis, params.sender,
                                            params.receiver,
                                            params.resonant_mode);
  sched.gt_delay = cfg.delay;
  sched.dt1_frac = cfg.dt1;
  sched.dt2_frac = cfg.dt2;
  sched.measure_after_step1 = cfg.measure;

  const auto t0 = std::chrono::steady_clock::now();
  const auto avg = average_fidelity_detail(params, sched);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  if (!traj_path.empty()) {
    RunOptions options;
    options.timeline_samples = 200;
    const auto run =
        run_protocol(params, sched, BlochState{std::numbers::pi, 0.0}, options);
    std::ofstream out(traj_path);
    if (!out)
      throw std::runtime_error("cannot open trajectory file '" + traj_path + "'");
    write_trajectory_csv(out, run.timeline);
  }

  if (!cfg.out.empty()) {
    RunRecord rec;
    rec.n_cavities = params.n_cavities;
    rec.hop_rate_over_g = params.hop_rate_over_g;
    rec.gamma_over_g = params.gamma_over_g;
    rec.kappa_s_over_g = params.kappa_s_over_g;
    rec.kappa_r_over_g = params.kappa_r_over_g;
    rec.sender = params.sender;
    rec.receiver = params.receiver;
    rec.resonant_mode = params.resonant_mode;
    rec.mode_decay_scaling = params.mode_decay_scaling;
    rec.gt1 = sched.gt1;
    rec.gt2 = sched.gt2;
    rec.gt_delay = sched.gt_delay;
    rec.dt1_frac = sched.dt1_frac;
    rec.dt2_frac = sched.dt2_frac;
    rec.measured = sched.measure_after_step1;
    rec.avg_fidelity = avg.avg_fidelity;
    rec.success_probability = avg.success_probability;
    write_records({rec}, cfg.out, cfg.format, "single run");
  }

  std::printf("F_avg=%.4g p_success=%.4g wall=%.3gs\n", avg.avg_fidelity,
              avg.success_probability, wall);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::vector<int>& n_override) {
  SweepSpec spec;
  std::string name = cfg.preset;
  if (!cfg.preset.empty()) {
    const Preset* preset = find_preset(cfg.preset);
    if (preset == nullptr) {
      std::cerr << "error: unknown preset '" << cfg.preset
                << "' (see list-presets)\n";
      return 1;
    }
    if (preset->kind == Preset::Kind::ScheduleTable) return cmd_schedule(cfg);
    spec = preset->spec;
  } else {
    std::cerr << "error: sweep needs --preset (see list-presets)\n";
    return 1;
  }
  if (!n_override.empty()) {
    spec.n_values = n_override;
    spec.explicit_pairs.clear();
  }
  spec.workers = cfg.workers;

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<RunRecord> records;
  switch (spec.kind) {
    case SweepKind::FidelityVsN: records = sweep_fidelity_vs_n(spec); break;
    case SweepKind::TimingErrorSurface: records = sweep_timing_error(spec); break;
    case SweepKind::DelayCurve: records = sweep_delay(spec); break;
    case SweepKind::Threshold: {
      std::cerr << "error: use the threshold subcommand\n";
      return 1;
    }
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const std::string path =
      cfg.out.empty() ? name + (cfg.format == "json" ? ".json" : ".csv")
                      : cfg.out;
  write_records(records, path, cfg.format, "preset=" + name + " " + provenance_line(spec));

  double lo = 1.0, hi = 0.0;
  for (const auto& r : records) {
    lo = std::min(lo, r.avg_fidelity);
    hi = std::max(hi, r.avg_fidelity);
  }
  std::printf("wrote %zu records to %s  F_avg=[%.4g, %.4g] wall=%.3gs\n",
              records.size(), path.c_str(), lo, hi, wall);
  return 0;
}

int cmd_threshold(const RunConfig& cfg) {
  SweepSpec spec;
  spec.kind = SweepKind::Threshold;
  spec.param_set = param_set_from_string(cfg.param_set);
  if (spec.param_set == ParamSet::Custom)
    spec.custom_rates = DissipationRates{cfg.gamma, cfg.kappa};
  spec.threshold_value = cfg.threshold;
  spec.n_search_max = cfg.n_max;
  spec.workers = cfg.workers;

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = find_threshold_n(spec);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  if (!cfg.out.empty())
    write_records(result.evaluations, cfg.out, cfg.format,
                  "threshold search, " + provenance_line(spec));

  switch (result.status) {
    case ThresholdResult::Status::Found:
      std::printf("largest odd N with F_avg >= %.4g: %d (F_avg=%.4g) wall=%.3gs\n",
                  spec.threshold_value, result.n_largest_passing,
                  result.fidelity_at_n, wall);
      return 0;
    case ThresholdResult::Status::UnboundedWithinRange:
      std::printf("threshold %.4g still satisfied at the search bound N=%d "
                  "(F_avg=%.4g); result unbounded within range\n",
                  spec.threshold_value, result.n_largest_passing,
                  result.fidelity_at_n);
      return 0;
    case ThresholdResult::Status::NotFound:
      std::printf("threshold %.4g is not attained by any odd N in range\n",
                  spec.threshold_value);
      return 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum state transfer in an atom/coupled-cavity array"};
  app.require_subcommand(0, 1);

  std::string config_path;
  bool list_presets_flag = false;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_flag("--list-presets", list_presets_flag,
               "list reproduction presets and exit");

  // A config file, when given, is loaded first; flags override its values.
  RunConfig cfg;
  for (int i = 1; i < argc - 1; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = RunConfig::load_file(argv[i + 1]);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }

  auto add_chain_options = [&](CLI::App* sub, bool with_rates) {
    sub->add_option("-N,--cavities", cfg.n_cavities, "number of cavities N");
    sub->add_option("-s,--sender", cfg.sender, "sender site (1-based)");
    sub->add_option("-r,--receiver", cfg.receiver, "receiver site (1-based)");
    sub->add_option("-q,--mode", cfg.resonant_mode,
                    "resonant mode (default (N+1)/2 for odd N)");
    if (with_rates) {
      sub->add_option("--gamma", cfg.gamma, "cavity decay rate gamma/g");
      sub->add_option("--kappa", cfg.kappa, "atomic decay rate kappa/g");
      sub->add_option("--hop-ratio", cfg.hop_ratio, "hopping ratio A/g");
      sub->add_option("--param-set", cfg.param_set,
                      "current | projected | custom");
      sub->add_option("--mode-decay", cfg.mode_decay,
                      "mode leakage scaling: paper | uniform");
      sub->add_flag("--lossless", cfg.lossless, "disable all dissipation");
    }
  };

  auto* schedule = app.add_subcommand(
      "schedule", "closed-form perfect-transfer interaction times");
  add_chain_options(schedule, false);
  schedule->add_option("--preset", cfg.preset, "schedule preset (table1)");

  std::string traj_path;
  auto* run = app.add_subcommand(
      "run", "one dissipative two-step transfer, Bloch-averaged");
  add_chain_options(run, true);
  run->add_option("--delay", cfg.delay, "gap between the steps (gt)");
  run->add_option("--dt1", cfg.dt1, "fractional timing error, step 1");
  run->add_option("--dt2", cfg.dt2, "fractional timing error, step 2");
  run->add_flag("--measure", cfg.measure, "project sender onto |g> after step 1");
  run->add_option("--traj", traj_path, "write a (gt, populations) CSV");
  run->add_option("--out", cfg.out, "write the run record to this file");
  run->add_option("--format", cfg.format, "csv | json");

  auto* sweep = app.add_subcommand("sweep", "figure/table reproduction sweeps");
  std::vector<int> n_override;
  sweep->add_option("--preset", cfg.preset,
                    "table2 | fig2-current | fig2-projected | fig3 | fig4");
  sweep->add_option("-N,--cavities", n_override,
                    "restrict the preset to these chain lengths");
  sweep->add_option("--workers", cfg.workers, "worker threads");
  sweep->add_option("--out", cfg.out, "output path (default <preset>.<fmt>)");
  sweep->add_option("--format", cfg.format, "csv | json");

  auto* threshold = app.add_subcommand(
      "threshold", "largest odd N whose average fidelity meets a threshold");
  threshold->add_option("--threshold", cfg.threshold, "fidelity threshold");
  threshold->add_option("--n-max", cfg.n_max, "largest N to consider");
  threshold->add_option("--param-set", cfg.param_set,
                        "current | projected | custom");
  threshold->add_option("--gamma", cfg.gamma, "gamma/g for custom rates");
  threshold->add_option("--kappa", cfg.kappa, "kappa/g for custom rates");
  threshold->add_option("--workers", cfg.workers, "worker threads");
  threshold->add_option("--out", cfg.out, "write memoized evaluations");
  threshold->add_option("--format", cfg.format, "csv | json");

  auto* list = app.add_subcommand("list-presets", "list reproduction presets");

  CLI11_PARSE(app, argc, argv);

  if (list_presets_flag || list->parsed()) {
    print_presets();
    return 0;
  }

  try {
    if (schedule->parsed()) return cmd_schedule(cfg);
    if (run->parsed()) return cmd_run(cfg, traj_path);
    if (sweep->parsed()) return cmd_sweep(cfg, n_override);
    if (threshold->parsed()) return cmd_threshold(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << app.help();
  return 0;
}
