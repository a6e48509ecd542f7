#include "ks2d/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ks2d/io.hpp"

namespace fs = std::filesystem;

namespace ks2d {

namespace {

std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snap_%08ld.ks2d", step);
  return buf;
}

void write_report(const fs::path& dir, const RunConfig& config,
                  const RunResult& result) {
  std::ofstream out(dir / "report.txt");
  const CriterionReport rep = criterion_report(result.records);
  out << "model = " << to_string(config.model.kind)
      << "  lambda = " << config.model.lambda << "  n = " << config.n
      << "  h = " << config.h << "  scheme = " << to_string(config.scheme)
      << "\n";
  out << "status = " << (result.blew_up ? "blowup" : "completed") << "\n";
  out << "t_final = " << rep.t_final << "\n";
  out << "int_div_plus = " << rep.int_div_plus << "\n";
  out << "int_proj_div_plus = " << rep.int_proj_div_plus << "\n";
  out << "int_n_alpha_4 = " << rep.int_n_alpha_4 << "\n";
  out << "peak_fluct_h_minus2 = " << rep.peak_h_minus2 << "\n";
  double ratio_max = 0.0;
  for (double v : rep.ratio_trace) ratio_max = std::max(ratio_max, v);
  out << "trilinear_ratio_max = " << ratio_max
      << "  (full trace in series.csv, column trilinear_ratio)\n";
  if (config.model.kind == ModelKind::castrated_kse) {
    const CastrateConstraintReport c =
        check_castrate_constraints(config.model, config.theorem_c0);
    out << "castrate_constraints(assumed c0 = " << c.assumed_c0
        << ") = " << (c.satisfied() ? "satisfied" : "violated")
        << "  [smallness " << c.smallness_lhs << " vs 1/12, lambda "
        << c.lambda_lhs << " vs " << c.lambda_rhs << "]\n";
  }
  if (result.blew_up) {
    out << "fastest_growing_integral = " << rep.fastest_integral << "\n";
    out << "blowup: " << result.blowup.message << "\n";
  }
}

void write_blowup(const fs::path& dir, const BlowUpReport& b) {
  std::ofstream out(dir / "blowup.txt");
  out << b.message << "\n";
  out << "t = " << b.t << "\n";
  out << "l2 = " << b.l2 << "\nh1 = " << b.h1 << "\nh3 = " << b.h3 << "\n";
  out << "dominant_mode = (" << b.mode_l1 << "," << b.mode_l2 << ")\n";
  out << "dominant_mode_growth_over_last_cadence = " << b.mode_growth << "\n";
  out << "recent (t, h1, h3) trace:\n";
  for (const auto& row : b.recent_norms) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  %.10g  %.10g  %.10g\n", row[0], row[1],
                  row[2]);
    out << buf;
  }
}

int execute(const RunConfig& config, std::optional<State> initial,
            RunningIntegrals integrals) {
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);

  if (config.model.kind == ModelKind::castrated_kse) {
    const CastrateConstraintReport c =
        check_castrate_constraints(config.model, config.theorem_c0);
    if (!c.satisfied()) {
      std::cerr << "warning: castrate constant constraints violated under "
                   "assumed c0 = "
                << c.assumed_c0 << " (sufficiency only; run proceeds)\n";
    }
  }

  TimeSeriesWriter series((dir / "series.csv").string());
  RunCallbacks cb;
  cb.on_record = [&](const State&, const DiagnosticsRecord& rec) {
    series.append(rec);
    series.flush();
  };
  cb.on_snapshot = [&](const State& s) {
    const long k = std::lround(s.t / config.h);
    const bool final_step =
        std::abs(s.t - config.t_end) <= 1e-9 * std::max(1.0, config.t_end);
    const fs::path name = final_step ? "final.ks2d" : fs::path(snapshot_name(k));
    write_snapshot((dir / name).string(), s.t, s.u);
  };

  RunResult result = initial ? run_from(config, std::move(*initial), integrals, cb)
                             : run(config, cb);
  series.flush();
  if (result.blew_up) {
    write_snapshot((dir / "final.ks2d").string(), result.final_state.t,
                   result.final_state.u);
    write_blowup(dir, result.blowup);
  }
  write_report(dir, config, result);
  return result.blew_up ? 3 : 0;
}

}  // namespace

int run_to_files(const RunConfig& config) {
  return execute(config, std::nullopt, RunningIntegrals{});
}

int resume_to_files(const std::string& snapshot_path, const RunConfig& config) {
  const Snapshot snap = read_snapshot(snapshot_path);
  if (snap.n() != config.n) {
    throw ConfigError("snapshot grid n=" + std::to_string(snap.n()) +
                      " does not match config n=" + std::to_string(config.n));
  }
  RunningIntegrals integrals;
  const fs::path source_series = fs::path(snapshot_path).parent_path() / "series.csv";
  bool seeded = false;
  if (fs::exists(source_series)) {
    for (const DiagnosticsRecord& r : read_time_series(source_series.string())) {
      if (std::abs(r.t - snap.t) <= 1e-9 * std::max(1.0, std::abs(snap.t))) {
        integrals.div_plus = r.running_int_div_plus;
        integrals.proj_div_plus = r.running_int_proj_div_plus;
        integrals.n_alpha_4 = r.running_int_n_alpha_4;
        integrals.energy_l2sq = r.time_avg_energy * r.t;
        seeded = true;
        break;
      }
    }
  }
  if (!seeded) {
    std::cerr << "warning: no series row found at t = " << snap.t
              << " next to the snapshot; running integrals restart from 0\n";
  }
  State initial{snap.t, snap.to_field(), config.model};
  return execute(config, std::move(initial), integrals);
}

void report_directory(const std::string& out_dir, std::ostream& out) {
  const fs::path dir(out_dir);
  const auto records = read_time_series((dir / "series.csv").string());
  const CriterionReport rep = criterion_report(records);
  out << "samples = " << records.size() << ", t_final = " << rep.t_final << "\n";
  out << "int_div_plus        = " << rep.int_div_plus << "\n";
  out << "int_proj_div_plus   = " << rep.int_proj_div_plus << "\n";
  out << "int_n_alpha_4       = " << rep.int_n_alpha_4 << "\n";
  out << "peak_fluct_h_minus2 = " << rep.peak_h_minus2 << "\n";
  double ratio_max = 0.0, ratio_final = 0.0;
  if (!rep.ratio_trace.empty()) {
    ratio_final = rep.ratio_trace.back();
    for (double v : rep.ratio_trace) ratio_max = std::max(ratio_max, v);
  }
  out << "trilinear_ratio     = " << ratio_final << " (final), " << ratio_max
      << " (max)\n";
  if (fs::exists(dir / "blowup.txt")) {
    out << "status = blowup; fastest growing integral: " << rep.fastest_integral
        << "\n";
    std::ifstream b(dir / "blowup.txt");
    out << b.rdbuf();
  } else {
    out << "status = completed\n";
  }
}

}  // namespace ks2d
