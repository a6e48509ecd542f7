#pragma once

#include <string>
#include <vector>

#include "ks2d/config.hpp"

namespace ks2d {

struct SweepRow {
  double lambda = 0.0;
  std::string status;  // "ok", "blowup", or "failed: <why>"
  double time_avg_energy = 0.0;
  double peak_l2 = 0.0;
  double int_div_plus = 0.0;
  double int_proj_div_plus = 0.0;
  double int_n_alpha_4 = 0.0;
};

/// Run one independent, shared-nothing job per lambda (base config with the
/// lambda swapped in, out_dir = <base>/lambda_<value>), at most `workers`
/// concurrently.  Failures are isolated per row.  Writes into the base
/// out_dir: summary.csv (rows sorted by lambda), energy_vs_lambda.dat and a
/// gnuplot script plot_energy.gp.  Returns the rows.
std::vector<SweepRow> sweep(const RunConfig& base,
                            const std::vector<double>& lambdas, int workers);

/// Worker count from the KS2D_WORKERS environment variable (falls back to
/// the hardware concurrency).
int sweep_workers_from_env();

}  // namespace ks2d
