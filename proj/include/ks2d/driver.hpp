#pragma once

#include <iosfwd>
#include <string>

#include "ks2d/config.hpp"
#include "ks2d/timestep.hpp"

namespace ks2d {

/// Execute a configured run, writing into config.out_dir:
///   series.csv            diagnostics time series
///   snap_<step>.ks2d      periodic snapshots
///   final.ks2d            state at t_end (or at the abort)
///   report.txt            end-of-run criterion summary
///   blowup.txt            only when the integrator diverged
/// Returns 0 on success, 3 on blow-up (partial output is flushed first).
int run_to_files(const RunConfig& config);

/// Restore a snapshot and continue to config.t_end.  Running integrals are
/// seeded from the series.csv row matching the snapshot time in the snapshot's
/// directory (zero, with a warning, if that file or row is absent).
int resume_to_files(const std::string& snapshot_path, const RunConfig& config);

/// Print the criterion summary of a completed output directory.
void report_directory(const std::string& out_dir, std::ostream& out);

}  // namespace ks2d
