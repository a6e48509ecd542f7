#pragma once

#include <array>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ks2d/config.hpp"
#include "ks2d/diagnostics.hpp"
#include "ks2d/models.hpp"

namespace ks2d {

struct StepperConfig {
  double h = 1e-3;
  Scheme scheme = Scheme::imex_euler;
  double t_end = 1.0;
  bool safety_checks = true;
};

struct State {
  double t;
  VectorField u;
  ModelSpec model;
};

/// Raised when the integrator produces non-finite coefficients.  Carries the
/// failure time and the norms / dominant mode of the last finite state.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double t, double l2, double h1, double h3, int mode_l1,
              int mode_l2);
  double t() const noexcept { return t_; }
  double l2() const noexcept { return l2_; }
  double h1() const noexcept { return h1_; }
  double h3() const noexcept { return h3_; }
  int mode_l1() const noexcept { return mode_l1_; }
  int mode_l2() const noexcept { return mode_l2_; }

 private:
  double t_, l2_, h1_, h3_;
  int mode_l1_, mode_l2_;
};

/// One step of the semi-implicit Euler scheme
///   u^{k+1}_l = (u^k_l + h nonlin(u^k)_l) / (1 - h sigma(l)),
/// with the model's dynamic cutoff (if any) evaluated from u^k.  Requires a
/// model with a nontrivial linear symbol and positive implicit multipliers
/// 1 - h sigma(l) on every resolved mode.
State imex_euler_step(const State& s, double h, bool safety_checks = true);

/// Classical explicit RK4 step of du/dt = rhs(u).
State rk4_step(const State& s, double h, bool safety_checks = true);

State step(const State& s, Scheme scheme, double h, bool safety_checks = true);

// ---- run loop ---------------------------------------------------------------

struct RunCallbacks {
  std::function<void(const State&, const DiagnosticsRecord&)> on_record;
  std::function<void(const State&)> on_snapshot;
};

struct BlowUpReport {
  double t = 0.0;
  double l2 = 0.0, h1 = 0.0, h3 = 0.0;
  int mode_l1 = 0, mode_l2 = 0;
  double mode_growth = 0.0;  // growth of the dominant mode over the last cadence
  std::vector<std::array<double, 3>> recent_norms;  // (t, h1, h3) near the abort
  std::string message;
};

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  State final_state;
  RunningIntegrals integrals;
  bool blew_up = false;
  BlowUpReport blowup;
};

/// Integrate from t = 0 with the configured initial condition, sampling
/// diagnostics and snapshots at their cadences (and always at the final
/// step).  Criterion integrals accumulate by the trapezoid rule at the
/// diagnostics cadence.  On blow-up the partial result is returned with the
/// report filled in; records emitted so far have already been delivered to
/// the callbacks.
RunResult run(const RunConfig& config, const RunCallbacks& callbacks = {});

/// Same loop, but starting from an explicit state (e.g. a restored snapshot)
/// with previously accumulated integrals.
RunResult run_from(const RunConfig& config, State initial,
                   RunningIntegrals integrals,
                   const RunCallbacks& callbacks = {});

}  // namespace ks2d
