#include "ks2d/timestep.hpp"

#include <cmath>
#include <sstream>

#include "ks2d/initial.hpp"

namespace ks2d {

namespace {

bool all_finite(const VectorField& u) {
  return u.u1().coeffs().allFinite() && u.u2().coeffs().allFinite();
}

BlowUpError make_blowup(const State& last_finite, double t_fail) {
  const VectorField& u = last_finite.u;
  const Grid& g = u.grid();
  int best_a = 0, best_b = 0;
  double best = -1.0;
  const int n = g.size();
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      const double mag =
          std::abs(u.u1().coeffs()(a, b)) + std::abs(u.u2().coeffs()(a, b));
      if (mag > best) {
        best = mag;
        best_a = a;
        best_b = b;
      }
    }
  }
  return BlowUpError(t_fail, l2_norm(u),
                     sobolev_norm(u, 1.0, Homogeneity::inhomogeneous),
                     sobolev_norm(u, 3.0, Homogeneity::inhomogeneous),
                     g.mode(best_a), g.mode(best_b));
}

}  // namespace

BlowUpError::BlowUpError(double t, double l2, double h1, double h3,
                         int mode_l1, int mode_l2)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "integrator diverged at t = " << t << " (last finite state: |u|_L2 = "
           << l2 << ", |u|_H1 = " << h1 << ", |u|_H3 = " << h3
           << ", dominant mode (" << mode_l1 << "," << mode_l2 << "))";
        return os.str();
      }()),
      t_(t),
      l2_(l2),
      h1_(h1),
      h3_(h3),
      mode_l1_(mode_l1),
      mode_l2_(mode_l2) {}

State imex_euler_step(const State& s, double h, bool safety_checks) {
  const ModelSpec& spec = s.model;
  if (spec.kind == ModelKind::burgers_inviscid) {
    throw std::invalid_argument(
        "imex_euler_step: burgers_inviscid has no stiff linear part; use rk4");
  }
  const Grid& g = s.u.grid();
  const Eigen::ArrayXXd sig = linear_symbol_table(spec, g);
  const Eigen::ArrayXXd multiplier = 1.0 - h * sig;
  if (safety_checks && multiplier.minCoeff() <= 0.0) {
    int a_bad = 0, b_bad = 0;
    multiplier.minCoeff(&a_bad, &b_bad);
    std::ostringstream os;
    os << "imex_euler_step: implicit multiplier 1 - h*sigma = "
       << multiplier(a_bad, b_bad) << " <= 0 at mode (" << g.mode(a_bad) << ","
       << g.mode(b_bad) << "); reduce h below " << 1.0 / sig(a_bad, b_bad);
    throw std::invalid_argument(os.str());
  }
  const Nonlinearity nl = nonlinearity(spec, s.u);
  SpectralField v1(g, (s.u.u1().coeffs() + h * nl.u1().coeffs()) / multiplier);
  SpectralField v2(g, (s.u.u2().coeffs() + h * nl.u2().coeffs()) / multiplier);
  State next{s.t + h, VectorField(std::move(v1), std::move(v2)), spec};
  if (safety_checks && !all_finite(next.u)) throw make_blowup(s, next.t);
  return next;
}

State rk4_step(const State& s, double h, bool safety_checks) {
  const ModelSpec& spec = s.model;
  const VectorField k1 = rhs(spec, s.u);
  const VectorField k2 = rhs(spec, s.u + 0.5 * h * k1);
  const VectorField k3 = rhs(spec, s.u + 0.5 * h * k2);
  const VectorField k4 = rhs(spec, s.u + h * k3);
  State next{s.t + h,
             s.u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), spec};
  if (safety_checks && !all_finite(next.u)) throw make_blowup(s, next.t);
  return next;
}

State step(const State& s, Scheme scheme, double h, bool safety_checks) {
  return scheme == Scheme::imex_euler ? imex_euler_step(s, h, safety_checks)
                                      : rk4_step(s, h, safety_checks);
}

namespace {

/// Growth of the dominant mode between two states (per unit of the interval).
double dominant_mode_growth(const VectorField& before, const VectorField& now,
                            int l1, int l2) {
  const Complex b = before.u1().coeff(l1, l2);
  const Complex c = now.u1().coeff(l1, l2);
  const double mb = std::abs(b) + std::abs(before.u2().coeff(l1, l2));
  const double mc = std::abs(c) + std::abs(now.u2().coeff(l1, l2));
  return mb > 0.0 ? mc / mb : 0.0;
}

}  // namespace

RunResult run(const RunConfig& config, const RunCallbacks& callbacks) {
  config.validate();
  const Grid grid(config.n);
  State initial{0.0, build_initial(config.init, grid), config.model};
  return run_from(config, std::move(initial), RunningIntegrals{}, callbacks);
}

RunResult run_from(const RunConfig& config, State initial,
                   RunningIntegrals integrals, const RunCallbacks& callbacks) {
  config.validate();
  const long steps = config.steps_between(initial.t);
  const MonitorParams mp{config.model.alpha, config.model.c_star,
                         config.model.n_star, config.refine};

  RunResult result{{}, initial, integrals, false, {}};
  std::deque<std::array<double, 3>> recent;  // (t, h1, h3) ring for the report

  MonitorValues prev_vals;
  double prev_t = 0.0;
  bool have_prev = false;
  State prev_record_state = initial;  // state at the previous diagnostics sample

  auto sample = [&](const State& s) {
    const MonitorValues vals = compute_monitors(s.u, mp);
    if (have_prev) {
      const double dt = s.t - prev_t;
      result.integrals.div_plus +=
          0.5 * dt * (prev_vals.div_plus_sup + vals.div_plus_sup);
      result.integrals.proj_div_plus +=
          0.5 * dt * (prev_vals.proj_div_plus_sup + vals.proj_div_plus_sup);
      result.integrals.n_alpha_4 +=
          0.5 * dt *
          (std::pow(prev_vals.n_alpha, 4) + std::pow(vals.n_alpha, 4));
      result.integrals.energy_l2sq +=
          0.5 * dt * (prev_vals.l2 * prev_vals.l2 + vals.l2 * vals.l2);
    }
    const DiagnosticsRecord rec =
        assemble_record(s.t, s.u, s.model, mp, vals, result.integrals);
    result.records.push_back(rec);
    recent.push_back({s.t, rec.h1_norm,
                      sobolev_norm(s.u, 3.0, Homogeneity::inhomogeneous)});
    if (recent.size() > 16) recent.pop_front();
    if (callbacks.on_record) callbacks.on_record(s, rec);
    prev_vals = vals;
    prev_t = s.t;
    have_prev = true;
    prev_record_state = s;
  };

  State s = std::move(initial);
  sample(s);
  if (steps == 0) {
    if (callbacks.on_snapshot) callbacks.on_snapshot(s);
    result.final_state = s;
    return result;
  }

  for (long k = 1; k <= steps; ++k) {
    try {
      s = step(s, config.scheme, config.h, /*safety_checks=*/true);
    } catch (const BlowUpError& e) {
      result.blew_up = true;
      result.blowup.t = e.t();
      result.blowup.l2 = e.l2();
      result.blowup.h1 = e.h1();
      result.blowup.h3 = e.h3();
      result.blowup.mode_l1 = e.mode_l1();
      result.blowup.mode_l2 = e.mode_l2();
      result.blowup.mode_growth = dominant_mode_growth(
          prev_record_state.u, s.u, e.mode_l1(), e.mode_l2());
      result.blowup.recent_norms.assign(recent.begin(), recent.end());
      result.blowup.message = e.what();
      result.final_state = s;
      return result;
    }
    const bool last = (k == steps);
    if (k % config.diag_every == 0 || last) sample(s);
    if (callbacks.on_snapshot && (k % config.snap_every == 0 || last)) {
      callbacks.on_snapshot(s);
    }
  }
  result.final_state = s;
  return result;
}

}  // namespace ks2d
