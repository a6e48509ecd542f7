#include "ks2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ks2d {

namespace {

constexpr double kTwoPiSq = 4.0 * M_PI * M_PI;

double refined_max(const SpectralField& f, int refine) {
  return physical_on_refined(f, refine).maxCoeff();
}

}  // namespace

double div_sup(const VectorField& u, int refine) {
  return refined_max(divergence(u), refine);
}

double div_plus_sup(const VectorField& u, int refine) {
  return std::max(div_sup(u, refine), 0.0);
}

double proj_div_plus_sup(const VectorField& u, double cutoff, int refine) {
  if (!(cutoff >= 1.0)) {
    throw std::invalid_argument("proj_div_plus_sup: cutoff must be >= 1");
  }
  return std::max(refined_max(project_low(divergence(u), cutoff), refine), 0.0);
}

EnergyBudget energy_budget(const VectorField& u, const ModelSpec& spec,
                           double cutoff) {
  EnergyBudget b;
  const SpectralField lap1 = fractional_laplacian(u.u1(), 2.0);
  const SpectralField lap2 = fractional_laplacian(u.u2(), 2.0);
  b.dissipation = inner_product(lap1, lap1) + inner_product(lap2, lap2);
  // -lambda <Delta u, u> with Delta = -D^2, so the term is +lambda (D^2 u, u).
  b.destab =
      spec.lambda * (inner_product(lap1, u.u1()) + inner_product(lap2, u.u2()));

  const SpectralField delta = divergence(u);
  const SpectralField usq =
      dealiased_product(u.u1(), u.u1()) + dealiased_product(u.u2(), u.u2());
  b.transport = 0.5 * inner_product(delta, usq);

  const VectorField low = project_low(u, cutoff);
  const VectorField high = u - low;
  b.i_a = -inner_product(advect(low, low), low);
  b.i_b = -inner_product(advect(low, high), low);
  b.i_c = -inner_product(advect(high, u), low);
  b.ii = -inner_product(advect(u, u), high);

  const double sum = b.i_a + b.i_b + b.i_c + b.ii;
  const double scale = std::max(
      {1.0, std::abs(b.i_a), std::abs(b.i_b), std::abs(b.i_c), std::abs(b.ii),
       std::abs(b.transport)});
  b.closure_residual = std::abs(sum - b.transport) / scale;
  return b;
}

VectorField galilean_shift(const VectorField& u,
                           const Eigen::Vector2d& displacement,
                           const Eigen::Vector2d& v_now) {
  const Grid& g = u.grid();
  const int n = g.size();
  Eigen::ArrayXXcd c1 = u.u1().coeffs();
  Eigen::ArrayXXcd c2 = u.u2().coeffs();
  const Complex i(0.0, 1.0);
  for (int b = 0; b < n; ++b) {
    const double l2 = g.mode(b);
    for (int a = 0; a < n; ++a) {
      const double l1 = g.mode(a);
      const Complex phase =
          std::exp(i * (l1 * displacement(0) + l2 * displacement(1)));
      c1(a, b) *= phase;
      c2(a, b) *= phase;
    }
  }
  c1(0, 0) -= v_now(0);
  c2(0, 0) -= v_now(1);
  return {SpectralField(g, std::move(c1)), SpectralField(g, std::move(c2))};
}

double MeanOdeReport::max_residual() const {
  double m = 0.0;
  for (const auto& r : residual) m = std::max(m, r.cwiseAbs().maxCoeff());
  return m;
}

double MeanOdeReport::min_bound_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (double s : bound_slack) m = std::min(m, s);
  return m;
}

MeanOdeReport mean_ode_residual(const std::vector<TrajectorySample>& samples) {
  if (samples.size() < 3) {
    throw std::invalid_argument("mean_ode_residual: need at least 3 samples");
  }
  const double dt = samples[1].t - samples[0].t;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double step = samples[k].t - samples[k - 1].t;
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw std::invalid_argument(
          "mean_ode_residual: samples are not uniformly spaced");
    }
  }

  MeanOdeReport report;
  // d/dt mean(u) = -|Omega|^-1 int (u~.grad)u~ dx; the right-hand side is the
  // l=0 coefficient of advect(u~, u~) with the sign flipped.
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
    const Eigen::Vector2d ddt =
        (samples[k + 1].u.mean() - samples[k - 1].u.mean()) / (2.0 * dt);
    const VectorField fl = samples[k].u.fluctuation();
    const Eigen::Vector2d tendency = -advect(fl, fl).mean();
    report.t.push_back(samples[k].t);
    report.residual.push_back(ddt - tendency);
  }

  // Mean-control bound, integral by the trapezoid rule over the samples seen.
  double integral = 0.0;
  double sup_mean = samples[0].u.mean().norm();
  double prev_h1sq = 0.0;
  const double mean0 = samples[0].u.mean().norm();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const VectorField fl = samples[k].u.fluctuation();
    const double h1 = sobolev_norm(fl, 1.0, Homogeneity::inhomogeneous);
    const double h1sq = h1 * h1;
    if (k > 0) integral += 0.5 * dt * (prev_h1sq + h1sq);
    prev_h1sq = h1sq;
    sup_mean = std::max(sup_mean, samples[k].u.mean().norm());
    report.bound_slack.push_back(mean0 + integral / (8.0 * M_PI * M_PI) -
                                 sup_mean);
  }
  return report;
}

TimeInterpolatedVelocity::TimeInterpolatedVelocity(double t0, VectorField u0,
                                                   double t1, VectorField u1)
    : t0_(t0), t1_(t1), u0_(std::move(u0)), u1_(std::move(u1)) {
  if (!(t1_ > t0_)) {
    throw std::invalid_argument("TimeInterpolatedVelocity: need t1 > t0");
  }
  if (u0_.grid() != u1_.grid()) {
    throw std::invalid_argument("TimeInterpolatedVelocity: grids differ");
  }
}

VectorField TimeInterpolatedVelocity::at(double t) const {
  const double theta = std::clamp((t - t0_) / (t1_ - t0_), 0.0, 1.0);
  const Grid& g = u0_.grid();
  return {SpectralField(g, (1.0 - theta) * u0_.u1().coeffs() +
                               theta * u1_.u1().coeffs()),
          SpectralField(g, (1.0 - theta) * u0_.u2().coeffs() +
                               theta * u1_.u2().coeffs())};
}

namespace {

Eigen::VectorXd gradsq_at(const VectorField& u, const PointSet& pts) {
  const VectorField g1 = gradient(u.u1());
  const VectorField g2 = gradient(u.u2());
  const Eigen::VectorXd d1u1 = evaluate_at(g1.u1(), pts);
  const Eigen::VectorXd d2u1 = evaluate_at(g1.u2(), pts);
  const Eigen::VectorXd d1u2 = evaluate_at(g2.u1(), pts);
  const Eigen::VectorXd d2u2 = evaluate_at(g2.u2(), pts);
  return d1u1.array().square() + d2u1.array().square() +
         d1u2.array().square() + d2u2.array().square();
}

}  // namespace

ParticleRecord make_particle_record(double t, PointSet positions,
                                    const VectorField& u) {
  ParticleRecord r{t, std::move(positions), {}, {}, {}};
  r.delta_along = evaluate_at(divergence(u), r.positions);
  r.omega_along = evaluate_at(perp_curl(u), r.positions);
  r.gradsq_along = gradsq_at(u, r.positions);
  return r;
}

ParticleRecord particle_advance(const ParticleRecord& p,
                                const TimeInterpolatedVelocity& velocity,
                                double h) {
  const int np = p.positions.size();
  const VectorField u_begin = velocity.at(p.t);
  const VectorField u_mid = velocity.at(p.t + 0.5 * h);
  const VectorField u_end = velocity.at(p.t + h);

  auto eval = [&](const VectorField& u, const Eigen::Matrix2Xd& x) {
    PointSet pts(x);
    Eigen::Matrix2Xd v(2, np);
    v.row(0) = evaluate_at(u.u1(), pts).transpose();
    v.row(1) = evaluate_at(u.u2(), pts).transpose();
    return v;
  };

  const Eigen::Matrix2Xd x0 = p.positions.positions();
  const Eigen::Matrix2Xd k1 = eval(u_begin, x0);
  const Eigen::Matrix2Xd k2 = eval(u_mid, x0 + 0.5 * h * k1);
  const Eigen::Matrix2Xd k3 = eval(u_mid, x0 + 0.5 * h * k2);
  const Eigen::Matrix2Xd k4 = eval(u_end, x0 + h * k3);
  PointSet next(x0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));

  return make_particle_record(p.t + h, std::move(next), u_end);
}

CriterionReport criterion_report(const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("criterion_report: no records");
  }
  CriterionReport r;
  const DiagnosticsRecord& last = records.back();
  r.t_final = last.t;
  r.int_div_plus = last.running_int_div_plus;
  r.int_proj_div_plus = last.running_int_proj_div_plus;
  r.int_n_alpha_4 = last.running_int_n_alpha_4;
  for (const auto& rec : records) {
    r.peak_h_minus2 = std::max(r.peak_h_minus2, rec.h_minus2_norm);
    r.times.push_back(rec.t);
    r.ratio_trace.push_back(rec.trilinear_ratio);
  }
  // Relative growth of each integral over the final quarter of the samples.
  const std::size_t tail = records.size() - 1 - (records.size() - 1) * 3 / 4;
  const DiagnosticsRecord& base = records[records.size() - 1 - tail];
  auto growth = [](double early, double late) {
    return (late - early) / std::max(1e-300, std::abs(early));
  };
  const double g1 = growth(base.running_int_div_plus, last.running_int_div_plus);
  const double g2 =
      growth(base.running_int_proj_div_plus, last.running_int_proj_div_plus);
  const double g3 = growth(base.running_int_n_alpha_4, last.running_int_n_alpha_4);
  if (g1 >= g2 && g1 >= g3) {
    r.fastest_integral = "int_div_plus";
  } else if (g2 >= g3) {
    r.fastest_integral = "int_proj_div_plus";
  } else {
    r.fastest_integral = "int_n_alpha_4";
  }
  return r;
}

MonitorValues compute_monitors(const VectorField& u, const MonitorParams& mp) {
  MonitorValues v;
  v.l2 = l2_norm(u);
  v.div_sup = div_sup(u, mp.refine);
  v.div_plus_sup = std::max(v.div_sup, 0.0);
  v.n_alpha = cutoff_n_alpha(u, mp.alpha, mp.c_star, mp.n_star);
  v.n_u = cutoff_n_u(u, mp.c_star, mp.n_star);
  v.proj_div_plus_sup = proj_div_plus_sup(u, v.n_alpha, mp.refine);
  return v;
}

DiagnosticsRecord assemble_record(double t, const VectorField& u,
                                  const ModelSpec& model,
                                  const MonitorParams& mp,
                                  const MonitorValues& vals,
                                  const RunningIntegrals& integrals) {
  DiagnosticsRecord r;
  r.t = t;
  r.l2_norm = vals.l2;
  r.h1_norm = sobolev_norm(u, 1.0, Homogeneity::inhomogeneous);
  r.h2_norm = sobolev_norm(u, 2.0, Homogeneity::inhomogeneous);
  const VectorField fl = u.fluctuation();
  r.h_minus_alpha_norm = sobolev_norm(fl, -mp.alpha, Homogeneity::homogeneous);
  r.h_minus2_norm = sobolev_norm(fl, -2.0, Homogeneity::homogeneous);
  r.energy = 0.5 * vals.l2 * vals.l2;
  r.div_plus_sup = vals.div_plus_sup;
  r.div_sup = vals.div_sup;
  r.proj_div_plus_sup = vals.proj_div_plus_sup;
  r.n_alpha = vals.n_alpha;
  r.n_u = vals.n_u;
  r.running_int_div_plus = integrals.div_plus;
  r.running_int_proj_div_plus = integrals.proj_div_plus;
  r.running_int_n_alpha_4 = integrals.n_alpha_4;
  const Eigen::Vector2d mean = u.mean();
  r.mean_u1 = mean(0);
  r.mean_u2 = mean(1);
  r.fluct_h1_norm = sobolev_norm(fl, 1.0, Homogeneity::inhomogeneous);

  const double budget_cutoff =
      model.has_dynamic_cutoff() ? model_cutoff(model, u) : vals.n_alpha;
  r.budget = energy_budget(u, model, budget_cutoff);

  r.time_avg_energy = t > 0.0 ? integrals.energy_l2sq / t : vals.l2 * vals.l2;

  const double num = std::abs(inner_product(advect(fl, fl), fl));
  const double denom = sobolev_norm(fl, 2.0, Homogeneity::homogeneous);
  const double denom2 = denom * denom * r.h_minus2_norm;
  r.trilinear_ratio = denom2 > 0.0 ? num / denom2 : 0.0;
  return r;
}

}  // namespace ks2d
