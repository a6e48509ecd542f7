#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ks2d/diagnostics.hpp"
#include "ks2d/timestep.hpp"
#include "oracles.hpp"

using namespace ks2d;

namespace {

ModelSpec make(ModelKind kind, double lambda) {
  ModelSpec spec;
  spec.kind = kind;
  spec.lambda = lambda;
  return spec;
}

}  // namespace

TEST_CASE("divergence suprema") {
  Grid g(32);
  SUBCASE("(sin x1, sin x2) attains 2 at the origin") {
    const VectorField u{
        field_from(g, [](double x1, double) { return std::sin(x1); }),
        field_from(g, [](double, double x2) { return std::sin(x2); })};
    CHECK(div_plus_sup(u) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(div_sup(u) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("(-sin x1, -sin x2) attains 2 at (pi, pi)") {
    const VectorField u{
        field_from(g, [](double x1, double) { return -std::sin(x1); }),
        field_from(g, [](double, double x2) { return -std::sin(x2); })};
    CHECK(div_plus_sup(u) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("divergence-free fields give zero") {
    const VectorField u{
        field_from(g, [](double, double x2) { return -std::sin(x2); }),
        field_from(g, [](double x1, double) { return std::sin(x1); })};
    CHECK(div_plus_sup(u) == 0.0);
    CHECK(div_sup(u) == 0.0);
  }
}

TEST_CASE("projected divergence suprema") {
  Grid g(32);
  // u chosen so div u = cos(x1) + cos(5 x1)
  const VectorField u{field_from(g, [](double x1, double) {
                        return std::sin(x1) + std::sin(5 * x1) / 5.0;
                      }),
                      SpectralField::zero(g)};
  SUBCASE("cutoff 2 keeps only the unit mode") {
    CHECK(proj_div_plus_sup(u, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("a cutoff above every active mode reproduces div_plus_sup") {
    CHECK(proj_div_plus_sup(u, 6.0) ==
          doctest::Approx(div_plus_sup(u)).epsilon(1e-14));
  }
  SUBCASE("dense-sampling oracle at 512^2") {
    std::mt19937_64 rng(3);
    const VectorField v = oracles::random_vector_field(g, 8, rng);
    const int factor = 16;  // 32 * 16 = 512 points per axis
    const double fast = proj_div_plus_sup(v, 3.0, factor);
    const SpectralField truncated = project_low(divergence(v), 3.0);
    const double direct =
        std::max(oracles::direct_physical(truncated, factor * g.size())
                     .maxCoeff(),
                 0.0);
    CHECK(fast == doctest::Approx(direct).epsilon(1e-6));
  }
}

TEST_CASE("energy budget") {
  Grid g(32);
  const ModelSpec spec = make(ModelKind::kse, 2.0);
  SUBCASE("zero field gives an all-zero budget") {
    const EnergyBudget b = energy_budget(VectorField::zero(g), spec, 3.0);
    CHECK(b.dissipation == 0.0);
    CHECK(b.destab == 0.0);
    CHECK(b.transport == 0.0);
    CHECK(b.i_a == 0.0);
    CHECK(b.ii == 0.0);
  }
  SUBCASE("odd single-mode transport vanishes") {
    const VectorField u{
        field_from(g, [](double x1, double) { return 0.3 * std::sin(x1); }),
        SpectralField::zero(g)};
    const EnergyBudget b = energy_budget(u, spec, 3.0);
    CHECK(std::abs(b.transport) < 1e-13);
  }
  SUBCASE("terms match the physical-space quadrature oracle") {
    std::mt19937_64 rng(5);
    const int m = 2 * g.size();
    for (int trial = 0; trial < 3; ++trial) {
      const VectorField u = oracles::random_curl_free(g, 6, rng);
      const double cutoff = 3.0;
      const EnergyBudget b = energy_budget(u, spec, cutoff);
      const VectorField low = project_low(u, cutoff);
      const VectorField high = u - low;
      CHECK(oracles::rel_err(
                b.i_a, -oracles::quadrature_advect_inner(low, low, low, m)) <
            1e-10);
      CHECK(oracles::rel_err(
                b.i_b, -oracles::quadrature_advect_inner(low, high, low, m)) <
            1e-10);
      CHECK(oracles::rel_err(
                b.i_c, -oracles::quadrature_advect_inner(high, u, low, m)) <
            1e-10);
      CHECK(oracles::rel_err(
                b.ii, -oracles::quadrature_advect_inner(u, u, high, m)) <
            1e-10);
      const double closure = b.i_a + b.i_b + b.i_c + b.ii;
      CHECK(oracles::rel_err(closure, b.transport) < 1e-9);
      CHECK(b.closure_residual < 1e-9);
    }
  }
}

TEST_CASE("galilean shift") {
  Grid g(32);
  SUBCASE("quarter-period shift turns sin into cos") {
    const VectorField u{
        field_from(g, [](double x1, double) { return std::sin(x1); }),
        SpectralField::zero(g)};
    const VectorField shifted =
        galilean_shift(u, {M_PI / 2.0, 0.0}, {0.0, 0.0});
    const SpectralField expect =
        field_from(g, [](double x1, double) { return std::cos(x1); });
    CHECK((shifted.u1().coeffs() - expect.coeffs()).abs().maxCoeff() < 1e-13);
    CHECK(sobolev_norm(shifted, 1.0, Homogeneity::homogeneous) ==
          doctest::Approx(sobolev_norm(u, 1.0, Homogeneity::homogeneous))
              .epsilon(1e-13));
  }
  SUBCASE("subtracting the mean yields the fluctuation") {
    std::mt19937_64 rng(7);
    const VectorField u =
        oracles::random_curl_free(g, 5, rng, 1.0, {0.4, -0.2});
    const VectorField shifted = galilean_shift(u, {0.0, 0.0}, u.mean());
    CHECK(l2_norm(shifted - u.fluctuation()) < 1e-13);
  }
  SUBCASE("homogeneous norms of every order are preserved") {
    std::mt19937_64 rng(11);
    const VectorField u = oracles::random_vector_field(g, 8, rng, true);
    const VectorField shifted = galilean_shift(u, {1.234, -0.777}, {0.3, 0.1});
    for (double kappa : {-2.0, -1.0, 1.0, 2.0}) {
      const double a = sobolev_norm(u, kappa, Homogeneity::homogeneous);
      const double b = sobolev_norm(shifted, kappa, Homogeneity::homogeneous);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
    }
  }
  SUBCASE("div_plus_sup is shift-invariant") {
    std::mt19937_64 rng(13);
    const VectorField u = oracles::random_vector_field(g, 6, rng);
    // A shift by whole refined-grid cells permutes the sampled values.
    const double cell = 2.0 * M_PI / (2 * g.size());
    const VectorField lattice = galilean_shift(u, {5 * cell, 9 * cell}, {0.7, 0.7});
    CHECK(div_plus_sup(lattice) ==
          doctest::Approx(div_plus_sup(u)).epsilon(1e-12));
    // Generic shifts agree to the sampling resolution.
    const VectorField generic = galilean_shift(u, {0.537, 1.921}, {0.0, 0.0});
    CHECK(div_plus_sup(generic, 8) ==
          doctest::Approx(div_plus_sup(u, 8)).epsilon(1e-3));
  }
  SUBCASE("norm pythagoras across mean and fluctuation") {
    std::mt19937_64 rng(17);
    const VectorField u =
        oracles::random_curl_free(g, 6, rng, 2.0, {0.3, -0.8});
    const double total = l2_norm(u);
    const double fluct = l2_norm(u.fluctuation());
    const double mean2 = 4.0 * M_PI * M_PI * u.mean().squaredNorm();
    CHECK(oracles::rel_err(total * total, fluct * fluct + mean2) < 1e-10);
  }
}

TEST_CASE("mean ode residual") {
  Grid g(32);
  SUBCASE("linear-only evolution of a curl-free field has zero residual") {
    std::mt19937_64 rng(19);
    const VectorField u0 = oracles::random_curl_free(g, 4, rng, 1.0);
    const ModelSpec spec = make(ModelKind::kse, 2.0);
    const Eigen::ArrayXXd sig = linear_symbol_table(spec, g);
    std::vector<TrajectorySample> samples;
    for (int k = 0; k <= 4; ++k) {
      const double t = 0.01 * k;
      const Eigen::ArrayXXcd decay = (sig * t).exp().cast<Complex>();
      samples.push_back(
          {t, VectorField(SpectralField(g, u0.u1().coeffs() * decay),
                          SpectralField(g, u0.u2().coeffs() * decay))});
    }
    const MeanOdeReport rep = mean_ode_residual(samples);
    CHECK(rep.max_residual() < 1e-12);
    CHECK(rep.min_bound_slack() >= -1e-12);
  }
  SUBCASE("constant field under inviscid burgers keeps its mean") {
    Eigen::ArrayXXcd c = Eigen::ArrayXXcd::Zero(32, 32);
    c(0, 0) = 0.6;
    const VectorField u{SpectralField(g, c), SpectralField::zero(g)};
    State s{0.0, u, make(ModelKind::burgers_inviscid, 0.0)};
    std::vector<TrajectorySample> samples;
    samples.push_back({s.t, s.u});
    for (int k = 0; k < 4; ++k) {
      s = rk4_step(s, 0.05);
      samples.push_back({s.t, s.u});
    }
    const MeanOdeReport rep = mean_ode_residual(samples);
    CHECK(rep.max_residual() < 1e-13);
    CHECK(std::abs(samples.back().u.mean()(0) - 0.6) < 1e-13);
  }
  SUBCASE("curl-free kse trajectory: the mean is exactly steady") {
    // (u.grad)u = grad(|u|^2)/2 for curl-free u, so the mean tendency
    // vanishes and the residual sits at round-off.
    std::mt19937_64 rng(21);
    const VectorField u0 = oracles::random_curl_free(g, 3, rng, 0.5, {0.2, -0.1});
    const double h = 1e-3;
    State s{0.0, u0, make(ModelKind::kse, 2.0)};
    std::vector<TrajectorySample> samples;
    samples.push_back({s.t, s.u});
    for (int k = 0; k < 40; ++k) {
      s = imex_euler_step(s, h);
      if ((k + 1) % 10 == 0) samples.push_back({s.t, s.u});
    }
    const MeanOdeReport rep = mean_ode_residual(samples);
    CHECK(rep.max_residual() < 1e-10);
    CHECK(rep.min_bound_slack() >= -1e-12);
    CHECK(std::abs(samples.back().u.mean()(0) - 0.2) < 1e-10);
  }
  SUBCASE("rotational kse trajectory: residual scales at first order") {
    std::mt19937_64 rng(23);
    const VectorField u0 = 0.02 * oracles::random_vector_field(g, 3, rng);
    const ModelSpec spec = make(ModelKind::kse, 2.0);
    auto max_residual_at = [&](double h) {
      State s{0.0, u0, spec};
      // Let the stiff transient decay before sampling.
      while (s.t < 0.1 - 1e-12) s = imex_euler_step(s, h);
      std::vector<TrajectorySample> samples;
      samples.push_back({s.t, s.u});
      const int cadence = 5;
      for (int k = 0; k < 6 * cadence; ++k) {
        s = imex_euler_step(s, h);
        if ((k + 1) % cadence == 0) samples.push_back({s.t, s.u});
      }
      return mean_ode_residual(samples).max_residual();
    };
    const double coarse = max_residual_at(1e-3);
    const double fine = max_residual_at(5e-4);
    CHECK(coarse < 1e-3);
    CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.35));
  }
  SUBCASE("nonuniform spacing is rejected") {
    std::vector<TrajectorySample> samples;
    samples.push_back({0.0, VectorField::zero(g)});
    samples.push_back({0.1, VectorField::zero(g)});
    samples.push_back({0.3, VectorField::zero(g)});
    CHECK_THROWS_AS(mean_ode_residual(samples), std::invalid_argument);
  }
}

TEST_CASE("particle tracing") {
  Grid g(32);
  SUBCASE("uniform flow advects by v h") {
    Eigen::ArrayXXcd c = Eigen::ArrayXXcd::Zero(32, 32);
    c(0, 0) = 1.0;
    const VectorField u{SpectralField(g, c), SpectralField::zero(g)};
    Eigen::Matrix2Xd pts(2, 1);
    pts.col(0) << 0.0, 0.0;
    const ParticleRecord p0 = make_particle_record(0.0, PointSet(pts), u);
    const TimeInterpolatedVelocity vel(0.0, u, 0.25, u);
    const ParticleRecord p1 = particle_advance(p0, vel, 0.25);
    CHECK(p1.positions.point(0)(0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(p1.positions.point(0)(1) == doctest::Approx(0.0));
  }
  SUBCASE("zeros of a frozen field are stationary") {
    const VectorField u{
        field_from(g, [](double x1, double) { return std::sin(x1); }),
        SpectralField::zero(g)};
    Eigen::Matrix2Xd pts(2, 1);
    pts.col(0) << M_PI, 1.3;
    ParticleRecord p = make_particle_record(0.0, PointSet(pts), u);
    for (int k = 0; k < 8; ++k) {
      const TimeInterpolatedVelocity vel(p.t, u, p.t + 0.1, u);
      p = particle_advance(p, vel, 0.1);
    }
    CHECK(std::abs(p.positions.point(0)(0) - M_PI) < 1e-12);
    CHECK(std::abs(p.positions.point(0)(1) - 1.3) < 1e-12);
  }
  SUBCASE("inviscid burgers: divergence falls along trajectories") {
    std::mt19937_64 rng(29);
    const VectorField u0 = oracles::random_curl_free(g, 2, rng, 0.4);
    const ModelSpec spec = make(ModelKind::burgers_inviscid, 0.0);
    const double h = 0.02, t_end = 0.6;
    const int steps = std::lround(t_end / h);
    const int np = 10;
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    Eigen::Matrix2Xd pts(2, np);
    for (int i = 0; i < np; ++i) pts.col(i) << unif(rng), unif(rng);

    State s{0.0, u0, spec};
    ParticleRecord rec = make_particle_record(0.0, PointSet(pts), s.u);
    // Oracle: integrate dX/dt = u, d(delta)/dt = -|grad u|^2 along the same
    // trajectory at h/10 and compare the endpoint divergence.
    Eigen::Matrix2Xd x_oracle = pts;
    Eigen::VectorXd delta_oracle = rec.delta_along;

    std::vector<Eigen::VectorXd> delta_history{rec.delta_along};
    for (int k = 0; k < steps; ++k) {
      const State next = rk4_step(s, h);
      const TimeInterpolatedVelocity vel(s.t, s.u, next.t, next.u);
      rec = particle_advance(rec, vel, h);
      delta_history.push_back(rec.delta_along);

      const double hh = h / 10.0;
      for (int sub = 0; sub < 10; ++sub) {
        const double tt = s.t + sub * hh;
        auto field_delta = [&](double t, const Eigen::Matrix2Xd& x,
                               Eigen::Matrix2Xd& v, Eigen::VectorXd& dd) {
          const VectorField uu = vel.at(t);
          const PointSet ps(x);
          v.row(0) = evaluate_at(uu.u1(), ps).transpose();
          v.row(1) = evaluate_at(uu.u2(), ps).transpose();
          const VectorField g1 = gradient(uu.u1());
          const VectorField g2 = gradient(uu.u2());
          dd = -(evaluate_at(g1.u1(), ps).array().square() +
                 evaluate_at(g1.u2(), ps).array().square() +
                 evaluate_at(g2.u1(), ps).array().square() +
                 evaluate_at(g2.u2(), ps).array().square())
                    .matrix();
        };
        Eigen::Matrix2Xd v1(2, np), v2(2, np), v3(2, np), v4(2, np);
        Eigen::VectorXd d1(np), d2(np), d3(np), d4(np);
        field_delta(tt, x_oracle, v1, d1);
        field_delta(tt + hh / 2, x_oracle + hh / 2 * v1, v2, d2);
        field_delta(tt + hh / 2, x_oracle + hh / 2 * v2, v3, d3);
        field_delta(tt + hh, x_oracle + hh * v3, v4, d4);
        x_oracle += hh / 6.0 * (v1 + 2 * v2 + 2 * v3 + v4);
        delta_oracle += hh / 6.0 * (d1 + 2 * d2 + 2 * d3 + d4);
      }
      s = next;
    }

    for (std::size_t k = 1; k < delta_history.size(); ++k) {
      for (int i = 0; i < np; ++i) {
        CHECK(delta_history[k](i) <= delta_history[k - 1](i) + 1e-4);
      }
    }
    CHECK((rec.delta_along - delta_oracle).cwiseAbs().maxCoeff() < 1e-4);
    CHECK(rec.omega_along.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("criterion report") {
  Grid g(16);
  SUBCASE("empty record list is rejected") {
    CHECK_THROWS_AS(criterion_report({}), std::invalid_argument);
  }
  SUBCASE("aggregates integrals and the ratio trace") {
    std::vector<DiagnosticsRecord> records(3);
    for (int k = 0; k < 3; ++k) {
      records[k].t = 0.1 * k;
      records[k].running_int_div_plus = 1.0 * k;
      records[k].running_int_proj_div_plus = 0.5 * k;
      records[k].running_int_n_alpha_4 = 2.0 * k;
      records[k].h_minus2_norm = 3.0 - k;
      records[k].trilinear_ratio = 0.1 + k;
    }
    const CriterionReport rep = criterion_report(records);
    CHECK(rep.t_final == doctest::Approx(0.2));
    CHECK(rep.int_div_plus == doctest::Approx(2.0));
    CHECK(rep.int_proj_div_plus == doctest::Approx(1.0));
    CHECK(rep.int_n_alpha_4 == doctest::Approx(4.0));
    CHECK(rep.peak_h_minus2 == doctest::Approx(3.0));
    CHECK(rep.ratio_trace.size() == 3);
    CHECK_FALSE(rep.fastest_integral.empty());
  }
}
