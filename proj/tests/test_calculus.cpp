#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ks2d/calculus.hpp"
#include "ks2d/models.hpp"
#include "oracles.hpp"

using namespace ks2d;

TEST_CASE("gradient of analytic fields") {
  Grid g(32);
  SUBCASE("sin(x1)sin(x2)") {
    const SpectralField phi = field_from(
        g, [](double x1, double x2) { return std::sin(x1) * std::sin(x2); });
    const VectorField grad = gradient(phi);
    const SpectralField g1 = field_from(
        g, [](double x1, double x2) { return std::cos(x1) * std::sin(x2); });
    const SpectralField g2 = field_from(
        g, [](double x1, double x2) { return std::sin(x1) * std::cos(x2); });
    CHECK((grad.u1().coeffs() - g1.coeffs()).abs().maxCoeff() < 1e-13);
    CHECK((grad.u2().coeffs() - g2.coeffs()).abs().maxCoeff() < 1e-13);
  }
  SUBCASE("constants have zero gradient") {
    const SpectralField phi =
        to_spectral(g, Eigen::ArrayXXd::Constant(32, 32, 5.0));
    const VectorField grad = gradient(phi);
    CHECK(l2_norm(grad) == 0.0);
  }
  SUBCASE("curl of a gradient vanishes") {
    std::mt19937_64 rng(3);
    const SpectralField phi = oracles::random_field(g, 9, rng);
    CHECK(max_abs(perp_curl(gradient(phi))) < 1e-12);
  }
}

TEST_CASE("divergence and perpendicular curl") {
  Grid g(32);
  SUBCASE("u = (sin x1, sin x2)") {
    const VectorField u{
        field_from(g, [](double x1, double) { return std::sin(x1); }),
        field_from(g, [](double, double x2) { return std::sin(x2); })};
    const SpectralField delta = divergence(u);
    const SpectralField expect = field_from(
        g, [](double x1, double x2) { return std::cos(x1) + std::cos(x2); });
    CHECK((delta.coeffs() - expect.coeffs()).abs().maxCoeff() < 1e-13);
    CHECK(max_abs(perp_curl(u)) < 1e-13);
  }
  SUBCASE("u = (-sin x2, sin x1)") {
    const VectorField u{
        field_from(g, [](double, double x2) { return -std::sin(x2); }),
        field_from(g, [](double x1, double) { return std::sin(x1); })};
    CHECK(max_abs(divergence(u)) < 1e-13);
    const SpectralField expect = field_from(
        g, [](double x1, double x2) { return std::cos(x1) + std::cos(x2); });
    CHECK((perp_curl(u).coeffs() - expect.coeffs()).abs().maxCoeff() < 1e-13);
  }
  SUBCASE("divergence integrates to zero") {
    std::mt19937_64 rng(5);
    const VectorField u = oracles::random_vector_field(g, 8, rng, true);
    CHECK(std::abs(divergence(u).mean()) < 1e-12);
    CHECK(std::abs(perp_curl(u).mean()) < 1e-12);
  }
}

TEST_CASE("curl-free projection") {
  Grid g(32);
  SUBCASE("a divergence-free mean-free field projects to zero") {
    const VectorField u{
        field_from(g, [](double, double x2) { return -std::sin(x2); }),
        field_from(g, [](double x1, double) { return std::sin(x1); })};
    CHECK(l2_norm(curl_free_projection(u)) < 1e-13);
  }
  SUBCASE("gradients are fixed points") {
    const SpectralField phi = field_from(
        g, [](double x1, double x2) { return std::sin(x1) * std::sin(x2); });
    const VectorField u = gradient(phi);
    const VectorField p = curl_free_projection(u);
    CHECK(l2_norm(p - u) < 1e-13);
  }
  SUBCASE("random decomposition closes") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
      const VectorField u = oracles::random_vector_field(g, 8, rng, true);
      const VectorField p = curl_free_projection(u);
      const VectorField q = u - p;
      CHECK(l2_norm((p + q) - u) < 1e-12);
      CHECK(max_abs(perp_curl(p)) < 1e-12);
      CHECK(max_abs(divergence(q)) < 1e-12);
      const VectorField pp = curl_free_projection(p);
      CHECK(l2_norm(pp - p) < 1e-12);
    }
  }
  SUBCASE("the mean stays in the curl-free part") {
    const VectorField u{
        to_spectral(g, Eigen::ArrayXXd::Constant(32, 32, 1.5)),
        to_spectral(g, Eigen::ArrayXXd::Constant(32, 32, -0.5))};
    const VectorField p = curl_free_projection(u);
    CHECK(p.mean()(0) == doctest::Approx(1.5));
    CHECK(p.mean()(1) == doctest::Approx(-0.5));
  }
}

TEST_CASE("potential reconstruction") {
  Grid g(32);
  SUBCASE("(cos x1, 0) has potential sin(x1)") {
    const VectorField u{
        field_from(g, [](double x1, double) { return std::cos(x1); }),
        SpectralField::zero(g)};
    const SpectralField phi = potential_from_gradient(u);
    const SpectralField expect =
        field_from(g, [](double x1, double) { return std::sin(x1); });
    CHECK((phi.coeffs() - expect.coeffs()).abs().maxCoeff() < 1e-13);
  }
  SUBCASE("zero maps to zero") {
    const SpectralField phi = potential_from_gradient(VectorField::zero(g));
    CHECK(l2_norm(phi) == 0.0);
  }
  SUBCASE("recovers a random potential") {
    std::mt19937_64 rng(11);
    const SpectralField phi = oracles::random_field(g, 10, rng);
    const SpectralField back = potential_from_gradient(gradient(phi));
    CHECK((back.coeffs() - phi.coeffs()).abs().maxCoeff() <
          1e-12 * phi.coeffs().abs().maxCoeff());
    CHECK(l2_norm(gradient(back) - gradient(phi)) < 1e-10);
  }
  SUBCASE("rotational input is rejected with the measured curl") {
    const VectorField u{
        field_from(g, [](double, double x2) { return -std::sin(x2); }),
        field_from(g, [](double x1, double) { return std::sin(x1); })};
    try {
      potential_from_gradient(u);
      FAIL("expected NotCurlFreeError");
    } catch (const NotCurlFreeError& e) {
      CHECK(e.curl_max() == doctest::Approx(2.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("point evaluation") {
  Grid g(32);
  SUBCASE("analytic spot checks") {
    const SpectralField s =
        field_from(g, [](double x1, double) { return std::sin(x1); });
    Eigen::Matrix2Xd pts(2, 2);
    pts.col(0) << M_PI / 2.0, 0.0;
    pts.col(1) << 0.3, 5.1;
    const Eigen::VectorXd vals = evaluate_at(s, PointSet(pts));
    CHECK(vals(0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(vals(1) == doctest::Approx(std::sin(0.3)).epsilon(1e-13));

    const SpectralField c = field_from(
        g, [](double x1, double x2) { return std::cos(x1 + x2); });
    Eigen::Matrix2Xd p2(2, 1);
    p2.col(0) << M_PI, M_PI;
    CHECK(evaluate_at(c, PointSet(p2))(0) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("agrees with to_physical at collocation points") {
    std::mt19937_64 rng(13);
    const SpectralField f = oracles::random_field(g, 10, rng, true);
    const Eigen::ArrayXXd phys = f.to_physical();
    Eigen::Matrix2Xd pts(2, 4);
    pts.col(0) << g.coordinate(0), g.coordinate(0);
    pts.col(1) << g.coordinate(5), g.coordinate(17);
    pts.col(2) << g.coordinate(31), g.coordinate(1);
    pts.col(3) << g.coordinate(16), g.coordinate(16);
    const Eigen::VectorXd vals = evaluate_at(f, PointSet(pts));
    CHECK(std::abs(vals(0) - phys(0, 0)) < 1e-12);
    CHECK(std::abs(vals(1) - phys(5, 17)) < 1e-12);
    CHECK(std::abs(vals(2) - phys(31, 1)) < 1e-12);
    CHECK(std::abs(vals(3) - phys(16, 16)) < 1e-12);
  }
  SUBCASE("matches an 8x refined grid at off-grid nodes") {
    std::mt19937_64 rng(17);
    const SpectralField f = oracles::random_field(g, 10, rng);
    const int factor = 8;
    const Eigen::ArrayXXd fine = physical_on_refined(f, factor);
    const int m = factor * g.size();
    std::uniform_int_distribution<int> pick(0, m - 1);
    Eigen::Matrix2Xd pts(2, 20);
    std::vector<std::pair<int, int>> nodes;
    for (int k = 0; k < 20; ++k) {
      int i = pick(rng), j = pick(rng);
      if (i % factor == 0 && j % factor == 0) ++i;  // force off the coarse grid
      nodes.emplace_back(i, j);
      pts.col(k) << 2.0 * M_PI * i / m, 2.0 * M_PI * j / m;
    }
    const Eigen::VectorXd vals = evaluate_at(f, PointSet(pts));
    for (int k = 0; k < 20; ++k) {
      CHECK(std::abs(vals(k) - fine(nodes[k].first, nodes[k].second)) < 1e-9);
    }
  }
  SUBCASE("coordinates reduce modulo 2pi") {
    Eigen::Matrix2Xd pts(2, 1);
    pts.col(0) << -1.0, 7.0;
    const PointSet ps(pts);
    CHECK(ps.point(0)(0) == doctest::Approx(2.0 * M_PI - 1.0));
    CHECK(ps.point(0)(1) == doctest::Approx(7.0 - 2.0 * M_PI));
  }
}

TEST_CASE("integration by parts identity") {
  Grid g(32);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorField u = oracles::random_vector_field(g, 8, rng, true);
    const double lhs = -inner_product(advect(u, u), u);
    const SpectralField usq =
        dealiased_product(u.u1(), u.u1()) + dealiased_product(u.u2(), u.u2());
    const double rhs = 0.5 * inner_product(divergence(u), usq);
    CHECK(oracles::rel_err(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("laplacian identity") {
  Grid g(32);
  std::mt19937_64 rng(23);
  const SpectralField phi = oracles::random_field(g, 10, rng, true);
  const SpectralField lhs = divergence(gradient(phi));
  const SpectralField rhs = -fractional_laplacian(phi, 2.0);
  CHECK((lhs.coeffs() - rhs.coeffs()).abs().maxCoeff() <
        1e-12 * std::max(1.0, phi.coeffs().abs().maxCoeff()));
}
