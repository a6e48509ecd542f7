#include "ks2d/initial.hpp"

#include <cmath>
#include <random>

#include "ks2d/calculus.hpp"

namespace ks2d {

namespace {

SpectralField random_potential(const Grid& grid, int k_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::tuple<int, int, Complex>> modes;
  // Canonical half-plane ordering keeps the draw sequence seed-determined.
  for (int l1 = 0; l1 <= k_max; ++l1) {
    const int l2_begin = l1 == 0 ? 1 : -k_max;
    for (int l2 = l2_begin; l2 <= k_max; ++l2) {
      if (l1 * l1 + l2 * l2 > k_max * k_max) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      modes.emplace_back(l1, l2, Complex(re, im));
    }
  }
  return SpectralField::from_modes(grid, modes);
}

VectorField with_mean_shift(VectorField u, const Eigen::Vector2d& shift) {
  if (shift.isZero(0.0)) return u;
  const Grid& g = u.grid();
  Eigen::ArrayXXcd c1 = u.u1().coeffs();
  Eigen::ArrayXXcd c2 = u.u2().coeffs();
  c1(0, 0) += shift(0);
  c2(0, 0) += shift(1);
  return {SpectralField(g, std::move(c1)), SpectralField(g, std::move(c2))};
}

}  // namespace

VectorField build_initial(const InitSpec& init, const Grid& grid) {
  if (init.name == "zero") {
    return with_mean_shift(VectorField::zero(grid), init.mean_shift);
  }
  if (init.name == "grad_sin_sin") {
    const SpectralField phi = field_from(grid, [&](double x1, double x2) {
      return init.amplitude * std::sin(x1) * std::sin(x2);
    });
    return with_mean_shift(gradient(phi), init.mean_shift);
  }
  if (init.name == "random") {
    if (init.k_max < 1 || init.k_max >= grid.size() / 2) {
      throw ConfigError("build_initial: k_max must satisfy 1 <= k_max < n/2");
    }
    const SpectralField phi = random_potential(grid, init.k_max, init.seed);
    VectorField u = gradient(phi);
    const double norm = l2_norm(u);
    if (norm > 0.0) u = (init.amplitude / norm) * u;
    return with_mean_shift(std::move(u), init.mean_shift);
  }
  throw ConfigError("build_initial: unknown initial condition '" + init.name +
                    "'");
}

}  // namespace ks2d
