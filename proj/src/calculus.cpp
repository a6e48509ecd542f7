#include "ks2d/calculus.hpp"

#include <cmath>
#include <sstream>

namespace ks2d {

namespace {

constexpr Complex kI(0.0, 1.0);

double wrap_2pi(double x) {
  const double two_pi = 2.0 * M_PI;
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

/// Apply a per-mode multiplier m(l1, l2) to the coefficients.
template <class Mult>
Eigen::ArrayXXcd apply_multiplier(const SpectralField& f, Mult&& m) {
  const Grid& g = f.grid();
  const int n = g.size();
  Eigen::ArrayXXcd c = f.coeffs();
  for (int b = 0; b < n; ++b) {
    const int l2 = g.mode(b);
    for (int a = 0; a < n; ++a) {
      c(a, b) *= m(g.mode(a), l2);
    }
  }
  return c;
}

}  // namespace

PointSet::PointSet(Eigen::Matrix2Xd positions)
    : positions_(std::move(positions)) {
  for (int i = 0; i < positions_.cols(); ++i) {
    positions_(0, i) = wrap_2pi(positions_(0, i));
    positions_(1, i) = wrap_2pi(positions_(1, i));
  }
}

NotCurlFreeError::NotCurlFreeError(double curl_max)
    : std::runtime_error([curl_max] {
        std::ostringstream os;
        os << "field is not curl-free: max |perp_curl| = " << curl_max;
        return os.str();
      }()),
      curl_max_(curl_max) {}

VectorField gradient(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField d1(g, apply_multiplier(f, [](int l1, int) { return kI * double(l1); }));
  SpectralField d2(g, apply_multiplier(f, [](int, int l2) { return kI * double(l2); }));
  return {std::move(d1), std::move(d2)};
}

SpectralField divergence(const VectorField& u) {
  const Grid& g = u.grid();
  Eigen::ArrayXXcd c =
      apply_multiplier(u.u1(), [](int l1, int) { return kI * double(l1); }) +
      apply_multiplier(u.u2(), [](int, int l2) { return kI * double(l2); });
  return {g, std::move(c)};
}

SpectralField perp_curl(const VectorField& u) {
  const Grid& g = u.grid();
  Eigen::ArrayXXcd c =
      apply_multiplier(u.u2(), [](int l1, int) { return kI * double(l1); }) -
      apply_multiplier(u.u1(), [](int, int l2) { return kI * double(l2); });
  return {g, std::move(c)};
}

VectorField curl_free_projection(const VectorField& u) {
  const Grid& g = u.grid();
  const int n = g.size();
  Eigen::ArrayXXcd p1(n, n), p2(n, n);
  const auto& c1 = u.u1().coeffs();
  const auto& c2 = u.u2().coeffs();
  for (int b = 0; b < n; ++b) {
    const int l2 = g.mode(b);
    for (int a = 0; a < n; ++a) {
      const int l1 = g.mode(a);
      if (l1 == 0 && l2 == 0) {
        // Constants are curl-free; the mean stays in this part.
        p1(a, b) = c1(a, b);
        p2(a, b) = c2(a, b);
        continue;
      }
      const Complex dot = double(l1) * c1(a, b) + double(l2) * c2(a, b);
      const double k2 = double(l1 * l1 + l2 * l2);
      p1(a, b) = double(l1) * dot / k2;
      p2(a, b) = double(l2) * dot / k2;
    }
  }
  return {SpectralField(g, std::move(p1)), SpectralField(g, std::move(p2))};
}

SpectralField potential_from_gradient(const VectorField& u) {
  const double curl_max = max_abs(perp_curl(u));
  if (curl_max > 1e-10) throw NotCurlFreeError(curl_max);
  const Eigen::Vector2d mean = u.mean();
  if (mean.cwiseAbs().maxCoeff() > 1e-10) {
    throw std::domain_error(
        "potential_from_gradient: input has nonzero mean (" +
        std::to_string(mean(0)) + ", " + std::to_string(mean(1)) + ")");
  }
  const Grid& g = u.grid();
  const int n = g.size();
  Eigen::ArrayXXcd phi(n, n);
  const auto& c1 = u.u1().coeffs();
  const auto& c2 = u.u2().coeffs();
  for (int b = 0; b < n; ++b) {
    const int l2 = g.mode(b);
    for (int a = 0; a < n; ++a) {
      const int l1 = g.mode(a);
      if (l1 == 0 && l2 == 0) {
        phi(a, b) = 0.0;
        continue;
      }
      const Complex dot = double(l1) * c1(a, b) + double(l2) * c2(a, b);
      phi(a, b) = -kI * dot / double(l1 * l1 + l2 * l2);
    }
  }
  return {g, std::move(phi)};
}

Eigen::VectorXd evaluate_at(const SpectralField& f, const PointSet& pts) {
  const Grid& g = f.grid();
  const int n = g.size();
  const int p = pts.size();
  if (p == 0) return Eigen::VectorXd(0);
  // value(x) = sum_{l} c_l e^{i l1 x1} e^{i l2 x2}, factored as E1 * C .* E2.
  Eigen::MatrixXcd e1(p, n), e2(p, n);
  for (int k = 0; k < n; ++k) {
    const double l1 = g.mode(k);
    const double l2 = l1;
    for (int i = 0; i < p; ++i) {
      e1(i, k) = std::exp(kI * (l1 * pts.positions()(0, i)));
      e2(i, k) = std::exp(kI * (l2 * pts.positions()(1, i)));
    }
  }
  const Eigen::MatrixXcd partial = e1 * f.coeffs().matrix();  // p x n
  return (partial.array() * e2.array()).rowwise().sum().real();
}

}  // namespace ks2d
