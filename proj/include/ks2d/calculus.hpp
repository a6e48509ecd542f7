#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "ks2d/spectral.hpp"

namespace ks2d {

/// Points on the torus; coordinates are reduced modulo 2pi on construction.
class PointSet {
 public:
  explicit PointSet(Eigen::Matrix2Xd positions);

  int size() const noexcept { return static_cast<int>(positions_.cols()); }
  const Eigen::Matrix2Xd& positions() const noexcept { return positions_; }
  Eigen::Vector2d point(int i) const { return positions_.col(i); }

 private:
  Eigen::Matrix2Xd positions_;
};

/// Raised when a reconstruction requires a curl-free field and the input is
/// not; carries the measured max-norm of the curl.
class NotCurlFreeError : public std::runtime_error {
 public:
  explicit NotCurlFreeError(double curl_max);
  double curl_max() const noexcept { return curl_max_; }

 private:
  double curl_max_;
};

VectorField gradient(const SpectralField& f);

/// d = div u = d1 u1 + d2 u2; mean-free by construction.
SpectralField divergence(const VectorField& u);
/// w = curl u = d1 u2 - d2 u1; mean-free by construction.
SpectralField perp_curl(const VectorField& u);

/// Curl-free (gradient) part of the Helmholtz decomposition, with the mean
/// assigned to it.  Idempotent; the complement u - result is divergence-free.
VectorField curl_free_projection(const VectorField& u);

/// Mean-free scalar potential with gradient(phi) = u.  Requires u mean-free
/// and curl-free (max |curl| <= 1e-10); throws NotCurlFreeError otherwise.
SpectralField potential_from_gradient(const VectorField& u);

/// Exact Fourier-series evaluation at arbitrary points.
Eigen::VectorXd evaluate_at(const SpectralField& f, const PointSet& pts);

}  // namespace ks2d
