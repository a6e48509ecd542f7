#pragma once

#include <cmath>
#include <stdexcept>

namespace ks2d {

/// Uniform collocation grid on the periodic box [0,2pi)^2.
///
/// n points per axis, spacing 2pi/n.  The resolved spectral modes are the
/// integer wavevectors l = (l1,l2) with |l_i| <= n/2 - 1; the Nyquist
/// row/column is kept identically zero so that derivative multipliers stay
/// conjugate-symmetric.
class Grid {
 public:
  explicit Grid(int n) : n_(n) {
    if (n < 8 || n % 2 != 0) {
      throw std::invalid_argument("Grid: n must be even and >= 8, got n=" +
                                  std::to_string(n));
    }
  }

  int size() const noexcept { return n_; }
  double spacing() const noexcept { return 2.0 * M_PI / n_; }

  /// Largest resolved wavenumber per axis (n/2 - 1).
  int max_mode() const noexcept { return n_ / 2 - 1; }

  /// Signed wavenumber for an FFT-layout index in [0, n).
  int mode(int index) const noexcept {
    return index < n_ / 2 ? index : index - n_;
  }

  /// FFT-layout index for a signed wavenumber (assumes |m| <= n/2).
  int index(int m) const noexcept { return m >= 0 ? m : m + n_; }

  bool resolved(int l1, int l2) const noexcept {
    const int k = max_mode();
    return l1 >= -k && l1 <= k && l2 >= -k && l2 <= k;
  }

  /// Collocation coordinate of sample i along either axis.
  double coordinate(int i) const noexcept { return spacing() * i; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_ == b.n_;
  }
  friend bool operator!=(const Grid& a, const Grid& b) noexcept {
    return !(a == b);
  }

 private:
  int n_;
};

}  // namespace ks2d
