#pragma once

#include <complex>
#include <tuple>
#include <vector>

#include <Eigen/Core>

#include "ks2d/grid.hpp"

namespace ks2d {

using Complex = std::complex<double>;

enum class Homogeneity { homogeneous, inhomogeneous };

/// Real scalar field on the torus, stored as its Fourier coefficients.
///
/// Coefficients follow the convention c_l = (2pi)^-2 \int f e^{-i l.x} dx and
/// are kept in FFT layout (index k maps to wavenumber k for k < n/2, k - n
/// otherwise).  Construction enforces the two representation invariants:
/// Nyquist modes are zero and c_{-l} = conj(c_l).  Fields are immutable after
/// construction; all operations are free functions returning new values.
class SpectralField {
 public:
  SpectralField(Grid grid, Eigen::ArrayXXcd coeffs);

  static SpectralField zero(const Grid& grid);
  static SpectralField from_physical(const Grid& grid,
                                     const Eigen::ArrayXXd& samples);
  /// Build from explicit modes (l1, l2, amplitude).  Each listed coefficient
  /// is set as given; the mirror coefficient at -l is set to the conjugate
  /// unless -l is itself listed.
  static SpectralField from_modes(
      const Grid& grid,
      const std::vector<std::tuple<int, int, Complex>>& modes);

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::ArrayXXcd& coeffs() const noexcept { return coeffs_; }

  /// Coefficient at signed wavevector (l1, l2); the mode must be resolved.
  Complex coeff(int l1, int l2) const;

  /// The l = 0 coefficient (the spatial mean).
  double mean() const noexcept { return coeffs_(0, 0).real(); }

  Eigen::ArrayXXd to_physical() const;

 private:
  Grid grid_;
  Eigen::ArrayXXcd coeffs_;
};

/// Two-component real vector field; components share one grid.
class VectorField {
 public:
  VectorField(SpectralField u1, SpectralField u2);

  static VectorField zero(const Grid& grid);

  const Grid& grid() const noexcept { return u1_.grid(); }
  const SpectralField& u1() const noexcept { return u1_; }
  const SpectralField& u2() const noexcept { return u2_; }

  Eigen::Vector2d mean() const noexcept {
    return {u1_.mean(), u2_.mean()};
  }
  /// Field with the mean removed from both components.
  VectorField fluctuation() const;

 private:
  SpectralField u1_, u2_;
};

// ---- transforms ----------------------------------------------------------

SpectralField to_spectral(const Grid& grid, const Eigen::ArrayXXd& samples);
Eigen::ArrayXXd to_physical(const SpectralField& f);

/// Physical samples on a grid refined by an integer factor (zero-padded
/// spectral interpolation; exact for band-limited fields).
Eigen::ArrayXXd physical_on_refined(const SpectralField& f, int factor);

/// Sample a callable f(x1, x2) on the collocation grid.
template <class F>
Eigen::ArrayXXd sample_on_grid(const Grid& grid, F&& f) {
  const int n = grid.size();
  Eigen::ArrayXXd v(n, n);
  for (int j = 0; j < n; ++j) {
    const double x2 = grid.coordinate(j);
    for (int i = 0; i < n; ++i) {
      v(i, j) = f(grid.coordinate(i), x2);
    }
  }
  return v;
}

template <class F>
SpectralField field_from(const Grid& grid, F&& f) {
  return SpectralField::from_physical(grid, sample_on_grid(grid, f));
}

// ---- spectral operators --------------------------------------------------

/// |l|^kappa Fourier multiplier.  The mean passes through for kappa = 0 and
/// is zeroed for kappa > 0; negative orders require a mean-free input and
/// throw std::domain_error otherwise.
SpectralField fractional_laplacian(const SpectralField& f, double kappa);

/// Projection onto the Euclidean mode ball |l| <= cutoff (mean included).
SpectralField project_low(const SpectralField& f, double cutoff);
/// Complement f - project_low(f, cutoff); mean-free, since the mean mode
/// always lies in the low part.
SpectralField project_high(const SpectralField& f, double cutoff);
VectorField project_low(const VectorField& u, double cutoff);
VectorField project_high(const VectorField& u, double cutoff);

/// Exact spectral coefficients of the pointwise product a*b, computed on a
/// zero-padded transform pair so retained modes carry no aliasing error.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

// ---- norms and inner products --------------------------------------------

/// Sobolev norm of order kappa.  Homogeneous: ((2pi)^2 sum_{l!=0}
/// |l|^{2 kappa} |c_l|^2)^{1/2}; inhomogeneous adds the full L2 norm in
/// quadrature.
double sobolev_norm(const SpectralField& f, double kappa, Homogeneity hom);
double sobolev_norm(const VectorField& u, double kappa, Homogeneity hom);

double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& u);

/// L2 pairing <a, b> = \int a b dx via the Plancherel sum.
double inner_product(const SpectralField& a, const SpectralField& b);
double inner_product(const VectorField& a, const VectorField& b);

bool is_mean_free(const SpectralField& f);

/// Max |f| over the collocation grid.
double max_abs(const SpectralField& f);

// ---- arithmetic -----------------------------------------------------------

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a);
SpectralField operator*(double s, const SpectralField& a);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a);
VectorField operator*(double s, const VectorField& a);

namespace detail {
/// Padded transform size used for dealiased quadratic products (smallest
/// even M >= 3n/2).
int padded_size(int n);
/// Embed FFT-layout coefficients of size n into a zero-padded array of size
/// m >= n (Nyquist of the source assumed zero).
Eigen::ArrayXXcd embed(const Eigen::ArrayXXcd& c, int m);
/// Inverse of embed: restrict size-m coefficients to the modes resolved at n.
Eigen::ArrayXXcd restrict_to(const Eigen::ArrayXXcd& c, int n);
/// In-place unnormalized 2-D DFT (sum with e^{-i l.x}); inverse uses e^{+i}.
void fft2(Eigen::ArrayXXcd& a, bool inverse);
/// Physical samples of f on the size-m padded grid (m >= grid size).
Eigen::ArrayXXd padded_physical(const SpectralField& f, int m);
/// Transform size-m physical samples back to the resolved modes of `grid`.
SpectralField from_padded_physical(const Grid& grid,
                                   const Eigen::ArrayXXd& values);
}  // namespace detail

}  // namespace ks2d
