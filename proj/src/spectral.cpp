#include "ks2d/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

namespace ks2d {

namespace {

constexpr double kTwoPiSq = 4.0 * M_PI * M_PI;  // (2pi)^2 = |Omega|

Eigen::FFT<double>& tls_fft() {
  // One plan cache per thread; transforms never share mutable state.
  thread_local Eigen::FFT<double> fft;
  return fft;
}

void fft_columns(Eigen::ArrayXXcd& a) {
  auto& fft = tls_fft();
  const int m = static_cast<int>(a.rows());
  Eigen::VectorXcd in(m), out(m);
  for (int c = 0; c < a.cols(); ++c) {
    in = a.col(c).matrix();
    fft.fwd(out, in);
    a.col(c) = out.array();
  }
}

void fft_rows(Eigen::ArrayXXcd& a) {
  auto& fft = tls_fft();
  const int m = static_cast<int>(a.cols());
  Eigen::VectorXcd in(m), out(m);
  for (int r = 0; r < a.rows(); ++r) {
    in = a.row(r).matrix().transpose();
    fft.fwd(out, in);
    a.row(r) = out.array().transpose();
  }
}

/// Weighted Plancherel sum (2pi)^2 sum w(|l|^2) |c_l|^2 over l != 0.
template <class Weight>
double mode_sum(const SpectralField& f, Weight&& w) {
  const Grid& g = f.grid();
  const int n = g.size();
  const auto& c = f.coeffs();
  double s = 0.0;
  for (int b = 0; b < n; ++b) {
    const int l2 = g.mode(b);
    for (int a = 0; a < n; ++a) {
      const int l1 = g.mode(a);
      if (l1 == 0 && l2 == 0) continue;
      s += w(static_cast<double>(l1 * l1 + l2 * l2)) * std::norm(c(a, b));
    }
  }
  return kTwoPiSq * s;
}

}  // namespace

namespace detail {

int padded_size(int n) {
  int m = (3 * n) / 2;
  if (m % 2 != 0) ++m;
  return m;
}

void fft2(Eigen::ArrayXXcd& a, bool inverse) {
  if (inverse) a = a.conjugate();
  fft_columns(a);
  fft_rows(a);
  if (inverse) a = a.conjugate();
}

Eigen::ArrayXXcd embed(const Eigen::ArrayXXcd& c, int m) {
  const int n = static_cast<int>(c.rows());
  const int pos = n / 2;      // indices 0 .. n/2-1
  const int neg = n / 2 - 1;  // indices n/2+1 .. n-1
  Eigen::ArrayXXcd out = Eigen::ArrayXXcd::Zero(m, m);
  out.block(0, 0, pos, pos) = c.block(0, 0, pos, pos);
  out.block(0, m - neg, pos, neg) = c.block(0, pos + 1, pos, neg);
  out.block(m - neg, 0, neg, pos) = c.block(pos + 1, 0, neg, pos);
  out.block(m - neg, m - neg, neg, neg) = c.block(pos + 1, pos + 1, neg, neg);
  return out;
}

Eigen::ArrayXXcd restrict_to(const Eigen::ArrayXXcd& c, int n) {
  const int m = static_cast<int>(c.rows());
  const int pos = n / 2;
  const int neg = n / 2 - 1;
  Eigen::ArrayXXcd out = Eigen::ArrayXXcd::Zero(n, n);
  out.block(0, 0, pos, pos) = c.block(0, 0, pos, pos);
  out.block(0, pos + 1, pos, neg) = c.block(0, m - neg, pos, neg);
  out.block(pos + 1, 0, neg, pos) = c.block(m - neg, 0, neg, pos);
  out.block(pos + 1, pos + 1, neg, neg) = c.block(m - neg, m - neg, neg, neg);
  return out;
}

Eigen::ArrayXXd padded_physical(const SpectralField& f, int m) {
  Eigen::ArrayXXcd w = embed(f.coeffs(), m);
  fft2(w, /*inverse=*/true);
  return w.real();
}

SpectralField from_padded_physical(const Grid& grid,
                                   const Eigen::ArrayXXd& values) {
  const int m = static_cast<int>(values.rows());
  Eigen::ArrayXXcd w = values.cast<Complex>();
  fft2(w, /*inverse=*/false);
  w /= static_cast<double>(m) * static_cast<double>(m);
  return {grid, restrict_to(w, grid.size())};
}

}  // namespace detail

// ---- SpectralField ---------------------------------------------------------

SpectralField::SpectralField(Grid grid, Eigen::ArrayXXcd coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  const int n = grid_.size();
  if (coeffs_.rows() != n || coeffs_.cols() != n) {
    throw std::invalid_argument("SpectralField: coefficient array is " +
                                std::to_string(coeffs_.rows()) + "x" +
                                std::to_string(coeffs_.cols()) +
                                ", expected " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
  const int ny = n / 2;
  coeffs_.row(ny).setZero();
  coeffs_.col(ny).setZero();
  coeffs_(0, 0) = Complex(coeffs_(0, 0).real(), 0.0);
  // Exact conjugate symmetrization; a no-op on already-Hermitian data.
  for (int b = 0; b < n; ++b) {
    const int bm = (n - b) % n;
    for (int a = 0; a < n; ++a) {
      const int am = (n - a) % n;
      if (std::make_pair(a, b) < std::make_pair(am, bm)) {
        const Complex avg = 0.5 * (coeffs_(a, b) + std::conj(coeffs_(am, bm)));
        coeffs_(a, b) = avg;
        coeffs_(am, bm) = std::conj(avg);
      }
    }
  }
}

SpectralField SpectralField::zero(const Grid& grid) {
  return {grid, Eigen::ArrayXXcd::Zero(grid.size(), grid.size())};
}

SpectralField SpectralField::from_physical(const Grid& grid,
                                           const Eigen::ArrayXXd& samples) {
  const int n = grid.size();
  if (samples.rows() != n || samples.cols() != n) {
    throw std::invalid_argument("from_physical: sample array is " +
                                std::to_string(samples.rows()) + "x" +
                                std::to_string(samples.cols()) +
                                ", expected " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
  Eigen::ArrayXXcd c = samples.cast<Complex>();
  detail::fft2(c, /*inverse=*/false);
  c /= static_cast<double>(n) * static_cast<double>(n);
  return {grid, std::move(c)};
}

SpectralField SpectralField::from_modes(
    const Grid& grid, const std::vector<std::tuple<int, int, Complex>>& modes) {
  const int n = grid.size();
  Eigen::ArrayXXcd c = Eigen::ArrayXXcd::Zero(n, n);
  for (const auto& [l1, l2, amp] : modes) {
    if (!grid.resolved(l1, l2)) {
      throw std::invalid_argument("from_modes: mode (" + std::to_string(l1) +
                                  "," + std::to_string(l2) +
                                  ") not resolved on n=" + std::to_string(n));
    }
    c(grid.index(l1), grid.index(l2)) = amp;
  }
  // Mirror unlisted conjugates.
  for (const auto& [l1, l2, amp] : modes) {
    const int am = grid.index(-l1);
    const int bm = grid.index(-l2);
    if (c(am, bm) == Complex(0.0, 0.0) && !(l1 == 0 && l2 == 0)) {
      c(am, bm) = std::conj(amp);
    }
  }
  return {grid, std::move(c)};
}

Complex SpectralField::coeff(int l1, int l2) const {
  if (!grid_.resolved(l1, l2)) {
    throw std::out_of_range("coeff: mode (" + std::to_string(l1) + "," +
                            std::to_string(l2) + ") not resolved");
  }
  return coeffs_(grid_.index(l1), grid_.index(l2));
}

Eigen::ArrayXXd SpectralField::to_physical() const {
  Eigen::ArrayXXcd w = coeffs_;
  detail::fft2(w, /*inverse=*/true);
  return w.real();
}

// ---- VectorField -----------------------------------------------------------

VectorField::VectorField(SpectralField u1, SpectralField u2)
    : u1_(std::move(u1)), u2_(std::move(u2)) {
  if (u1_.grid() != u2_.grid()) {
    throw std::invalid_argument("VectorField: component grids differ");
  }
}

VectorField VectorField::zero(const Grid& grid) {
  return {SpectralField::zero(grid), SpectralField::zero(grid)};
}

VectorField VectorField::fluctuation() const {
  Eigen::ArrayXXcd c1 = u1_.coeffs();
  Eigen::ArrayXXcd c2 = u2_.coeffs();
  c1(0, 0) = 0.0;
  c2(0, 0) = 0.0;
  return {SpectralField(grid(), std::move(c1)),
          SpectralField(grid(), std::move(c2))};
}

// ---- transforms ------------------------------------------------------------

SpectralField to_spectral(const Grid& grid, const Eigen::ArrayXXd& samples) {
  return SpectralField::from_physical(grid, samples);
}

Eigen::ArrayXXd to_physical(const SpectralField& f) { return f.to_physical(); }

Eigen::ArrayXXd physical_on_refined(const SpectralField& f, int factor) {
  if (factor < 1) {
    throw std::invalid_argument("physical_on_refined: factor must be >= 1");
  }
  if (factor == 1) return f.to_physical();
  const int m = factor * f.grid().size();
  Eigen::ArrayXXcd w = detail::embed(f.coeffs(), m);
  detail::fft2(w, /*inverse=*/true);
  return w.real();
}

// ---- spectral operators ----------------------------------------------------

bool is_mean_free(const SpectralField& f) {
  const double scale = std::max(1.0, f.coeffs().abs().maxCoeff());
  return std::abs(f.coeffs()(0, 0)) <= 1e-12 * scale;
}

SpectralField fractional_laplacian(const SpectralField& f, double kappa) {
  const Grid& g = f.grid();
  const int n = g.size();
  if (kappa < 0.0 && !is_mean_free(f)) {
    throw std::domain_error(
        "fractional_laplacian: negative order " + std::to_string(kappa) +
        " undefined on a field with nonzero mean " +
        std::to_string(f.mean()));
  }
  Eigen::ArrayXXcd c = f.coeffs();
  for (int b = 0; b < n; ++b) {
    const int l2 = g.mode(b);
    for (int a = 0; a < n; ++a) {
      const int l1 = g.mode(a);
      if (l1 == 0 && l2 == 0) {
        if (kappa != 0.0) c(a, b) = 0.0;
        continue;
      }
      c(a, b) *= std::pow(static_cast<double>(l1 * l1 + l2 * l2), 0.5 * kappa);
    }
  }
  return {g, std::move(c)};
}

SpectralField project_low(const SpectralField& f, double cutoff) {
  if (!(cutoff > 0.0)) {
    throw std::invalid_argument("project_low: cutoff must be positive");
  }
  const Grid& g = f.grid();
  const int n = g.size();
  const double c2 = cutoff * cutoff;
  Eigen::ArrayXXcd c = f.coeffs();
  for (int b = 0; b < n; ++b) {
    const int l2 = g.mode(b);
    for (int a = 0; a < n; ++a) {
      const int l1 = g.mode(a);
      if (static_cast<double>(l1 * l1 + l2 * l2) > c2) c(a, b) = 0.0;
    }
  }
  return {g, std::move(c)};
}

SpectralField project_high(const SpectralField& f, double cutoff) {
  return f - project_low(f, cutoff);
}

VectorField project_low(const VectorField& u, double cutoff) {
  return {project_low(u.u1(), cutoff), project_low(u.u2(), cutoff)};
}

VectorField project_high(const VectorField& u, double cutoff) {
  return {project_high(u.u1(), cutoff), project_high(u.u2(), cutoff)};
}

SpectralField dealiased_product(const SpectralField& a,
                                const SpectralField& b) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("dealiased_product: grids differ");
  }
  const int n = a.grid().size();
  const int m = detail::padded_size(n);
  Eigen::ArrayXXcd wa = detail::embed(a.coeffs(), m);
  Eigen::ArrayXXcd wb = detail::embed(b.coeffs(), m);
  detail::fft2(wa, /*inverse=*/true);
  detail::fft2(wb, /*inverse=*/true);
  Eigen::ArrayXXcd prod =
      (wa.real() * wb.real()).cast<Complex>();
  detail::fft2(prod, /*inverse=*/false);
  prod /= static_cast<double>(m) * static_cast<double>(m);
  return {a.grid(), detail::restrict_to(prod, n)};
}

// ---- norms -----------------------------------------------------------------

double sobolev_norm(const SpectralField& f, double kappa, Homogeneity hom) {
  const double homog2 =
      mode_sum(f, [kappa](double k2) { return std::pow(k2, kappa); });
  if (hom == Homogeneity::homogeneous) return std::sqrt(homog2);
  const double l2sq = mode_sum(f, [](double) { return 1.0; }) +
                      kTwoPiSq * std::norm(f.coeffs()(0, 0));
  return std::sqrt(l2sq + homog2);
}

double sobolev_norm(const VectorField& u, double kappa, Homogeneity hom) {
  const double a = sobolev_norm(u.u1(), kappa, hom);
  const double b = sobolev_norm(u.u2(), kappa, hom);
  return std::sqrt(a * a + b * b);
}

double l2_norm(const SpectralField& f) {
  return std::sqrt(kTwoPiSq * f.coeffs().abs2().sum());
}

double l2_norm(const VectorField& u) {
  return std::sqrt(kTwoPiSq *
                   (u.u1().coeffs().abs2().sum() + u.u2().coeffs().abs2().sum()));
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("inner_product: grids differ");
  }
  return kTwoPiSq * (a.coeffs() * b.coeffs().conjugate()).sum().real();
}

double inner_product(const VectorField& a, const VectorField& b) {
  return inner_product(a.u1(), b.u1()) + inner_product(a.u2(), b.u2());
}

double max_abs(const SpectralField& f) {
  return f.to_physical().abs().maxCoeff();
}

// ---- arithmetic ------------------------------------------------------------

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("operator+: grids differ");
  return {a.grid(), a.coeffs() + b.coeffs()};
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("operator-: grids differ");
  return {a.grid(), a.coeffs() - b.coeffs()};
}

SpectralField operator-(const SpectralField& a) {
  return {a.grid(), -a.coeffs()};
}

SpectralField operator*(double s, const SpectralField& a) {
  return {a.grid(), s * a.coeffs()};
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.u1() + b.u1(), a.u2() + b.u2()};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return {a.u1() - b.u1(), a.u2() - b.u2()};
}

VectorField operator-(const VectorField& a) { return {-a.u1(), -a.u2()}; }

VectorField operator*(double s, const VectorField& a) {
  return {s * a.u1(), s * a.u2()};
}

}  // namespace ks2d
