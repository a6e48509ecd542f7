#pragma once

#include <string>

#include <Eigen/Core>

#include "ks2d/calculus.hpp"
#include "ks2d/spectral.hpp"

namespace ks2d {

enum class ModelKind {
  kse,
  castrated_kse,
  restricted_kse,
  burgers_inviscid,
  burgers_hyper,
  burgers_sivashinsky,
  michelson_sivashinsky,
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Which PDE variant to evolve, together with its parameters.
struct ModelSpec {
  ModelKind kind = ModelKind::kse;
  double lambda = 0.0;  // instability parameter
  double gamma = 2.0;   // hyperdissipation order (burgers_hyper only)
  double c_star = 1.0;  // cutoff constants; c_star * n_star >= 1 keeps N >= 1
  double n_star = 1.0;
  double alpha = 0.0;   // low-mode monitor exponent, in [0, 2)

  /// True for the variants whose nonlinearity is filtered through a
  /// solution-dependent cutoff wavenumber.
  bool has_dynamic_cutoff() const noexcept {
    return kind == ModelKind::castrated_kse || kind == ModelKind::restricted_kse;
  }

  void validate() const;  // throws std::invalid_argument
};

/// Mode-wise growth rate sigma(l) of the linearized model.
double linear_symbol(const ModelSpec& spec, int l1, int l2);
Eigen::ArrayXXd linear_symbol_table(const ModelSpec& spec, const Grid& grid);

/// Advective tendency; the sign convention is that the value is *added* to
/// du/dt, i.e. advective_nonlinearity(u) = -(u. grad) u.
using Nonlinearity = VectorField;

/// (a . grad) b with dealiased products (no sign applied).
VectorField advect(const VectorField& a, const VectorField& b);

Nonlinearity advective_nonlinearity(const VectorField& u);

/// Tendency of the modification that culls the low x low -> low interaction:
/// -(u.grad)u + P_N((u_N.grad)u_N), with u_N = project_low(u, cutoff).
Nonlinearity castrated_nonlinearity(const VectorField& u, double cutoff);

/// Tendency keeping only the P_N-projected mixed interactions:
/// -P_N[(u_N.grad)u^N] - P_N[(u^N.grad)u]; supported on |l| <= cutoff.
Nonlinearity restricted_nonlinearity(const VectorField& u, double cutoff);

/// N_alpha(u) = [c_star (|u~|_{H^-alpha}^2 + n_star)]^{1/(2-alpha)}, with the
/// negative-order norm taken on the mean-free fluctuation (where H^-alpha is
/// the homogeneous norm).  Always >= 1 when c_star * n_star >= 1.
double cutoff_n_alpha(const VectorField& u, double alpha, double c_star,
                      double n_star);

/// N(u) = c_star (|u|_{L2} + n_star), L2 norm of the full field.
double cutoff_n_u(const VectorField& u, double c_star, double n_star);

/// Cutoff for the cascade-restricted model, N = c_star (|P_N u|_{L2} +
/// n_star).  The self-reference is closed by one fixed-point iteration from
/// N0 = cutoff_n_u(u); `residual` is the remaining fixed-point defect.
struct RestrictedCutoff {
  double value;
  double residual;
};
RestrictedCutoff restricted_cutoff(const VectorField& u, double c_star,
                                   double n_star);

/// The cutoff the model's own dynamics uses this step (1.0 for models
/// without a dynamic cutoff).
double model_cutoff(const ModelSpec& spec, const VectorField& u);

/// The model's nonlinear tendency, with any dynamic cutoff evaluated from u.
Nonlinearity nonlinearity(const ModelSpec& spec, const VectorField& u);

/// Full tendency du/dt = linear symbol applied mode-wise + nonlinearity.
VectorField rhs(const ModelSpec& spec, const VectorField& u);

/// Feasibility report for the castrated-model constant constraints
///   c0 / (c_star^2 n_star) <= 1/12
///   (c0 / c_star^2)(1 + c_star^-2 + c_star^-6 n_star^-2 + c_star^-10 n_star^-4)
///       <= (lambda v 1)^2 / 2
/// evaluated under an assumed value of the universal constant c0 (which is
/// not known numerically).  Advisory only; violating it does not stop a run.
struct CastrateConstraintReport {
  double assumed_c0 = 1.0;
  double smallness_lhs = 0.0;  // vs 1/12
  double lambda_lhs = 0.0;
  double lambda_rhs = 0.0;
  bool smallness_ok = false;
  bool lambda_ok = false;
  bool satisfied() const noexcept { return smallness_ok && lambda_ok; }
};
CastrateConstraintReport check_castrate_constraints(const ModelSpec& spec,
                                                    double assumed_c0 = 1.0);

}  // namespace ks2d
