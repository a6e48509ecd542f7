#include "ks2d/models.hpp"

#include <cmath>
#include <stdexcept>

namespace ks2d {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kse: return "kse";
    case ModelKind::castrated_kse: return "castrated_kse";
    case ModelKind::restricted_kse: return "restricted_kse";
    case ModelKind::burgers_inviscid: return "burgers_inviscid";
    case ModelKind::burgers_hyper: return "burgers_hyper";
    case ModelKind::burgers_sivashinsky: return "burgers_sivashinsky";
    case ModelKind::michelson_sivashinsky: return "michelson_sivashinsky";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
  for (ModelKind k :
       {ModelKind::kse, ModelKind::castrated_kse, ModelKind::restricted_kse,
        ModelKind::burgers_inviscid, ModelKind::burgers_hyper,
        ModelKind::burgers_sivashinsky, ModelKind::michelson_sivashinsky}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown model '" + name + "'");
}

void ModelSpec::validate() const {
  if (lambda < 0.0) {
    throw std::invalid_argument("ModelSpec: lambda must be nonnegative");
  }
  if (kind == ModelKind::burgers_hyper && !(gamma > 1.0)) {
    throw std::invalid_argument("ModelSpec: burgers_hyper requires gamma > 1");
  }
  if (!(alpha >= 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("ModelSpec: alpha must lie in [0, 2)");
  }
  if (!(c_star > 0.0) || !(n_star > 0.0)) {
    throw std::invalid_argument("ModelSpec: c_star and n_star must be positive");
  }
  if (c_star * n_star < 1.0) {
    throw std::invalid_argument(
        "ModelSpec: c_star * n_star >= 1 required so the cutoff stays >= 1");
  }
}

double linear_symbol(const ModelSpec& spec, int l1, int l2) {
  const double k2 = static_cast<double>(l1 * l1 + l2 * l2);
  switch (spec.kind) {
    case ModelKind::kse:
    case ModelKind::castrated_kse:
    case ModelKind::restricted_kse:
      return -k2 * k2 + spec.lambda * k2;
    case ModelKind::burgers_inviscid:
      return 0.0;
    case ModelKind::burgers_hyper:
      return k2 == 0.0 ? 0.0 : -std::pow(k2, spec.gamma);
    case ModelKind::burgers_sivashinsky:
      return -k2 + spec.lambda;
    case ModelKind::michelson_sivashinsky:
      return -k2 + spec.lambda * std::sqrt(k2);
  }
  return 0.0;
}

Eigen::ArrayXXd linear_symbol_table(const ModelSpec& spec, const Grid& grid) {
  const int n = grid.size();
  Eigen::ArrayXXd sig(n, n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      sig(a, b) = linear_symbol(spec, grid.mode(a), grid.mode(b));
    }
  }
  return sig;
}

VectorField advect(const VectorField& a, const VectorField& b) {
  if (a.grid() != b.grid()) {
    throw std::invalid_argument("advect: grids differ");
  }
  const Grid& g = a.grid();
  const int m = detail::padded_size(g.size());
  // One padded transform per ingredient, products formed pointwise.
  const Eigen::ArrayXXd a1 = detail::padded_physical(a.u1(), m);
  const Eigen::ArrayXXd a2 = detail::padded_physical(a.u2(), m);
  const VectorField g1 = gradient(b.u1());
  const VectorField g2 = gradient(b.u2());
  const Eigen::ArrayXXd d1b1 = detail::padded_physical(g1.u1(), m);
  const Eigen::ArrayXXd d2b1 = detail::padded_physical(g1.u2(), m);
  const Eigen::ArrayXXd d1b2 = detail::padded_physical(g2.u1(), m);
  const Eigen::ArrayXXd d2b2 = detail::padded_physical(g2.u2(), m);
  return {detail::from_padded_physical(g, a1 * d1b1 + a2 * d2b1),
          detail::from_padded_physical(g, a1 * d1b2 + a2 * d2b2)};
}

Nonlinearity advective_nonlinearity(const VectorField& u) {
  return -advect(u, u);
}

Nonlinearity castrated_nonlinearity(const VectorField& u, double cutoff) {
  if (!(cutoff >= 1.0)) {
    throw std::invalid_argument("castrated_nonlinearity: cutoff must be >= 1");
  }
  const VectorField low = project_low(u, cutoff);
  return -advect(u, u) + project_low(advect(low, low), cutoff);
}

Nonlinearity restricted_nonlinearity(const VectorField& u, double cutoff) {
  if (!(cutoff >= 1.0)) {
    throw std::invalid_argument("restricted_nonlinearity: cutoff must be >= 1");
  }
  const VectorField low = project_low(u, cutoff);
  // (u_N.grad)u^N + (u^N.grad)u = (u.grad)u - (u_N.grad)u_N
  return project_low(advect(low, low) - advect(u, u), cutoff);
}

double cutoff_n_alpha(const VectorField& u, double alpha, double c_star,
                      double n_star) {
  if (!(alpha >= 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("cutoff_n_alpha: alpha must lie in [0, 2)");
  }
  if (c_star * n_star < 1.0) {
    throw std::invalid_argument("cutoff_n_alpha: c_star * n_star must be >= 1");
  }
  const double norm =
      sobolev_norm(u.fluctuation(), -alpha, Homogeneity::homogeneous);
  return std::pow(c_star * (norm * norm + n_star), 1.0 / (2.0 - alpha));
}

double cutoff_n_u(const VectorField& u, double c_star, double n_star) {
  if (c_star * n_star < 1.0) {
    throw std::invalid_argument("cutoff_n_u: c_star * n_star must be >= 1");
  }
  return c_star * (l2_norm(u) + n_star);
}

RestrictedCutoff restricted_cutoff(const VectorField& u, double c_star,
                                   double n_star) {
  const double n0 = cutoff_n_u(u, c_star, n_star);
  const double n1 = c_star * (l2_norm(project_low(u, n0)) + n_star);
  const double again = c_star * (l2_norm(project_low(u, n1)) + n_star);
  return {n1, std::abs(again - n1)};
}

double model_cutoff(const ModelSpec& spec, const VectorField& u) {
  switch (spec.kind) {
    case ModelKind::castrated_kse:
      return cutoff_n_u(u, spec.c_star, spec.n_star);
    case ModelKind::restricted_kse:
      return restricted_cutoff(u, spec.c_star, spec.n_star).value;
    default:
      return 1.0;
  }
}

Nonlinearity nonlinearity(const ModelSpec& spec, const VectorField& u) {
  switch (spec.kind) {
    case ModelKind::castrated_kse:
      return castrated_nonlinearity(u, model_cutoff(spec, u));
    case ModelKind::restricted_kse:
      return restricted_nonlinearity(u, model_cutoff(spec, u));
    default:
      return advective_nonlinearity(u);
  }
}

VectorField rhs(const ModelSpec& spec, const VectorField& u) {
  const Grid& g = u.grid();
  const Eigen::ArrayXXd sig = linear_symbol_table(spec, g);
  const Nonlinearity nl = nonlinearity(spec, u);
  SpectralField r1(g, sig * u.u1().coeffs() + nl.u1().coeffs());
  SpectralField r2(g, sig * u.u2().coeffs() + nl.u2().coeffs());
  return {std::move(r1), std::move(r2)};
}

CastrateConstraintReport check_castrate_constraints(const ModelSpec& spec,
                                                    double assumed_c0) {
  CastrateConstraintReport r;
  r.assumed_c0 = assumed_c0;
  const double c2 = spec.c_star * spec.c_star;
  const double c4 = c2 * c2;
  const double n2 = spec.n_star * spec.n_star;
  r.smallness_lhs = assumed_c0 / (c2 * spec.n_star);
  r.smallness_ok = r.smallness_lhs <= 1.0 / 12.0;
  const double lam1 = std::max(spec.lambda, 1.0);
  r.lambda_lhs = (assumed_c0 / c2) *
                 (1.0 + 1.0 / c2 + 1.0 / (c4 * c2 * n2) + 1.0 / (c4 * c4 * c2 * n2 * n2));
  r.lambda_rhs = 0.5 * lam1 * lam1;
  r.lambda_ok = r.lambda_lhs <= r.lambda_rhs;
  return r;
}

}  // namespace ks2d
