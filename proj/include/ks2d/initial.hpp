#pragma once

#include "ks2d/config.hpp"
#include "ks2d/spectral.hpp"

namespace ks2d {

/// Construct the initial velocity field.  Every supported spec yields an
/// exactly curl-free field:
///   - "zero": the zero field
///   - "grad_sin_sin": amplitude * grad(sin x1 sin x2)
///   - "random": gradient of a random mean-free scalar potential with
///     standard-normal coefficient draws on 1 <= |l| <= k_max, rescaled so
///     the resulting field has L2 norm `amplitude`; fully determined by the
///     seed
/// plus the configured constant mean shift.
VectorField build_initial(const InitSpec& init, const Grid& grid);

}  // namespace ks2d
