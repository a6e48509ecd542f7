#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "ks2d/models.hpp"

namespace ks2d {

enum class Scheme { imex_euler, rk4 };

std::string to_string(Scheme s);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initial condition: a named analytic field, or a random curl-free draw
/// (gradient of a Gaussian scalar potential supported on 1 <= |l| <= k_max,
/// rescaled to the requested L2 amplitude).  A constant mean shift may be
/// added to either; constants are curl-free.
struct InitSpec {
  std::string name = "random";  // "random", "zero", "grad_sin_sin"
  double amplitude = 1.0;
  int k_max = 4;
  std::uint64_t seed = 1;
  Eigen::Vector2d mean_shift = Eigen::Vector2d::Zero();
};

struct RunConfig {
  ModelSpec model;
  int n = 64;
  double h = 1e-3;
  double t_end = 1.0;
  int diag_every = 10;   // steps between diagnostics samples
  int snap_every = 1000; // steps between snapshots
  Scheme scheme = Scheme::imex_euler;
  InitSpec init;
  std::string out_dir;
  int refine = 2;            // supremum sampling refinement factor
  double theorem_c0 = 1.0;   // assumed universal constant in the castrate check

  void validate() const;           // throws ConfigError
  long total_steps() const;        // steps from t=0; checks divisibility
  long steps_between(double t0) const;  // steps from t0 to t_end
};

/// Parse the flat key = value format.  Unknown keys, duplicate keys and
/// malformed lines are rejected with the offending line number; missing
/// optional keys take documented defaults.
RunConfig parse_config(std::istream& in, const std::string& filename);
RunConfig load_config(const std::string& path);

}  // namespace ks2d
