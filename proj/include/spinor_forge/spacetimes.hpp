#pragma once

#include <string>
#include <vector>

#include "spinor_forge/geometry.hpp"

namespace spinor_forge {

class UnknownNameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cartesian Minkowski space, sampling box [-5, 5]^4.
Spacetime minkowski();
/// Schwarzschild exterior in (t, r, theta, phi); box r in [4M, 50M],
/// theta in [0.3, pi - 0.3].
Spacetime schwarzschild(double mass);
/// Flat dust cosmology a(t) = t^(2/3) in comoving Cartesian coordinates;
/// box t in [0.5, 5].
Spacetime einstein_de_sitter();

/// Identity tetrad.
Tetrad inertial_tetrad();
/// diag(sqrt(f), 1/sqrt(f), r, r sin(theta)), f = 1 - 2M/r.
Tetrad static_tetrad(double mass);
/// diag(1, a, a, a).
Tetrad comoving_tetrad();

/// Observer field of each built-in default tetrad: its e_0 in coordinates.
VectorField frame_time_vector(const Tetrad& t);

struct BuiltinSpec {
  std::string spacetime;
  std::string tetrad;
  double mass = 1.0;
};

Spacetime builtin_spacetime(const std::string& name, double mass);
/// Resolves "default" to the spacetime's default tetrad.
Tetrad builtin_tetrad(const std::string& spacetime, const std::string& tetrad, double mass);
std::string default_tetrad_name(const std::string& spacetime);
std::vector<std::string> builtin_spacetime_names();

}  // namespace spinor_forge
