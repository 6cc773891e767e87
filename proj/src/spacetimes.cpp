#include "spinor_forge/spacetimes.hpp"

#include <cmath>
#include <numbers>

namespace spinor_forge {

namespace {

Christoffel zero_christoffel() {
  Christoffel g;
  for (auto& m : g) m.setZero();
  return g;
}

double scale_factor(double t) { return std::cbrt(t * t); }

}  // namespace

Spacetime minkowski() {
  return Spacetime(
      "minkowski", [](const Point&) -> Mat4 { return eta(); }, nullptr,
      Box{{-5, -5, -5, -5}, {5, 5, 5, 5}}, [](const Point&) { return zero_christoffel(); });
}

Spacetime schwarzschild(double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("Schwarzschild mass must be positive");
  const double m = mass;
  auto metric = [m](const Point& x) -> Mat4 {
    const double r = x[1];
    const double f = 1.0 - 2.0 * m / r;
    const double s = std::sin(x[2]);
    return Vec4(f, -1.0 / f, -r * r, -r * r * s * s).asDiagonal();
  };
  auto domain = [m](const Point& x) {
    return x[1] > 2.0 * m && x[2] > 0.0 && x[2] < std::numbers::pi;
  };
  auto gamma = [m](const Point& x) {
    const double r = x[1];
    const double th = x[2];
    const double f = 1.0 - 2.0 * m / r;
    const double s = std::sin(th);
    const double c = std::cos(th);
    Christoffel g = zero_christoffel();
    g[0](0, 1) = g[0](1, 0) = m / (r * r * f);
    g[1](0, 0) = m * f / (r * r);
    g[1](1, 1) = -m / (r * r * f);
    g[1](2, 2) = -r * f;
    g[1](3, 3) = -r * f * s * s;
    g[2](1, 2) = g[2](2, 1) = 1.0 / r;
    g[2](3, 3) = -s * c;
    g[3](1, 3) = g[3](3, 1) = 1.0 / r;
    g[3](2, 3) = g[3](3, 2) = c / s;
    return g;
  };
  const double margin = 0.3;
  return Spacetime("schwarzschild", metric, domain,
                   Box{{-5, 4 * m, margin, 0}, {5, 50 * m, std::numbers::pi - margin, 2 * std::numbers::pi}},
                   gamma);
}

Spacetime einstein_de_sitter() {
  auto metric = [](const Point& x) -> Mat4 {
    const double a = scale_factor(x[0]);
    return Vec4(1.0, -a * a, -a * a, -a * a).asDiagonal();
  };
  auto domain = [](const Point& x) { return x[0] > 0.0; };
  auto gamma = [](const Point& x) {
    const double t = x[0];
    const double a = scale_factor(t);
    const double adot = 2.0 / 3.0 * a / t;
    Christoffel g = zero_christoffel();
    for (int i = 1; i < 4; ++i) {
      g[0](i, i) = a * adot;
      g[i](0, i) = g[i](i, 0) = adot / a;
    }
    return g;
  };
  return Spacetime("eds", metric, domain, Box{{0.5, -5, -5, -5}, {5, 5, 5, 5}}, gamma);
}

Tetrad inertial_tetrad() {
  return Tetrad("inertial", [](const Point&) -> Mat4 { return Mat4::Identity(); });
}

Tetrad static_tetrad(double mass) {
  const double m = mass;
  return Tetrad("static", [m](const Point& x) -> Mat4 {
    const double r = x[1];
    const double f = 1.0 - 2.0 * m / r;
    return Vec4(std::sqrt(f), 1.0 / std::sqrt(f), r, r * std::sin(x[2])).asDiagonal();
  });
}

Tetrad comoving_tetrad() {
  return Tetrad("comoving", [](const Point& x) -> Mat4 {
    const double a = scale_factor(x[0]);
    return Vec4(1.0, a, a, a).asDiagonal();
  });
}

VectorField frame_time_vector(const Tetrad& t) {
  return [t](const Point& x) -> Vec4 { return t.inverse(x).col(0); };
}

std::vector<std::string> builtin_spacetime_names() { return {"minkowski", "schwarzschild", "eds"}; }

Spacetime builtin_spacetime(const std::string& name, double mass) {
  if (name == "minkowski") return minkowski();
  if (name == "schwarzschild") return schwarzschild(mass);
  if (name == "eds" || name == "einstein-de-sitter") return einstein_de_sitter();
  throw UnknownNameError("unknown spacetime '" + name + "'");
}

std::string default_tetrad_name(const std::string& spacetime) {
  if (spacetime == "minkowski") return "inertial";
  if (spacetime == "schwarzschild") return "static";
  if (spacetime == "eds" || spacetime == "einstein-de-sitter") return "comoving";
  return "orthonormal";
}

Tetrad builtin_tetrad(const std::string& spacetime, const std::string& tetrad, double mass) {
  const std::string name = tetrad == "default" ? default_tetrad_name(spacetime) : tetrad;
  if (name == "inertial" && spacetime == "minkowski") return inertial_tetrad();
  if (name == "static" && spacetime == "schwarzschild") return static_tetrad(mass);
  if (name == "comoving" && (spacetime == "eds" || spacetime == "einstein-de-sitter")) {
    return comoving_tetrad();
  }
  if (name == "orthonormal") return orthonormal_tetrad(builtin_spacetime(spacetime, mass));
  throw UnknownNameError("unknown tetrad '" + name + "' for spacetime '" + spacetime + "'");
}

}  // namespace spinor_forge
