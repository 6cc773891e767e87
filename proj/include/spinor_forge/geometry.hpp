#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "spinor_forge/clifford.hpp"

namespace spinor_forge {

using Point = std::array<double, 4>;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
/// gamma[alpha](nu, mu) = Gamma^alpha_{nu mu}.
using Christoffel = std::array<Mat4, 4>;
/// riemann[alpha][beta](mu, nu) = R^alpha_{beta mu nu}.
using Riemann = std::array<std::array<Mat4, 4>, 4>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite-difference stencil or evaluation point left the domain.
class StencilError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Minkowski metric diag(1, -1, -1, -1).
const Mat4& eta();

struct Box {
  Point lo{};
  Point hi{};
};

class Spacetime {
 public:
  using MetricFn = std::function<Mat4(const Point&)>;
  using ChristoffelFn = std::function<Christoffel(const Point&)>;
  using DomainFn = std::function<bool(const Point&)>;

  Spacetime(std::string name, MetricFn metric, DomainFn domain, Box sampling_box,
            std::optional<ChristoffelFn> analytic_christoffel = std::nullopt);

  const std::string& name() const { return name_; }
  const Box& sampling_box() const { return box_; }
  bool in_domain(const Point& x) const;
  /// Throws StencilError outside the domain.
  Mat4 metric(const Point& x) const;
  bool has_analytic_christoffel() const { return christoffel_.has_value(); }
  Christoffel analytic_christoffel(const Point& x) const;
  const DomainFn& domain() const { return domain_; }

 private:
  std::string name_;
  MetricFn metric_;
  DomainFn domain_;
  Box box_;
  std::optional<ChristoffelFn> christoffel_;
};

class Tetrad {
 public:
  /// h(x)(a, mu) = h^a_mu.
  using Fn = std::function<Mat4(const Point&)>;

  Tetrad(std::string name, Fn h);

  const std::string& name() const { return name_; }
  Mat4 h(const Point& x) const { return h_(x); }
  /// inverse(x)(mu, a) = h_a^mu, the frame vectors e_a in coordinates.
  Mat4 inverse(const Point& x) const;

 private:
  std::string name_;
  Fn h_;
};

/// Tetrad obtained by Gram-Schmidt on the coordinate basis; requires
/// d/dx0 timelike.
Tetrad orthonormal_tetrad(const Spacetime& s);

/// Step used for coordinate `nu` at x.
double fd_step(const Point& x, int nu);

/// Fourth-order central difference of f along coordinate nu. Every stencil
/// point must lie in `domain`.
template <typename F>
auto partial(const F& f, const Point& x, int nu, const Spacetime::DomainFn& domain) {
  const double h = fd_step(x, nu);
  auto shifted = [&](double k) {
    Point y = x;
    y[nu] += k * h;
    if (domain && !domain(y)) throw StencilError("stencil leaves the domain");
    return f(y);
  };
  using Result = std::decay_t<decltype(f(x))>;
  const double w = 1.0 / (12.0 * h);
  Result out = (shifted(-2.0) - 8.0 * shifted(-1.0) + 8.0 * shifted(1.0) - shifted(2.0)) * w;
  return out;
}

Christoffel christoffel(const Spacetime& s, const Point& x);
/// Always the finite-difference path, ignoring any analytic Christoffels.
Christoffel christoffel_numeric(const Spacetime& s, const Point& x);
/// Finite differences of the analytic Christoffels when present, otherwise
/// nested first differences of the metric.
Riemann riemann(const Spacetime& s, const Point& x);
/// Ric_{beta nu} = R^alpha_{beta alpha nu}.
Mat4 ricci(const Spacetime& s, const Point& x);
Mat4 ricci_from(const Riemann& r);
double max_abs(const Riemann& r);

/// max |nabla_alpha g_{mu nu}| using the given Christoffels.
double metric_compatibility_residual(const Spacetime& s, const Point& x, const Christoffel& g);

/// max |g - h^T eta h|.
double tetrad_residual(const Spacetime& s, const Tetrad& t, const Point& x);

/// q_mu = h^a_mu sigma_a and qcheck_mu = h^a_mu sigmacheck_a.
struct Paravectors {
  std::array<Multivector, 4> q;
  std::array<Multivector, 4> q_check;
};
Paravectors paravectors(const Mat4& h);

struct QSquare {
  std::array<std::array<Multivector, 4>, 4> sym;
  std::array<std::array<Multivector, 4>, 4> antisym;
};
/// Symmetric and antisymmetric parts of q_mu qcheck_nu. Throws when the
/// tetrad does not reproduce the metric to `tol`.
QSquare q_tensor_square(const Spacetime& s, const Tetrad& t, const Point& x, double tol = 1e-9);
/// max over mu, nu of max_abs(sym_{mu nu} + g_{mu nu}).
double q_square_residual(const QSquare& qs, const Mat4& g);

/// rotation[k](mu, nu): coefficient of i sigma_k in antisym_{mu nu};
/// boost[k](mu, nu): coefficient of sigma_k.
struct FComponents {
  std::array<Mat4, 4> rotation;
  std::array<Mat4, 4> boost;
};
FComponents f_components(const QSquare& qs);
/// Closed form -eps_{ijk} h^i_mu h^j_nu for the rotation part and
/// h^0_mu h^k_nu - h^k_mu h^0_nu for the boost part.
FComponents f_components_closed_form(const Mat4& h);

struct FrameKinematics {
  Vec4 acceleration;  // a_mu
  Mat4 rotation;      // varpi_{mu nu}
  Mat4 shear;         // sigma_{mu nu}
  double expansion = 0.0;
  Mat4 projector;     // p_{mu nu}
  Mat4 gradient;      // nabla_nu Z_mu stored at (mu, nu)
  /// max |gradient - (a Z + rotation + shear + E p / 3)|.
  double reassembly_residual = 0.0;
};

using VectorField = std::function<Vec4(const Point&)>;
/// Z given by contravariant components; g(Z, Z) must be 1 to `tol`.
FrameKinematics frame_kinematics(const Spacetime& s, const VectorField& z, const Point& x,
                                 double tol = 1e-9);

/// Deterministic points in the sampling box: shifted Halton sequence with
/// the shift drawn from `seed`. Points outside the domain, or too close to
/// its boundary for curvature stencils, are skipped.
std::vector<Point> sample_points(const Spacetime& s, int count, std::uint64_t seed);

}  // namespace spinor_forge
