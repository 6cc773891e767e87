#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "spinor_forge/geometry.hpp"
#include "spinor_forge/spacetimes.hpp"

using namespace spinor_forge;

namespace {

// Oracles: second-order central differences, independent of the library's
// fourth-order stencil.
Christoffel oracle_christoffel(const Spacetime& s, const Point& x, double h = 1e-5) {
  std::array<Mat4, 4> dg;
  for (int c = 0; c < 4; ++c) {
    Point p = x;
    Point m = x;
    p[c] += h;
    m[c] -= h;
    dg[c] = (s.metric(p) - s.metric(m)) / (2.0 * h);
  }
  const Mat4 ginv = s.metric(x).inverse();
  Christoffel gamma;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        double v = 0.0;
        for (int d = 0; d < 4; ++d) v += 0.5 * ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        gamma[a](b, c) = v;
      }
    }
  }
  return gamma;
}

Mat4 oracle_ricci(const Spacetime& s, const Point& x, double h = 1e-3) {
  const Christoffel g0 = oracle_christoffel(s, x);
  std::array<Christoffel, 4> dgamma;
  for (int c = 0; c < 4; ++c) {
    Point p = x;
    Point m = x;
    p[c] += h;
    m[c] -= h;
    const Christoffel gp = oracle_christoffel(s, p);
    const Christoffel gm = oracle_christoffel(s, m);
    for (int a = 0; a < 4; ++a) dgamma[c][a] = (gp[a] - gm[a]) / (2.0 * h);
  }
  // Ric_{bn} = d_a G^a_{nb} - d_n G^a_{ab} + G^a_{al} G^l_{nb} - G^a_{nl} G^l_{ab}
  Mat4 ric = Mat4::Zero();
  for (int b = 0; b < 4; ++b) {
    for (int n = 0; n < 4; ++n) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a) {
        v += dgamma[a][a](n, b) - dgamma[n][a](a, b);
        for (int l = 0; l < 4; ++l) v += g0[a](a, l) * g0[l](n, b) - g0[a](n, l) * g0[l](a, b);
      }
      ric(b, n) = v;
    }
  }
  return ric;
}

double max_diff(const Christoffel& a, const Christoffel& b) {
  double m = 0.0;
  for (int k = 0; k < 4; ++k) m = std::max(m, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return m;
}

Spacetime without_analytic(const Spacetime& s) {
  return Spacetime(s.name() + "-numeric", [s](const Point& x) { return s.metric(x); }, s.domain(),
                   s.sampling_box());
}

}  // namespace

TEST_CASE("fourth-order stencil is exact on quartics") {
  auto f = [](const Point& x) { return 3.0 * std::pow(x[1], 4) - x[1] * x[2] + 2.0; };
  const Point x{0.0, 1.3, -0.7, 0.0};
  const double d = partial(f, x, 1, {});
  CHECK(d == doctest::Approx(12.0 * std::pow(1.3, 3) + 0.7).epsilon(1e-9));
  CHECK(fd_step(x, 1) == doctest::Approx(1.3e-4));
  CHECK(fd_step(x, 0) == 1e-4);
  CHECK(fd_step({0, 200.0, 0, 0}, 1) == doctest::Approx(2e-2));
  auto refuse = [](const Point& y) { return y[0] < 0.0; };
  CHECK_THROWS_AS(partial(f, Point{0, 0, 0, 0}, 0, refuse), StencilError);
}

TEST_CASE("Schwarzschild Christoffels") {
  const Spacetime s = schwarzschild(1.0);
  const Point x{0.0, 10.0, 1.0, 0.5};
  const Christoffel g = christoffel(s, x);
  CHECK(g[0](0, 1) == doctest::Approx(0.0125).epsilon(1e-12));
  CHECK(g[0](1, 0) == doctest::Approx(0.0125).epsilon(1e-12));
  CHECK(max_diff(g, oracle_christoffel(s, x)) < 1e-8);
  CHECK(max_diff(christoffel_numeric(s, x), oracle_christoffel(s, x)) < 1e-8);
  CHECK(metric_compatibility_residual(s, x, g) < 1e-8);
  CHECK_THROWS_AS(s.metric({0.0, 1.5, 1.0, 0.0}), StencilError);
  CHECK_FALSE(s.in_domain({0.0, 3.0, 0.0, 0.0}));
}

TEST_CASE("Einstein-de Sitter Christoffels and Ricci") {
  const Spacetime s = einstein_de_sitter();
  const Point x{1.0, 0.3, -1.2, 2.0};
  const Christoffel g = christoffel(s, x);
  // a = 1, adot = 2/3 at t = 1
  CHECK(g[0](1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(g[1](0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(max_diff(g, oracle_christoffel(s, x)) < 1e-8);

  const Mat4 ric = ricci(s, x);
  const Mat4 oracle = oracle_ricci(s, x);
  CHECK((ric - oracle).cwiseAbs().maxCoeff() < 1e-5);
  // -3 addot / a = 2/3 at t = 1
  CHECK(ric(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("vacuum and flat curvature") {
  const Spacetime sch = schwarzschild(1.0);
  const Point x{0.0, 6.0, 1.1, 0.2};
  CHECK(ricci(sch, x).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(max_abs(riemann(sch, x)) > 1e-3);
  CHECK(oracle_ricci(sch, x).cwiseAbs().maxCoeff() < 1e-5);

  // the nested-difference path with no analytic Christoffels
  const Spacetime numeric = without_analytic(sch);
  CHECK(ricci(numeric, x).cwiseAbs().maxCoeff() < 1e-5);
  const Riemann ra = riemann(sch, x);
  const Riemann rn = riemann(numeric, x);
  double diff = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) diff = std::max(diff, (ra[a][b] - rn[a][b]).cwiseAbs().maxCoeff());
  }
  CHECK(diff < 1e-5);

  CHECK(max_abs(riemann(minkowski(), {0.3, 1.0, 2.0, -1.0})) == 0.0);
}

TEST_CASE("tetrads reproduce their metrics") {
  const Point xs{0.0, 7.0, 0.9, 1.0};
  CHECK(tetrad_residual(schwarzschild(1.0), static_tetrad(1.0), xs) < 1e-13);
  CHECK(tetrad_residual(einstein_de_sitter(), comoving_tetrad(), {2.0, 0.0, 1.0, 0.0}) < 1e-13);
  CHECK(tetrad_residual(minkowski(), inertial_tetrad(), {0, 0, 0, 0}) == 0.0);

  const Tetrad gs = orthonormal_tetrad(schwarzschild(1.0));
  CHECK((gs.h(xs) - static_tetrad(1.0).h(xs)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((gs.inverse(xs) * gs.h(xs) - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-13);

  CHECK_THROWS_AS(q_tensor_square(schwarzschild(1.0), inertial_tetrad(), xs), GeometryError);
}

TEST_CASE("tensor square of the paravector field") {
  const Spacetime s = schwarzschild(1.0);
  const Point x{0.0, 9.0, 0.7, 2.0};
  const QSquare qs = q_tensor_square(s, static_tetrad(1.0), x);
  CHECK(q_square_residual(qs, s.metric(x)) < 1e-12);
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(max_abs(qs.antisym[mu][mu]) == 0.0);
    for (int nu = 0; nu < 4; ++nu) {
      // the antisymmetric part is a pure bivector
      CHECK(max_abs(qs.antisym[mu][nu] - grade_projection(qs.antisym[mu][nu], 2)) < 1e-14);
    }
  }
  const FComponents f = f_components(qs);
  const FComponents closed = f_components_closed_form(static_tetrad(1.0).h(x));
  for (int k = 1; k < 4; ++k) {
    CHECK((f.rotation[k] - closed.rotation[k]).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((f.boost[k] - closed.boost[k]).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("F components for the identity tetrad") {
  const QSquare qs = q_tensor_square(minkowski(), inertial_tetrad(), {0, 0, 0, 0});
  const FComponents f = f_components(qs);
  CHECK(f.rotation[3](1, 2) == -1.0);
  CHECK(f.rotation[3](2, 1) == 1.0);
  CHECK(f.rotation[1](2, 3) == -1.0);
  CHECK(f.boost[1](0, 1) == 1.0);
  CHECK(f.boost[1](1, 0) == -1.0);
  CHECK(f.boost[2](0, 1) == 0.0);
}

TEST_CASE("comoving observer kinematics") {
  const Spacetime s = einstein_de_sitter();
  const VectorField z = frame_time_vector(comoving_tetrad());
  const FrameKinematics k = frame_kinematics(s, z, {1.0, 0.5, 0.5, -0.5});
  CHECK(k.expansion == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(k.acceleration.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(k.rotation.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(k.shear.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(k.reassembly_residual < 1e-12);

  const FrameKinematics later = frame_kinematics(s, z, {2.0, 0.0, 0.0, 0.0});
  CHECK(later.expansion == doctest::Approx(1.0).epsilon(1e-9));  // 2 / t
}

TEST_CASE("static observer kinematics") {
  const double m = 1.0;
  const double r = 8.0;
  const Spacetime s = schwarzschild(m);
  const Mat4 g = s.metric({0.0, r, 1.0, 0.0});
  const FrameKinematics k = frame_kinematics(s, frame_time_vector(static_tetrad(m)), {0.0, r, 1.0, 0.0});
  const double magnitude = std::sqrt(-k.acceleration.dot(g.inverse() * k.acceleration));
  CHECK(magnitude == doctest::Approx(m / (r * r * std::sqrt(1.0 - 2.0 * m / r))).epsilon(1e-8));
  CHECK(std::abs(k.expansion) < 1e-9);
  CHECK(k.rotation.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(k.shear.cwiseAbs().maxCoeff() < 1e-9);
  CHECK_THROWS_AS(frame_kinematics(s, [](const Point&) { return Vec4(1, 0, 0, 0); }, {0.0, r, 1.0, 0.0}),
                  GeometryError);
}

TEST_CASE("sample points are deterministic and inside the domain") {
  for (const std::string& name : builtin_spacetime_names()) {
    const Spacetime s = builtin_spacetime(name, 1.0);
    const auto a = sample_points(s, 64, 7);
    const auto b = sample_points(s, 64, 7);
    const auto c = sample_points(s, 64, 8);
    REQUIRE(a.size() == 64);
    CHECK(a == b);
    CHECK(a != c);
    for (const Point& x : a) {
      CHECK(s.in_domain(x));
      for (int d = 0; d < 4; ++d) {
        CHECK(x[d] >= s.sampling_box().lo[d]);
        CHECK(x[d] <= s.sampling_box().hi[d]);
      }
    }
  }
  CHECK_THROWS_AS(sample_points(minkowski(), 0, 1), std::invalid_argument);
}
