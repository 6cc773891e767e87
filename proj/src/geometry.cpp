#include "spinor_forge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace spinor_forge {

const Mat4& eta() {
  static const Mat4 m = Vec4(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return m;
}

Spacetime::Spacetime(std::string name, MetricFn metric, DomainFn domain, Box sampling_box,
                     std::optional<ChristoffelFn> analytic_christoffel)
    : name_(std::move(name)),
      metric_(std::move(metric)),
      domain_(std::move(domain)),
      box_(sampling_box),
      christoffel_(std::move(analytic_christoffel)) {
  for (int k = 0; k < 4; ++k) {
    if (!(box_.lo[k] <= box_.hi[k])) throw GeometryError("sampling box has lo > hi");
  }
}

bool Spacetime::in_domain(const Point& x) const { return !domain_ || domain_(x); }

Mat4 Spacetime::metric(const Point& x) const {
  if (!in_domain(x)) throw StencilError("point outside the domain of " + name_);
  return metric_(x);
}

Christoffel Spacetime::analytic_christoffel(const Point& x) const {
  if (!christoffel_) throw GeometryError(name_ + " has no analytic Christoffel symbols");
  if (!in_domain(x)) throw StencilError("point outside the domain of " + name_);
  return (*christoffel_)(x);
}

Tetrad::Tetrad(std::string name, Fn h) : name_(std::move(name)), h_(std::move(h)) {}

Mat4 Tetrad::inverse(const Point& x) const {
  const Eigen::FullPivLU<Mat4> lu(h_(x));
  if (!lu.isInvertible()) throw GeometryError("tetrad " + name_ + " is singular");
  return lu.inverse();
}

Tetrad orthonormal_tetrad(const Spacetime& s) {
  auto h = [s](const Point& x) -> Mat4 {
    const Mat4 g = s.metric(x);
    // Frame vectors in coordinates, columns e_a.
    Mat4 e = Mat4::Identity();
    for (int a = 0; a < 4; ++a) {
      Vec4 v = e.col(a);
      for (int b = 0; b < a; ++b) {
        const Vec4 eb = e.col(b);
        v -= eta()(b, b) * (eb.dot(g * v)) * eb;
      }
      const double n = v.dot(g * v);
      const double want = eta()(a, a);
      if (n * want <= 0.0) throw GeometryError("Gram-Schmidt hit a vector of the wrong causal type");
      e.col(a) = v / std::sqrt(std::abs(n));
    }
    // h^a_mu = eta_ab g_mu nu e_b^nu.
    return eta() * e.transpose() * g;
  };
  return Tetrad("orthonormal", h);
}

double fd_step(const Point& x, int nu) { return std::max(1e-4, 1e-4 * std::abs(x[nu])); }

namespace {

std::array<Mat4, 4> metric_derivatives(const Spacetime& s, const Point& x) {
  std::array<Mat4, 4> dg;
  auto g = [&s](const Point& y) { return s.metric(y); };
  for (int nu = 0; nu < 4; ++nu) dg[nu] = partial(g, x, nu, s.domain());
  return dg;
}

Mat4 checked_inverse(const Mat4& g) {
  const Eigen::FullPivLU<Mat4> lu(g);
  if (!lu.isInvertible()) throw GeometryError("singular metric");
  return lu.inverse();
}

// Gamma^alpha_{nu mu} from g^{-1} and first derivatives.
Christoffel christoffel_from(const Mat4& ginv, const std::array<Mat4, 4>& dg) {
  Christoffel out;
  for (int a = 0; a < 4; ++a) {
    out[a].setZero();
    for (int nu = 0; nu < 4; ++nu) {
      for (int mu = 0; mu < 4; ++mu) {
        double sum = 0.0;
        for (int b = 0; b < 4; ++b) {
          sum += ginv(a, b) * (dg[nu](b, mu) + dg[mu](b, nu) - dg[b](nu, mu));
        }
        out[a](nu, mu) = 0.5 * sum;
      }
    }
  }
  return out;
}

Riemann riemann_from(const Christoffel& gamma, const std::array<Christoffel, 4>& dgamma) {
  // dgamma[rho][alpha](nu, mu) = d_rho Gamma^alpha_{nu mu}.
  Riemann r;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
          double v = dgamma[mu][a](nu, b) - dgamma[nu][a](mu, b);
          for (int l = 0; l < 4; ++l) {
            v += gamma[a](mu, l) * gamma[l](nu, b) - gamma[a](nu, l) * gamma[l](mu, b);
          }
          r[a][b](mu, nu) = v;
        }
      }
    }
  }
  return r;
}

}  // namespace

Christoffel christoffel_numeric(const Spacetime& s, const Point& x) {
  return christoffel_from(checked_inverse(s.metric(x)), metric_derivatives(s, x));
}

Christoffel christoffel(const Spacetime& s, const Point& x) {
  if (s.has_analytic_christoffel()) return s.analytic_christoffel(x);
  return christoffel_numeric(s, x);
}

Riemann riemann(const Spacetime& s, const Point& x) {
  std::array<Christoffel, 4> dgamma;
  if (s.has_analytic_christoffel()) {
    for (int rho = 0; rho < 4; ++rho) {
      for (int a = 0; a < 4; ++a) {
        auto component = [&s, a](const Point& y) -> Mat4 { return s.analytic_christoffel(y)[a]; };
        dgamma[rho][a] = partial(component, x, rho, s.domain());
      }
    }
    return riemann_from(s.analytic_christoffel(x), dgamma);
  }
  // d_rho Gamma = 1/2 d_rho(g^-1) S + 1/2 g^-1 d_rho S, with S built from
  // first derivatives of g and d_rho S from nested differences.
  const Mat4 g = s.metric(x);
  const Mat4 ginv = checked_inverse(g);
  const std::array<Mat4, 4> dg = metric_derivatives(s, x);
  for (int rho = 0; rho < 4; ++rho) {
    std::array<Mat4, 4> ddg;
    for (int nu = 0; nu < 4; ++nu) {
      auto first = [&s, nu](const Point& y) -> Mat4 {
        auto gy = [&s](const Point& z) { return s.metric(z); };
        return partial(gy, y, nu, s.domain());
      };
      ddg[nu] = partial(first, x, rho, s.domain());
    }
    const Mat4 dginv = -ginv * dg[rho] * ginv;
    for (int a = 0; a < 4; ++a) {
      for (int nu = 0; nu < 4; ++nu) {
        for (int mu = 0; mu < 4; ++mu) {
          double sum = 0.0;
          for (int b = 0; b < 4; ++b) {
            const double sym = dg[nu](b, mu) + dg[mu](b, nu) - dg[b](nu, mu);
            const double dsym = ddg[nu](b, mu) + ddg[mu](b, nu) - ddg[b](nu, mu);
            sum += dginv(a, b) * sym + ginv(a, b) * dsym;
          }
          dgamma[rho][a](nu, mu) = 0.5 * sum;
        }
      }
    }
  }
  return riemann_from(christoffel_from(ginv, dg), dgamma);
}

Mat4 ricci_from(const Riemann& r) {
  Mat4 ric = Mat4::Zero();
  for (int b = 0; b < 4; ++b) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int a = 0; a < 4; ++a) ric(b, nu) += r[a][b](a, nu);
    }
  }
  return ric;
}

Mat4 ricci(const Spacetime& s, const Point& x) { return ricci_from(riemann(s, x)); }

double max_abs(const Riemann& r) {
  double m = 0.0;
  for (const auto& row : r) {
    for (const auto& mat : row) m = std::max(m, mat.cwiseAbs().maxCoeff());
  }
  return m;
}

double metric_compatibility_residual(const Spacetime& s, const Point& x, const Christoffel& gamma) {
  const Mat4 g = s.metric(x);
  const std::array<Mat4, 4> dg = metric_derivatives(s, x);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        double v = dg[a](mu, nu);
        for (int l = 0; l < 4; ++l) {
          v -= gamma[l](a, mu) * g(l, nu) + gamma[l](a, nu) * g(mu, l);
        }
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  return worst;
}

double tetrad_residual(const Spacetime& s, const Tetrad& t, const Point& x) {
  const Mat4 h = t.h(x);
  return (s.metric(x) - h.transpose() * eta() * h).cwiseAbs().maxCoeff();
}

Paravectors paravectors(const Mat4& h) {
  Paravectors p;
  for (int mu = 0; mu < 4; ++mu) {
    Multivector q(sta::signature());
    Multivector qc(sta::signature());
    for (int a = 0; a < 4; ++a) {
      q += h(a, mu) * sta::sigma(a);
      qc += h(a, mu) * sta::sigma_check(a);
    }
    p.q[mu] = q;
    p.q_check[mu] = qc;
  }
  return p;
}

QSquare q_tensor_square(const Spacetime& s, const Tetrad& t, const Point& x, double tol) {
  const double residual = tetrad_residual(s, t, x);
  if (!(residual <= tol)) {
    throw GeometryError("tetrad " + t.name() + " does not reproduce the metric (residual " +
                        std::to_string(residual) + ")");
  }
  const Paravectors p = paravectors(t.h(x));
  QSquare out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const Multivector a = p.q[mu] * p.q_check[nu];
      const Multivector b = p.q[nu] * p.q_check[mu];
      out.sym[mu][nu] = 0.5 * (a + b);
      out.antisym[mu][nu] = 0.5 * (a - b);
    }
  }
  return out;
}

double q_square_residual(const QSquare& qs, const Mat4& g) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      worst = std::max(worst, max_abs(qs.sym[mu][nu] + Multivector::scalar(sta::signature(), g(mu, nu))));
    }
  }
  return worst;
}

FComponents f_components(const QSquare& qs) {
  FComponents f;
  const Multivector& i = sta::pseudoscalar();
  for (int k = 0; k < 4; ++k) {
    f.rotation[k].setZero();
    f.boost[k].setZero();
  }
  for (int k = 1; k < 4; ++k) {
    const Multivector rot_dual = -(i * sta::sigma(k));  // (i sigma_k)^-1
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        f.rotation[k](mu, nu) = scalar_product(qs.antisym[mu][nu], rot_dual);
        f.boost[k](mu, nu) = scalar_product(qs.antisym[mu][nu], sta::sigma(k));
      }
    }
  }
  return f;
}

FComponents f_components_closed_form(const Mat4& h) {
  FComponents f;
  for (int k = 0; k < 4; ++k) {
    f.rotation[k].setZero();
    f.boost[k].setZero();
  }
  for (int k = 1; k < 4; ++k) {
    const int i = k % 3 + 1;
    const int j = (k + 1) % 3 + 1;
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        f.rotation[k](mu, nu) = -(h(i, mu) * h(j, nu) - h(j, mu) * h(i, nu));
        f.boost[k](mu, nu) = h(0, mu) * h(k, nu) - h(k, mu) * h(0, nu);
      }
    }
  }
  return f;
}

FrameKinematics frame_kinematics(const Spacetime& s, const VectorField& z, const Point& x,
                                 double tol) {
  const Mat4 g = s.metric(x);
  const Mat4 ginv = checked_inverse(g);
  const Vec4 zu = z(x);
  const double norm = zu.dot(g * zu);
  if (!(std::abs(norm - 1.0) <= tol)) {
    throw GeometryError("frame field is not unit timelike (g(Z,Z) = " + std::to_string(norm) + ")");
  }
  const Vec4 zl = g * zu;
  const Christoffel gamma = christoffel(s, x);
  auto lower = [&s, &z](const Point& y) -> Vec4 { return s.metric(y) * z(y); };

  FrameKinematics k;
  for (int nu = 0; nu < 4; ++nu) {
    const Vec4 d = partial(lower, x, nu, s.domain());
    for (int mu = 0; mu < 4; ++mu) {
      double v = d(mu);
      for (int l = 0; l < 4; ++l) v -= gamma[l](nu, mu) * zl(l);
      k.gradient(mu, nu) = v;
    }
  }
  k.acceleration = k.gradient * zu;
  k.expansion = (ginv.cwiseProduct(k.gradient)).sum();
  k.projector = g - zl * zl.transpose();
  // p^alpha_mu with alpha as row.
  const Mat4 mixed = ginv * k.projector;
  const Mat4 projected = mixed.transpose() * k.gradient * mixed;
  k.rotation = 0.5 * (projected - projected.transpose());
  k.shear = 0.5 * (projected + projected.transpose()) - (k.expansion / 3.0) * k.projector;
  const Mat4 rebuilt =
      k.acceleration * zl.transpose() + k.rotation + k.shear + (k.expansion / 3.0) * k.projector;
  k.reassembly_residual = (k.gradient - rebuilt).cwiseAbs().maxCoeff();
  return k;
}

namespace {

double radical_inverse(std::uint64_t n, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return r;
}

bool stencil_fits(const Spacetime& s, const Point& x) {
  if (!s.in_domain(x)) return false;
  for (int nu = 0; nu < 4; ++nu) {
    const double h = fd_step(x, nu);
    for (double k : {-4.0, 4.0}) {
      Point y = x;
      y[nu] += k * h;
      if (!s.in_domain(y)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Point> sample_points(const Spacetime& s, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("point count must be at least 1");
  constexpr unsigned kBases[4] = {2, 3, 5, 7};
  // Raw engine output only: distribution classes are not portable.
  std::mt19937_64 rng(seed);
  std::array<double, 4> shift{};
  for (double& v : shift) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;

  const Box& box = s.sampling_box();
  std::vector<Point> out;
  out.reserve(count);
  const std::uint64_t limit = static_cast<std::uint64_t>(count) * 64 + 1024;
  for (std::uint64_t n = 1; n <= limit && static_cast<int>(out.size()) < count; ++n) {
    Point x;
    for (int d = 0; d < 4; ++d) {
      double u = radical_inverse(n, kBases[d]) + shift[d];
      u -= std::floor(u);
      x[d] = box.lo[d] + u * (box.hi[d] - box.lo[d]);
    }
    if (stencil_fits(s, x)) out.push_back(x);
  }
  if (static_cast<int>(out.size()) < count) {
    throw GeometryError("could not place " + std::to_string(count) + " sample points inside " +
                        s.name());
  }
  return out;
}

}  // namespace spinor_forge
