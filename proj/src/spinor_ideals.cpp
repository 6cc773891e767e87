#include "spinor_forge/spinor_ideals.hpp"

#include <Eigen/Dense>

#include "spinor_forge/matrix_rep.hpp"

namespace spinor_forge {

namespace {

void require_even_sta(const Multivector& a, const char* where) {
  if (a.signature() != sta::signature()) {
    throw SignatureError(std::string(where) + ": expected Cl(1,3), got " +
                         to_string(a.signature()));
  }
  if (!is_even(a)) throw NotEvenError(std::string(where) + ": argument has odd-grade part");
}

void require_membership(double residual, double scale, const char* where) {
  if (residual > kIdealTolerance * std::max(scale, 1e-300) && residual > 0.0) {
    throw IdealMembershipError(std::string(where) + ": ideal residual " +
                               std::to_string(residual));
  }
}

struct Bases {
  std::array<Multivector, 2> theta;
  std::array<Multivector, 2> theta_dotted;
  std::array<Multivector, 2> aligned;
  std::array<Multivector, 2> aligned_dotted;
  // Rows map a 16-coefficient vector to (Re phi^1, Im phi^1, Re phi^2, Im phi^2).
  Eigen::Matrix<double, 4, 16> dual;
  Eigen::Matrix<double, 4, 16> dual_dotted;

  Bases() {
    const Multivector& e = sta::e_plus();
    const Multivector& s1 = sta::sigma(1);
    theta = {e, s1 * e};
    theta_dotted = {e, e * s1};
    aligned = {-(s1 * e), e};
    aligned_dotted = {-(e * s1), e};
    dual = dual_of(theta);
    dual_dotted = dual_of(theta_dotted);
  }

  static Eigen::Matrix<double, 4, 16> dual_of(const std::array<Multivector, 2>& basis) {
    const Multivector& i = sta::pseudoscalar();
    Eigen::Matrix<double, 16, 4> b;
    const std::array<Multivector, 4> columns{basis[0], i * basis[0], basis[1], i * basis[1]};
    for (int c = 0; c < 4; ++c) {
      for (int k = 0; k < 16; ++k) b(k, c) = columns[c][k];
    }
    const Eigen::Matrix4d gram = b.transpose() * b;
    return gram.inverse() * b.transpose();
  }
};

const Bases& bases() {
  static const Bases b;
  return b;
}

ComplexPair coordinates(const Eigen::Matrix<double, 4, 16>& dual, const Multivector& x) {
  Eigen::Matrix<double, 16, 1> v;
  for (int k = 0; k < 16; ++k) v(k) = x[k];
  const Eigen::Vector4d c = dual * v;
  return {std::complex<double>(c(0), c(1)), std::complex<double>(c(2), c(3))};
}

}  // namespace

Multivector complex_scale(std::complex<double> z, const Multivector& x) {
  return z.real() * x + z.imag() * (sta::pseudoscalar() * x);
}

AlgebraicSpinor::AlgebraicSpinor(Multivector value) : value_(std::move(value)) {
  require_even_sta(value_, "AlgebraicSpinor");
  require_membership(max_abs_diff(value_ * sta::e_plus(), value_), max_abs(value_),
                     "AlgebraicSpinor");
}

DottedAlgebraicSpinor::DottedAlgebraicSpinor(Multivector value) : value_(std::move(value)) {
  require_even_sta(value_, "DottedAlgebraicSpinor");
  require_membership(max_abs_diff(sta::e_plus() * value_, value_), max_abs(value_),
                     "DottedAlgebraicSpinor");
}

AlgebraicSpinor project_left(const Multivector& even) {
  require_even_sta(even, "project_left");
  return AlgebraicSpinor(even * sta::e_plus());
}

DottedAlgebraicSpinor project_right(const Multivector& even) {
  require_even_sta(even, "project_right");
  return DottedAlgebraicSpinor(sta::e_plus() * even);
}

const Multivector& theta(int a) { return bases().theta.at(a - 1); }
const Multivector& theta_dotted(int a) { return bases().theta_dotted.at(a - 1); }

ComplexPair decompose(const AlgebraicSpinor& phi) { return coordinates(bases().dual, phi.value()); }

AlgebraicSpinor reconstruct(const ComplexPair& c) {
  return AlgebraicSpinor(complex_scale(c[0], theta(1)) + complex_scale(c[1], theta(2)));
}

ComplexPair decompose_dotted(const DottedAlgebraicSpinor& xi) {
  return coordinates(bases().dual_dotted, xi.value());
}

DottedAlgebraicSpinor reconstruct_dotted(const ComplexPair& c) {
  return DottedAlgebraicSpinor(complex_scale(c[0], theta_dotted(1)) +
                               complex_scale(c[1], theta_dotted(2)));
}

Multivector iota(const AlgebraicSpinor& phi, const DottedAlgebraicSpinor& xi) {
  return phi.value() * xi.value();
}

const Multivector& spinor_basis(SpinorBasis basis, int a) {
  return basis == SpinorBasis::Theta ? bases().theta.at(a - 1) : bases().aligned.at(a - 1);
}

const Multivector& spinor_basis_dotted(SpinorBasis basis, int b) {
  return basis == SpinorBasis::Theta ? bases().theta_dotted.at(b - 1)
                                     : bases().aligned_dotted.at(b - 1);
}

std::array<double, 4> reconstruction_residuals(SpinorBasis basis) {
  auto st = [basis](int a, int b) {
    return iota(AlgebraicSpinor(spinor_basis(basis, a)),
                DottedAlgebraicSpinor(spinor_basis_dotted(basis, b)));
  };
  const Multivector& i = sta::pseudoscalar();
  const Multivector s0 = st(1, 1) + st(2, 2);
  const Multivector s1 = -(st(1, 2) + st(2, 1));
  const Multivector s2 = i * (st(1, 2) - st(2, 1));
  const Multivector s3 = -(st(1, 1) - st(2, 2));
  return {max_abs_diff(s0, sta::sigma(0)), max_abs_diff(s1, sta::sigma(1)),
          max_abs_diff(s2, sta::sigma(2)), max_abs_diff(s3, sta::sigma(3))};
}

Multivector pauli_from_spinor_components(const RealBlock& x, const RealBlock& y) {
  Multivector out(sta::signature());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Multivector st = spinor_basis(SpinorBasis::MatrixAligned, a + 1) *
                             spinor_basis_dotted(SpinorBasis::MatrixAligned, b + 1);
      out += complex_scale({x[a][b], y[a][b]}, st);
    }
  }
  return out;
}

std::pair<RealBlock, RealBlock> spinor_components_from_pauli(const Multivector& even) {
  const C2Matrix m = rep(even);
  RealBlock x{};
  RealBlock y{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      x[a][b] = m(a, b).real();
      y[a][b] = m(a, b).imag();
    }
  }
  return {x, y};
}

}  // namespace spinor_forge
