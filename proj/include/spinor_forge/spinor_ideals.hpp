#pragma once

#include <array>
#include <complex>

#include "spinor_forge/clifford.hpp"

namespace spinor_forge {

class IdealMembershipError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kIdealTolerance = 1e-10;

/// Element of the left ideal I = Cl(1,3)^(0) e.
class AlgebraicSpinor {
 public:
  /// Validates phi e = phi to kIdealTolerance relative to max_abs(phi).
  explicit AlgebraicSpinor(Multivector value);
  const Multivector& value() const { return value_; }

 private:
  Multivector value_;
};

/// Element of the right ideal e Cl(1,3)^(0).
class DottedAlgebraicSpinor {
 public:
  explicit DottedAlgebraicSpinor(Multivector value);
  const Multivector& value() const { return value_; }

 private:
  Multivector value_;
};

/// Complex coordinates (phi^1, phi^2). The complex unit acts on the algebra
/// as the pseudoscalar.
using ComplexPair = std::array<std::complex<double>, 2>;

/// (a + ib) acting on `x` as a x + b i x.
Multivector complex_scale(std::complex<double> z, const Multivector& x);

AlgebraicSpinor project_left(const Multivector& even);
DottedAlgebraicSpinor project_right(const Multivector& even);

/// Basis theta_1 = e, theta_2 = sigma_1 e of I.
const Multivector& theta(int a);
/// Basis e, e sigma_1 of the dotted ideal.
const Multivector& theta_dotted(int a);

/// Coordinates in the theta basis: phi = phi^1 theta_1 + phi^2 theta_2.
ComplexPair decompose(const AlgebraicSpinor& phi);
AlgebraicSpinor reconstruct(const ComplexPair& c);
/// Coordinates in the dotted basis.
ComplexPair decompose_dotted(const DottedAlgebraicSpinor& xi);
DottedAlgebraicSpinor reconstruct_dotted(const ComplexPair& c);

/// Clifford product phi xi.
Multivector iota(const AlgebraicSpinor& phi, const DottedAlgebraicSpinor& xi);

/// Spinor bases s_A and s^{B dot}, either taken literally as the theta bases
/// or chosen so that column_of(s_A) and row_of(s^B) are the unit vectors.
enum class SpinorBasis { Theta, MatrixAligned };
const Multivector& spinor_basis(SpinorBasis basis, int a);
const Multivector& spinor_basis_dotted(SpinorBasis basis, int b);

/// Residuals of the four reconstructions of sigma_0..sigma_3 from iota of
/// basis products in the given basis.
std::array<double, 4> reconstruction_residuals(SpinorBasis basis);

/// P = sum (X^A_B + i Y^A_B) s_A s^B over the matrix-aligned basis.
using RealBlock = std::array<std::array<double, 2>, 2>;
Multivector pauli_from_spinor_components(const RealBlock& x, const RealBlock& y);
/// Inverse of pauli_from_spinor_components.
std::pair<RealBlock, RealBlock> spinor_components_from_pauli(const Multivector& even);

}  // namespace spinor_forge
