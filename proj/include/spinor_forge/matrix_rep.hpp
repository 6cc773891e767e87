#pragma once

#include <complex>

#include <Eigen/Core>

#include "spinor_forge/clifford.hpp"

namespace spinor_forge {

using Complex = std::complex<double>;
using C2Matrix = Eigen::Matrix2cd;
using ColumnSpinor = Eigen::Vector2cd;
using RowSpinor = Eigen::RowVector2cd;

class NotEvenError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pauli matrices P_0 = Id, P_1, P_2, P_3.
const C2Matrix& pauli_matrix(int k);
/// eps = [[0, 1], [-1, 0]].
const C2Matrix& epsilon();

/// Matrix image of an even element of Cl(1,3). rep(sigma^k) = P_k and
/// rep(pseudoscalar) = i Id.
C2Matrix rep(const Multivector& even);
/// Inverse of rep, built from trace coordinates rather than the blade table.
Multivector unrep(const C2Matrix& m);

/// Undotted column of an ideal element: second column of rep(phi).
ColumnSpinor column_of(const Multivector& phi);
/// Dotted row of a right-ideal element: second row of rep(xi).
RowSpinor row_of(const Multivector& xi);
/// Ideal element whose column is `c`.
Multivector left_ideal_from_column(const ColumnSpinor& c);
/// Right-ideal element whose row is `r`.
Multivector right_ideal_from_row(const RowSpinor& r);

/// conj(xi)^T eps.
RowSpinor dotted_of(const ColumnSpinor& xi);
/// phi_A = phi^B eps_BA.
RowSpinor lower_index(const ColumnSpinor& upper);
/// phi^A = eps^AB phi_B.
ColumnSpinor raise_index(const RowSpinor& lower);
/// Outer product c r.
C2Matrix kronecker(const ColumnSpinor& c, const RowSpinor& r);

/// Sign s with raise_index(lower_index(x)) = s x, found from the basis.
int raise_lower_sign();

double max_abs(const C2Matrix& m);

}  // namespace spinor_forge
