#include "spinor_forge/matrix_rep.hpp"

#include <array>
#include <cmath>

namespace spinor_forge {

namespace {

constexpr Complex I(0.0, 1.0);

struct Paulis {
  std::array<C2Matrix, 4> p;
  C2Matrix eps;
  Paulis() {
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -I, I, 0;
    p[3] << 1, 0, 0, -1;
    eps << 0, 1, -1, 0;
  }
};

const Paulis& paulis() {
  static const Paulis p;
  return p;
}

// rep(m_x m_y) = -S_x Scheck_y, with S_0 = Id, S_j = -P_j, Scheck_0 = -Id,
// Scheck_j = S_j. Fills the image of every even blade of Cl(1,3).
std::array<C2Matrix, 16> build_blade_images() {
  const auto& p = paulis().p;
  std::array<C2Matrix, 4> s;
  std::array<C2Matrix, 4> s_check;
  s[0] = p[0];
  s_check[0] = -p[0];
  for (int j = 1; j < 4; ++j) {
    s[j] = -p[j];
    s_check[j] = s[j];
  }
  std::array<C2Matrix, 16> images;
  for (auto& m : images) m.setZero();
  images[0] = p[0];
  for (int x = 0; x < 4; ++x) {
    for (int y = x + 1; y < 4; ++y) {
      images[(1u << x) | (1u << y)] = -s[x] * s_check[y];
    }
  }
  images[0b1111] = images[0b0011] * images[0b1100];
  return images;
}

const std::array<C2Matrix, 16>& blade_images() {
  static const auto images = build_blade_images();
  return images;
}

void require_even(const Multivector& a, const char* where) {
  if (a.signature() != sta::signature()) {
    throw SignatureError(std::string(where) + ": expected Cl(1,3), got " +
                         to_string(a.signature()));
  }
  if (!is_even(a)) throw NotEvenError(std::string(where) + ": argument has odd-grade part");
}

}  // namespace

const C2Matrix& pauli_matrix(int k) {
  if (k < 0 || k > 3) throw std::out_of_range("pauli_matrix index out of range");
  return paulis().p[k];
}

const C2Matrix& epsilon() { return paulis().eps; }

C2Matrix rep(const Multivector& even) {
  require_even(even, "rep");
  const auto& images = blade_images();
  C2Matrix out = C2Matrix::Zero();
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (grade_of(mask) % 2 == 0 && even[mask] != 0.0) out += even[mask] * images[mask];
  }
  return out;
}

Multivector unrep(const C2Matrix& m) {
  // M = a_0 Id + a_k P_k with a_k = tr(P_k M) / 2.
  const Multivector& i = sta::pseudoscalar();
  Multivector out(sta::signature());
  for (int k = 0; k < 4; ++k) {
    const Complex a = (pauli_matrix(k) * m).trace() / 2.0;
    const Multivector& basis = sta::sigma_up(k);
    out += a.real() * basis + a.imag() * (i * basis);
  }
  return out;
}

ColumnSpinor column_of(const Multivector& phi) { return rep(phi).col(1); }

RowSpinor row_of(const Multivector& xi) { return rep(xi).row(1); }

Multivector left_ideal_from_column(const ColumnSpinor& c) {
  C2Matrix m = C2Matrix::Zero();
  m.col(1) = c;
  return unrep(m);
}

Multivector right_ideal_from_row(const RowSpinor& r) {
  C2Matrix m = C2Matrix::Zero();
  m.row(1) = r;
  return unrep(m);
}

RowSpinor dotted_of(const ColumnSpinor& xi) { return xi.conjugate().transpose() * epsilon(); }

RowSpinor lower_index(const ColumnSpinor& upper) {
  const C2Matrix& eps = epsilon();
  RowSpinor out;
  for (int a = 0; a < 2; ++a) out(a) = upper(0) * eps(0, a) + upper(1) * eps(1, a);
  return out;
}

ColumnSpinor raise_index(const RowSpinor& lower) {
  const C2Matrix& eps = epsilon();
  ColumnSpinor out;
  for (int a = 0; a < 2; ++a) out(a) = eps(a, 0) * lower(0) + eps(a, 1) * lower(1);
  return out;
}

C2Matrix kronecker(const ColumnSpinor& c, const RowSpinor& r) { return c * r; }

int raise_lower_sign() {
  int sign = 0;
  for (int k = 0; k < 2; ++k) {
    ColumnSpinor x = ColumnSpinor::Zero();
    x(k) = 1.0;
    const ColumnSpinor back = raise_index(lower_index(x));
    int s = 0;
    if ((back - x).cwiseAbs().maxCoeff() == 0.0) s = 1;
    if ((back + x).cwiseAbs().maxCoeff() == 0.0) s = -1;
    if (s == 0 || (sign != 0 && s != sign)) return 0;
    sign = s;
  }
  return sign;
}

double max_abs(const C2Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace spinor_forge
