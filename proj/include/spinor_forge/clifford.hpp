#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace spinor_forge {

inline constexpr int kMaxDimension = 6;
inline constexpr int kMaxBlades = 1 << kMaxDimension;

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Metric signature of a real Clifford algebra Cl(p,q). Basis vector k
/// squares to +1 when k < p and to -1 otherwise.
struct Signature {
  int p = 0;
  int q = 0;

  constexpr Signature() = default;
  Signature(int positive, int negative);

  constexpr int dimension() const { return p + q; }
  constexpr int blade_count() const { return 1 << (p + q); }
  constexpr double square(int k) const { return k < p ? 1.0 : -1.0; }

  friend constexpr bool operator==(Signature, Signature) = default;
};

std::string to_string(Signature sig);

/// Dense multivector: coefficient at bitmask b multiplies the blade built
/// from the basis vectors whose bits are set in b, in increasing order.
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(Signature sig);
  Multivector(Signature sig, std::span<const double> coefficients);

  static Multivector scalar(Signature sig, double value);
  static Multivector blade(Signature sig, unsigned mask, double coefficient = 1.0);
  static Multivector basis_vector(Signature sig, int k);

  Signature signature() const { return sig_; }
  int size() const { return sig_.blade_count(); }
  double operator[](unsigned mask) const { return coeffs_[mask]; }
  std::span<const double> coefficients() const {
    return {coeffs_.data(), static_cast<std::size_t>(size())};
  }

  double scalar_part() const { return coeffs_[0]; }

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);
  friend bool operator==(const Multivector& a, const Multivector& b);

 private:
  Signature sig_{};
  std::array<double, kMaxBlades> coeffs_{};
};

/// Sign table of blade products for one signature: blade(a) * blade(b) =
/// sign(a, b) * blade(a ^ b).
class ProductTable {
 public:
  explicit ProductTable(Signature sig);

  Signature signature() const { return sig_; }
  int sign(unsigned a, unsigned b) const { return signs_[a * kMaxBlades + b]; }

  /// Copy of this table with one entry negated. Used by negative-control
  /// self-tests only.
  ProductTable with_flipped_sign(unsigned a, unsigned b) const;

 private:
  Signature sig_;
  std::array<std::int8_t, kMaxBlades * kMaxBlades> signs_{};
};

/// Canonical table for `sig`, or the test override installed on this thread.
const ProductTable& product_table(Signature sig);

namespace testing {
/// Installs `table` as the product table for its signature on the calling
/// thread until destruction.
class ScopedProductTableOverride {
 public:
  explicit ScopedProductTableOverride(const ProductTable& table);
  ~ScopedProductTableOverride();
  ScopedProductTableOverride(const ScopedProductTableOverride&) = delete;
  ScopedProductTableOverride& operator=(const ScopedProductTableOverride&) = delete;

 private:
  const ProductTable* previous_;
};
}  // namespace testing

int grade_of(unsigned mask);

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector wedge(const Multivector& a, const Multivector& b);
double scalar_product(const Multivector& a, const Multivector& b);
Multivector left_contraction(const Multivector& a, const Multivector& b);
Multivector grade_projection(const Multivector& a, int k);
Multivector even_part(const Multivector& a);
Multivector odd_part(const Multivector& a);
Multivector commutator(const Multivector& a, const Multivector& b);
Multivector reverse(const Multivector& a);

/// Largest absolute coefficient in the blade basis.
double max_abs(const Multivector& a);
double max_abs_diff(const Multivector& a, const Multivector& b);
bool is_even(const Multivector& a, double tol = 0.0);

/// Debug form, e.g. "1 - 0.5*m0^m1", blades ordered by bitmask.
std::string to_string(const Multivector& a);

/// Named elements of the spacetime algebra Cl(1,3). m(mu) is the orthonormal
/// basis m_mu; m_up(mu) the reciprocal basis m^mu.
namespace sta {
Signature signature();
const Multivector& one();
const Multivector& m(int mu);
const Multivector& m_up(int mu);
/// m^5 = m^0 m^1 m^2 m^3, the pseudoscalar (written i below).
const Multivector& pseudoscalar();
/// sigma_a = m_a m_0 with sigma_0 = 1.
const Multivector& sigma(int a);
/// sigma^i = m^i m^0 with sigma^0 = 1.
const Multivector& sigma_up(int a);
/// Checked paravector basis: -1 for a = 0, sigma_a otherwise.
const Multivector& sigma_check(int a);
/// e = e_+ = (1 + sigma_3)/2 and e_- = (1 - sigma_3)/2.
const Multivector& e_plus();
const Multivector& e_minus();
}  // namespace sta

/// Pauli algebra Cl(3,0) onto the even subalgebra of Cl(1,3), generator k
/// going to sigma^{k+1}.
Multivector embed_pauli(const Multivector& pauli);
/// Quaternions Cl(0,2) onto Cl(1,3): generators go to i sigma^1, i sigma^2.
Multivector embed_quaternion(const Multivector& quaternion);
/// Quaternions Cl(0,2) into the even part of the Pauli algebra Cl(3,0).
Multivector quaternion_to_pauli(const Multivector& quaternion);

/// Sign s in i_hat * j_hat = s * k_hat when k_hat is identified with
/// i sigma^3 and i_hat, j_hat with i sigma^1, i sigma^2.
int quaternion_orientation_sign();

}  // namespace spinor_forge
