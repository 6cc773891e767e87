#include "spinor_forge/clifford.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <vector>

namespace spinor_forge {

Signature::Signature(int positive, int negative) : p(positive), q(negative) {
  if (p < 0 || q < 0 || p + q > kMaxDimension) {
    throw SignatureError("signature (" + std::to_string(p) + "," + std::to_string(q) +
                         ") outside p,q >= 0, p+q <= 6");
  }
}

std::string to_string(Signature sig) {
  return "Cl(" + std::to_string(sig.p) + "," + std::to_string(sig.q) + ")";
}

int grade_of(unsigned mask) { return std::popcount(mask); }

namespace {

void require_same(const Multivector& a, const Multivector& b, const char* op) {
  if (a.signature() != b.signature()) {
    throw SignatureError(std::string(op) + ": signature mismatch " + to_string(a.signature()) +
                         " vs " + to_string(b.signature()));
  }
}

// Reordering sign: number of transpositions needed to merge the ordered
// factors of blade a with those of blade b.
int reorder_sign(unsigned a, unsigned b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

int index_of(Signature sig) {
  // p in [0,6], q in [0,6-p]; dense index over the triangle.
  int index = 0;
  for (int p = 0; p < sig.p; ++p) index += kMaxDimension - p + 1;
  return index + sig.q;
}

constexpr int kSignatureCount = (kMaxDimension + 1) * (kMaxDimension + 2) / 2;

const std::vector<ProductTable>& canonical_tables() {
  static const std::vector<ProductTable> tables = [] {
    std::vector<ProductTable> out;
    out.reserve(kSignatureCount);
    for (int p = 0; p <= kMaxDimension; ++p) {
      for (int q = 0; p + q <= kMaxDimension; ++q) out.emplace_back(Signature(p, q));
    }
    return out;
  }();
  return tables;
}

thread_local const ProductTable* g_override = nullptr;

}  // namespace

ProductTable::ProductTable(Signature sig) : sig_(sig) {
  const int n = sig.blade_count();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int sign = reorder_sign(a, b);
      const unsigned common = static_cast<unsigned>(a & b);
      for (int k = 0; k < sig.dimension(); ++k) {
        if ((common >> k) & 1u) sign *= sig.square(k) > 0 ? 1 : -1;
      }
      signs_[a * kMaxBlades + b] = static_cast<std::int8_t>(sign);
    }
  }
}

ProductTable ProductTable::with_flipped_sign(unsigned a, unsigned b) const {
  ProductTable copy = *this;
  copy.signs_[a * kMaxBlades + b] = static_cast<std::int8_t>(-copy.signs_[a * kMaxBlades + b]);
  return copy;
}

const ProductTable& product_table(Signature sig) {
  if (g_override != nullptr && g_override->signature() == sig) return *g_override;
  return canonical_tables()[index_of(sig)];
}

namespace testing {
ScopedProductTableOverride::ScopedProductTableOverride(const ProductTable& table)
    : previous_(g_override) {
  g_override = &table;
}
ScopedProductTableOverride::~ScopedProductTableOverride() { g_override = previous_; }
}  // namespace testing

Multivector::Multivector(Signature sig) : sig_(sig) {}

Multivector::Multivector(Signature sig, std::span<const double> coefficients) : sig_(sig) {
  if (static_cast<int>(coefficients.size()) != sig.blade_count()) {
    throw SignatureError("expected " + std::to_string(sig.blade_count()) + " coefficients for " +
                         to_string(sig) + ", got " + std::to_string(coefficients.size()));
  }
  for (std::size_t i = 0; i < coefficients.size(); ++i) coeffs_[i] = coefficients[i];
}

Multivector Multivector::scalar(Signature sig, double value) { return blade(sig, 0, value); }

Multivector Multivector::blade(Signature sig, unsigned mask, double coefficient) {
  if (mask >= static_cast<unsigned>(sig.blade_count())) {
    throw SignatureError("blade mask out of range for " + to_string(sig));
  }
  Multivector out(sig);
  out.coeffs_[mask] = coefficient;
  return out;
}

Multivector Multivector::basis_vector(Signature sig, int k) {
  if (k < 0 || k >= sig.dimension()) {
    throw SignatureError("basis vector index out of range for " + to_string(sig));
  }
  return blade(sig, 1u << k);
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  for (int i = 0; i < size(); ++i) out.coeffs_[i] = -coeffs_[i];
  return out;
}

Multivector& Multivector::operator+=(const Multivector& other) {
  require_same(*this, other, "add");
  for (int i = 0; i < size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  require_same(*this, other, "subtract");
  for (int i = 0; i < size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (int i = 0; i < size(); ++i) coeffs_[i] *= s;
  return *this;
}

Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

bool operator==(const Multivector& a, const Multivector& b) {
  if (a.sig_ != b.sig_) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  }
  return true;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same(a, b, "geometric_product");
  const Signature sig = a.signature();
  const ProductTable& table = product_table(sig);
  const int n = sig.blade_count();
  std::array<double, kMaxBlades> out{};
  for (int i = 0; i < n; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      out[i ^ j] += table.sign(i, j) * ai * bj;
    }
  }
  return Multivector(sig, std::span<const double>(out.data(), n));
}

namespace {

// Sum over grade pairs (r, s) of <a_r b_s>_target(r, s).
template <typename Select>
Multivector graded_product(const Multivector& a, const Multivector& b, Select target) {
  const Signature sig = a.signature();
  const ProductTable& table = product_table(sig);
  const int n = sig.blade_count();
  std::array<double, kMaxBlades> out{};
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j] == 0.0) continue;
      const int want = target(grade_of(i), grade_of(j));
      if (want < 0 || grade_of(i ^ j) != want) continue;
      out[i ^ j] += table.sign(i, j) * a[i] * b[j];
    }
  }
  return Multivector(sig, std::span<const double>(out.data(), n));
}

}  // namespace

Multivector wedge(const Multivector& a, const Multivector& b) {
  require_same(a, b, "wedge");
  return graded_product(a, b, [](int r, int s) { return r + s; });
}

double scalar_product(const Multivector& a, const Multivector& b) {
  require_same(a, b, "scalar_product");
  const ProductTable& table = product_table(a.signature());
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i) sum += table.sign(i, i) * a[i] * b[i];
  return sum;
}

Multivector left_contraction(const Multivector& a, const Multivector& b) {
  require_same(a, b, "left_contraction");
  return graded_product(a, b, [](int r, int s) { return s - r; });
}

Multivector grade_projection(const Multivector& a, int k) {
  const Signature sig = a.signature();
  if (k < 0 || k > sig.dimension()) {
    throw std::out_of_range("grade " + std::to_string(k) + " outside [0, " +
                            std::to_string(sig.dimension()) + "]");
  }
  std::array<double, kMaxBlades> out{};
  for (int i = 0; i < a.size(); ++i) {
    if (grade_of(i) == k) out[i] = a[i];
  }
  return Multivector(sig, std::span<const double>(out.data(), a.size()));
}

namespace {
Multivector parity_part(const Multivector& a, int parity) {
  std::array<double, kMaxBlades> out{};
  for (int i = 0; i < a.size(); ++i) {
    if (grade_of(i) % 2 == parity) out[i] = a[i];
  }
  return Multivector(a.signature(), std::span<const double>(out.data(), a.size()));
}
}  // namespace

Multivector even_part(const Multivector& a) { return parity_part(a, 0); }
Multivector odd_part(const Multivector& a) { return parity_part(a, 1); }

Multivector commutator(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b) - geometric_product(b, a);
}

Multivector reverse(const Multivector& a) {
  std::array<double, kMaxBlades> out{};
  for (int i = 0; i < a.size(); ++i) {
    const int k = grade_of(i);
    out[i] = ((k * (k - 1) / 2) % 2 == 0) ? a[i] : -a[i];
  }
  return Multivector(a.signature(), std::span<const double>(out.data(), a.size()));
}

double max_abs(const Multivector& a) {
  double m = 0.0;
  for (double c : a.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

double max_abs_diff(const Multivector& a, const Multivector& b) {
  require_same(a, b, "max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool is_even(const Multivector& a, double tol) { return max_abs(odd_part(a)) <= tol; }

namespace {
std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string blade_name(unsigned mask) {
  std::string name;
  for (int k = 0; k < kMaxDimension; ++k) {
    if ((mask >> k) & 1u) {
      if (!name.empty()) name += '^';
      name += 'm';
      name += static_cast<char>('0' + k);
    }
  }
  return name;
}
}  // namespace

std::string to_string(const Multivector& a) {
  std::string out;
  for (int i = 0; i < a.size(); ++i) {
    const double c = a[i];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (i == 0) {
      out += format_number(mag);
    } else {
      if (mag != 1.0) out += format_number(mag) + "*";
      out += blade_name(i);
    }
  }
  return out.empty() ? "0" : out;
}

namespace sta {
namespace {

struct Constants {
  Signature sig{1, 3};
  Multivector one = Multivector::scalar(sig, 1.0);
  std::array<Multivector, 4> lower;
  std::array<Multivector, 4> upper;
  Multivector i;
  std::array<Multivector, 4> sigma_lower;
  std::array<Multivector, 4> sigma_upper;
  std::array<Multivector, 4> sigma_checked;
  Multivector e_plus;
  Multivector e_minus;

  Constants() {
    for (int mu = 0; mu < 4; ++mu) {
      lower[mu] = Multivector::basis_vector(sig, mu);
      upper[mu] = mu == 0 ? lower[mu] : -lower[mu];
    }
    i = upper[0] * upper[1] * upper[2] * upper[3];
    sigma_lower[0] = one;
    sigma_upper[0] = one;
    sigma_checked[0] = -one;
    for (int k = 1; k < 4; ++k) {
      sigma_lower[k] = lower[k] * lower[0];
      sigma_upper[k] = upper[k] * upper[0];
      sigma_checked[k] = sigma_lower[k];
    }
    e_plus = 0.5 * (one + sigma_lower[3]);
    e_minus = 0.5 * (one - sigma_lower[3]);
  }
};

const Constants& constants() {
  static const Constants c;
  return c;
}

void check_index(int a, int lo) {
  if (a < lo || a > 3) throw std::out_of_range("spacetime index out of range");
}

}  // namespace

Signature signature() { return constants().sig; }
const Multivector& one() { return constants().one; }
const Multivector& m(int mu) {
  check_index(mu, 0);
  return constants().lower[mu];
}
const Multivector& m_up(int mu) {
  check_index(mu, 0);
  return constants().upper[mu];
}
const Multivector& pseudoscalar() { return constants().i; }
const Multivector& sigma(int a) {
  check_index(a, 0);
  return constants().sigma_lower[a];
}
const Multivector& sigma_up(int a) {
  check_index(a, 0);
  return constants().sigma_upper[a];
}
const Multivector& sigma_check(int a) {
  check_index(a, 0);
  return constants().sigma_checked[a];
}
const Multivector& e_plus() { return constants().e_plus; }
const Multivector& e_minus() { return constants().e_minus; }

}  // namespace sta

namespace {

// Extends a generator assignment multiplicatively: blade e_i e_j ... maps to
// image_i image_j ... . Only a homomorphism when the images satisfy the
// source algebra's relations, which the callers guarantee.
Multivector map_generators(const Multivector& source, std::span<const Multivector> images,
                           Signature target) {
  Multivector out(target);
  for (int mask = 0; mask < source.size(); ++mask) {
    const double c = source[mask];
    if (c == 0.0) continue;
    Multivector term = Multivector::scalar(target, c);
    for (int k = 0; k < source.signature().dimension(); ++k) {
      if ((mask >> k) & 1) term = term * images[k];
    }
    out += term;
  }
  return out;
}

}  // namespace

Multivector embed_pauli(const Multivector& pauli) {
  if (pauli.signature() != Signature(3, 0)) {
    throw SignatureError("embed_pauli expects Cl(3,0), got " + to_string(pauli.signature()));
  }
  const std::array<Multivector, 3> images{sta::sigma_up(1), sta::sigma_up(2), sta::sigma_up(3)};
  return map_generators(pauli, images, sta::signature());
}

Multivector embed_quaternion(const Multivector& quaternion) {
  if (quaternion.signature() != Signature(0, 2)) {
    throw SignatureError("embed_quaternion expects Cl(0,2), got " +
                         to_string(quaternion.signature()));
  }
  const Multivector& i = sta::pseudoscalar();
  const std::array<Multivector, 2> images{i * sta::sigma_up(1), i * sta::sigma_up(2)};
  return map_generators(quaternion, images, sta::signature());
}

Multivector quaternion_to_pauli(const Multivector& quaternion) {
  if (quaternion.signature() != Signature(0, 2)) {
    throw SignatureError("quaternion_to_pauli expects Cl(0,2), got " +
                         to_string(quaternion.signature()));
  }
  const Signature pauli(3, 0);
  const Multivector i = Multivector::blade(pauli, 0b111);
  const std::array<Multivector, 2> images{i * Multivector::basis_vector(pauli, 0),
                                          i * Multivector::basis_vector(pauli, 1)};
  return map_generators(quaternion, images, pauli);
}

int quaternion_orientation_sign() {
  const Signature h(0, 2);
  const Multivector ij = embed_quaternion(Multivector::blade(h, 0b11));
  const Multivector k = sta::pseudoscalar() * sta::sigma_up(3);
  if (max_abs_diff(ij, k) == 0.0) return 1;
  if (max_abs_diff(ij, -k) == 0.0) return -1;
  return 0;
}

}  // namespace spinor_forge
