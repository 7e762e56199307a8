#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unirenorm {

/// Working real scalar. Expression templates are off so every temporary is a
/// fully rounded value and results do not depend on expression shape.
using BigReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/// Base class for every mathematical failure the library reports (escape,
/// non-renormalizable input, precision exhaustion, ...). Usage errors use
/// std::invalid_argument instead.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultPrecisionBits = 256;

/// Sets the session precision. Mantissas are allocated with at least `bits`
/// bits (MPFR granularity is decimal digits, so the actual size can be a few
/// bits larger). Values created earlier keep their own precision.
void set_precision_bits(int bits);
int precision_bits();

/// RAII override of the session precision, used by reference evaluators.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(int bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  int saved_;
};

/// Copies `x` into a value carrying the current session precision.
BigReal lift(const BigReal& x);

/// 2^e at working precision.
BigReal pow2(int e);

/// Mantissa size in bits of a particular value.
long mantissa_bits(const BigReal& x);

int sign(const BigReal& x);

/// Real k-th root for odd k (keeps sign) and for even k of x >= 0.
BigReal real_root(const BigReal& x, int k);

/// x^n by square-and-multiply. Jets use the same schedule, so the constant
/// term of a jet power rounds exactly like the scalar power.
template <typename T>
T ipow(const T& x, int n) {
  if (n < 0) throw std::invalid_argument("ipow: negative exponent");
  T result = x;
  bool have = false;
  T base = x;
  while (n > 0) {
    if (n & 1) {
      result = have ? T(result * base) : base;
      have = true;
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  if (!have) throw std::invalid_argument("ipow: zero exponent");
  return result;
}

/// Decimal text with enough digits to round-trip exactly.
std::string to_decimal(const BigReal& x);
/// Decimal text with a fixed number of significant digits (plot output).
std::string to_decimal(const BigReal& x, int significant_digits);
BigReal parse_decimal(std::string_view text);

/// Truncated Taylor polynomial sum_k coeffs[k] z^k, k = 0..max_order.
template <typename Scalar>
class BasicJet {
 public:
  BasicJet() = default;
  explicit BasicJet(int max_order) : coeffs_(static_cast<std::size_t>(max_order) + 1, Scalar(0)) {
    if (max_order < 0) throw std::invalid_argument("jet order must be >= 0");
  }
  explicit BasicJet(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("jet needs at least one coefficient");
  }

  static BasicJet constant(const Scalar& value, int max_order) {
    BasicJet j(max_order);
    j.coeffs_[0] = value;
    return j;
  }
  /// The jet of z -> scale * z.
  static BasicJet linear(const Scalar& scale, int max_order) {
    BasicJet j(max_order);
    if (max_order >= 1) j.coeffs_[1] = scale;
    return j;
  }
  static BasicJet identity(int max_order) { return linear(Scalar(1), max_order); }

  int max_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Scalar& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Scalar& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  std::span<const Scalar> coeffs() const { return coeffs_; }

  friend BasicJet operator+(const BasicJet& a, const BasicJet& b) {
    check_orders(a, b);
    BasicJet r(a.max_order());
    for (int k = 0; k <= a.max_order(); ++k) r[k] = a[k] + b[k];
    return r;
  }
  friend BasicJet operator+(const BasicJet& a, const Scalar& s) {
    BasicJet r = a;
    r[0] = r[0] + s;
    return r;
  }
  friend BasicJet operator*(const BasicJet& a, const BasicJet& b) {
    check_orders(a, b);
    const int n = a.max_order();
    BasicJet r(n);
    for (int k = 0; k <= n; ++k) {
      Scalar acc = a[0] * b[k];
      for (int i = 1; i <= k; ++i) acc = acc + a[i] * b[k - i];
      r[k] = acc;
    }
    return r;
  }
  friend BasicJet operator*(const BasicJet& a, const Scalar& s) {
    BasicJet r = a;
    for (auto& c : r.coeffs_) c = c * s;
    return r;
  }
  friend BasicJet operator/(const BasicJet& a, const Scalar& s) {
    BasicJet r = a;
    for (auto& c : r.coeffs_) c = c / s;
    return r;
  }
  friend bool operator==(const BasicJet& a, const BasicJet& b) { return a.coeffs_ == b.coeffs_; }

  /// Horner evaluation of the truncated polynomial.
  Scalar eval(const Scalar& x) const {
    Scalar acc = coeffs_.back();
    for (int k = max_order() - 1; k >= 0; --k) acc = acc * x + coeffs_[static_cast<std::size_t>(k)];
    return acc;
  }

 private:
  static void check_orders(const BasicJet& a, const BasicJet& b) {
    if (a.max_order() != b.max_order()) throw std::invalid_argument("jet max_order mismatch");
  }

  std::vector<Scalar> coeffs_;
};

using Jet = BasicJet<BigReal>;

/// Jet of z^d + c; d even and >= 2, max_order >= d.
Jet jet_of_power_map(int degree, const BigReal& c, int max_order);

/// Truncated polynomial composition outer(inner(z)).
template <typename Scalar>
BasicJet<Scalar> jet_compose(const BasicJet<Scalar>& outer, const BasicJet<Scalar>& inner) {
  if (outer.max_order() != inner.max_order()) throw std::invalid_argument("jet max_order mismatch");
  const int n = outer.max_order();
  BasicJet<Scalar> acc = BasicJet<Scalar>::constant(outer[n], n);
  for (int k = n - 1; k >= 0; --k) acc = acc * inner + outer[k];
  return acc;
}

/// Least-squares line through (x_i, y_i).
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::size_t points = 0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace unirenorm
