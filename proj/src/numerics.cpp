#include "unirenorm/numerics.hpp"

#include <cmath>
#include <mpfr.h>

namespace unirenorm {
namespace {

int g_precision_bits = kDefaultPrecisionBits;

unsigned digits10_for_bits(int bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

struct PrecisionInit {
  PrecisionInit() { BigReal::default_precision(digits10_for_bits(kDefaultPrecisionBits)); }
} const g_precision_init;

}  // namespace

void set_precision_bits(int bits) {
  if (bits < 64) throw std::invalid_argument("precision_bits must be >= 64");
  g_precision_bits = bits;
  BigReal::default_precision(digits10_for_bits(bits));
}

int precision_bits() { return g_precision_bits; }

ScopedPrecision::ScopedPrecision(int bits) : saved_(g_precision_bits) { set_precision_bits(bits); }
ScopedPrecision::~ScopedPrecision() { set_precision_bits(saved_); }

BigReal lift(const BigReal& x) { return BigReal(x, digits10_for_bits(g_precision_bits)); }

BigReal pow2(int e) {
  BigReal r(1);
  mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
  return r;
}

long mantissa_bits(const BigReal& x) { return static_cast<long>(mpfr_get_prec(x.backend().data())); }

int sign(const BigReal& x) { return mpfr_sgn(x.backend().data()); }

BigReal real_root(const BigReal& x, int k) {
  if (k < 1) throw std::invalid_argument("real_root: k must be >= 1");
  if (k % 2 == 0 && x < 0) throw DomainError("real_root: even root of a negative number");
  BigReal r;
  mpfr_rootn_ui(r.backend().data(), x.backend().data(), static_cast<unsigned long>(k), MPFR_RNDN);
  return r;
}

std::string to_decimal(const BigReal& x) {
  const long bits = mantissa_bits(x);
  const int digits = static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 2;
  return to_decimal(x, digits);
}

std::string to_decimal(const BigReal& x, int significant_digits) {
  if (significant_digits < 1) throw std::invalid_argument("need at least one significant digit");
  if (x == 0) return "0";
  // Scientific precision counts the digits after the point.
  return x.str(significant_digits - 1, std::ios_base::scientific);
}

BigReal parse_decimal(std::string_view text) {
  const std::string s(text);
  BigReal r;
  // mpfr_set_str returns 0 only when the whole string is a valid number.
  if (s.empty() || mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  return r;
}

Jet jet_of_power_map(int degree, const BigReal& c, int max_order) {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("degree must be even and >= 2");
  if (max_order < degree) throw std::invalid_argument("max_order must be >= degree");
  Jet j(max_order);
  j[0] = c;
  j[degree] = BigReal(1);
  return j;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  LineFit fit;
  fit.points = x.size();
  if (x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace unirenorm
