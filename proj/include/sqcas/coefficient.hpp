#pragma once

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <string>

namespace sqcas {

/// Exact complex rational `re + im*i` backed by GMP rationals.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long value) : re_(value), im_(0) {}  // NOLINT(google-explicit-constructor)
  Coefficient(mpq_class re, mpq_class im = 0);

  static Coefficient imaginary_unit() { return Coefficient(0, 1); }
  static Coefficient rational(long num, long den);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Coefficient conj() const { return Coefficient(re_, -im_); }
  /// Multiplicative inverse; throws std::domain_error on zero.
  Coefficient inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  Coefficient operator-() const { return Coefficient(-re_, -im_); }
  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  Coefficient& operator*=(const Coefficient& o);

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// "3", "3/2", "-1/4".
std::string to_string(const mpq_class& q);

}  // namespace sqcas
