#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vfa {

/// Arbitrary-precision rational.
using Rational = mpq_class;

/// Raised for every contract violation in the library (bad input, mismatched
/// truncation, containment failure, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse "p", "-p" or "p/q" into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Exact element of Q(i).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// |s|^2, always exact.
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Integer power; negative exponents require a nonzero base.
  Scalar pow(long e) const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "3", "-1/2", "2*I", "(1/2+3/4*I)".  Parenthesised when both parts are
  /// nonzero so the result can be used as a product factor.
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Parse "p/q" or a pair ["re", "im"] style string "re,im".
Scalar parse_scalar(std::string_view text);

/// n! as a rational.
Rational factorial(unsigned n);
/// Binomial coefficient C(n, k) for 0 <= k <= n.
Rational binomial(unsigned n, unsigned k);

}  // namespace vfa
