#include "vfa/scalar.hpp"

#include <cctype>

namespace vfa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  auto num = trim(s.substr(0, slash));
  auto den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!valid_integer(num) || !valid_integer(den))
    throw Error("invalid rational literal '" + std::string(text) + "'");
  std::string n(num.front() == '+' ? num.substr(1) : num);
  std::string d(den.front() == '+' ? den.substr(1) : den);
  mpz_class dz(d);
  if (dz == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  Rational r(mpz_class(n), dz);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  Rational n = o.norm2();
  if (sgn(n) == 0) throw Error("division by zero scalar");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  Scalar result(1), base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string Scalar::str() const {
  if (is_real()) return re_.get_str();
  std::string imag;
  if (im_ == 1)
    imag = "I";
  else if (im_ == -1)
    imag = "-I";
  else
    imag = im_.get_str() + "*I";
  if (sgn(re_) == 0) return imag;
  std::string sep = sgn(im_) > 0 ? "+" : "";
  return "(" + re_.get_str() + sep + imag + ")";
}

Scalar parse_scalar(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) return Scalar(parse_rational(text));
  return Scalar(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return Rational(c);
}

}  // namespace vfa
