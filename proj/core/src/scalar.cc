#include "sharpcsp/scalar.h"

#include <cctype>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace sharpcsp {
namespace {

using u128 = unsigned __int128;

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_i64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class mpz_from_i128(__int128 v) {
  const bool negative = v < 0;
  u128 mag = negative ? -static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(mag >> 64));
  mpz_class lo(static_cast<unsigned long>(mag & 0xffffffffffffffffULL));
  mpz_class out = (hi << 64) + lo;
  return negative ? mpz_class(-out) : out;
}

bool is_integer_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const mpq_class& value) {
  mpq_class v = value;
  v.canonicalize();
  if (v.get_num().fits_slong_p() && v.get_den().fits_slong_p()) {
    num_ = v.get_num().get_si();
    den_ = v.get_den().get_si();
  } else {
    big_ = std::make_shared<const mpq_class>(std::move(v));
  }
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Rational out;
  if (num == 0) return out;
  u128 mag = num < 0 ? -static_cast<u128>(num) : static_cast<u128>(num);
  u128 g = gcd_u128(mag, static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (fits_i64(num) && fits_i64(den)) {
    out.num_ = static_cast<std::int64_t>(num);
    out.den_ = static_cast<std::int64_t>(den);
    return out;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  out.big_ = std::make_shared<const mpq_class>(std::move(q));
  return out;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num_text = text.substr(0, slash);
  std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!is_integer_literal(num_text) || !is_integer_literal(den_text) ||
      den_text.front() == '-' || den_text.front() == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  }
  std::string n(num_text.front() == '+' ? num_text.substr(1) : num_text);
  mpz_class num(n, 10);
  mpz_class den{std::string(den_text), 10};
  if (den == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) +
                                "'");
  }
  return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpq_set_si(q.get_mpq_t(), num_, static_cast<unsigned long>(den_));
  return q;
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
  if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
  }
  return Rational(mpq_class(-to_mpq()));
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (!big_) return from_wide(den_, num_);
  return Rational(mpq_class(1 / *big_));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
    }
    return Rational::from_wide(
        static_cast<__int128>(a.num_) * b.den_ +
            static_cast<__int128>(b.num_) * a.den_,
        static_cast<__int128>(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_sub_overflow(a.num_, b.num_, &s)) return Rational(s);
    }
    return Rational::from_wide(
        static_cast<__int128>(a.num_) * b.den_ -
            static_cast<__int128>(b.num_) * a.den_,
        static_cast<__int128>(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
    }
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_,
                               static_cast<__int128>(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_) {
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_,
                               static_cast<__int128>(a.den_) * b.num_);
  }
  return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str());
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL +
              (h << 6) + (h >> 2));
}

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  if (s.back() != 'i') return Scalar(Rational::parse(s));
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if (body[i] == '+' || body[i] == '-') {
      split = i;
      break;
    }
  }
  std::string re_text = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_text =
      split == std::string::npos ? body : body.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = Rational::parse(im_text);
  }
  Rational re = re_text.empty() ? Rational() : Rational::parse(re_text);
  return Scalar(re, im);
}

std::string Scalar::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  if (re_.is_zero()) return im_.to_string() + "i";
  std::string out = re_.to_string();
  if (im_.sign() > 0) out += "+";
  return out + im_.to_string() + "i";
}

Scalar Scalar::pow(unsigned exponent) const {
  Scalar result(1);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ + b.re_);
  return Scalar(a.re_ + b.re_, a.im_ + b.im_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ - b.re_);
  return Scalar(a.re_ - b.re_, a.im_ - b.im_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ * b.re_);
  return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.im_.is_zero()) return Scalar(a.re_ / b.re_, a.im_ / b.re_);
  Rational norm = b.re_ * b.re_ + b.im_ * b.im_;
  Scalar num = a * b.conj();
  return Scalar(num.re_ / norm, num.im_ / norm);
}

Scalar& Scalar::operator+=(const Scalar& b) {
  re_ += b.re_;
  if (!b.im_.is_zero() || !im_.is_zero()) im_ += b.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) {
  re_ -= b.re_;
  if (!b.im_.is_zero() || !im_.is_zero()) im_ -= b.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& b) {
  if (im_.is_zero() && b.im_.is_zero()) {
    re_ *= b.re_;
    return *this;
  }
  return *this = *this * b;
}

std::size_t Scalar::hash() const {
  std::size_t h = re_.hash();
  return h ^ (im_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace sharpcsp
