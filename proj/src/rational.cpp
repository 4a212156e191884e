#include "fdalg/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace fdalg {
namespace {

constexpr std::int64_t kSmallMax = std::int64_t{1} << 62;

bool fits(__int128 v) { return v <= kSmallMax && v >= -kSmallMax; }

unsigned __int128 uabs(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
}

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  std::uint64_t x = a < 0 ? static_cast<std::uint64_t>(-a) : static_cast<std::uint64_t>(a);
  std::uint64_t y = b < 0 ? static_cast<std::uint64_t>(-b) : static_cast<std::uint64_t>(b);
  while (y != 0) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  return static_cast<std::int64_t>(x);
}

mpz_class to_mpz(__int128 v) {
  unsigned __int128 m = uabs(v);
  auto hi = static_cast<std::uint64_t>(m >> 64);
  auto lo = static_cast<std::uint64_t>(m);
  mpz_class r;
  std::uint64_t words[2] = {lo, hi};
  mpz_import(r.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (v < 0) r = -r;
  return r;
}

}  // namespace

Rational::Rational(long long n) : num_(n), den_(1) {
  if (!fits(n)) {
    big_ = std::make_unique<mpq_class>(mpz_class(std::to_string(n)));
    num_ = 0;
  }
}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) {
  big_ = std::make_unique<mpq_class>(q);
  big_->canonicalize();
  demote();
}

void Rational::demote() {
  if (!big_) return;
  const mpz_class& n = big_->get_num();
  const mpz_class& d = big_->get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    long nn = n.get_si();
    long dd = d.get_si();
    if (fits(nn) && fits(dd)) {
      num_ = nn;
      den_ = dd;
      big_.reset();
    }
  }
}

Rational Rational::from_i128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Rational r;
  if (n == 0) return r;
  unsigned __int128 g = gcd128(uabs(n), static_cast<unsigned __int128>(d));
  if (g > 1) {
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
  }
  if (fits(n) && fits(d)) {
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  r.big_ = std::make_unique<mpq_class>(std::move(q));
  r.num_ = 0;
  r.den_ = 1;
  return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
  return q;
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(ns) || !valid_int(ds)) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (ns[0] == '+') ns.erase(0, 1);
  if (ds[0] == '+') ds.erase(0, 1);
  mpz_class n(ns), d(ds);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(mpq_class(n, d));
}

Rational Rational::inv() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (big_) return Rational(1 / *big_);
  return from_i128(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(static_cast<__int128>(a.num_) + b.num_, 1);
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return Rational::from_i128(n, d);
  }
  return Rational(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a) {
  if (!a.big_) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  return Rational(-*a.big_);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(static_cast<__int128>(a.num_) - b.num_, 1);
    __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return Rational::from_i128(n, d);
  }
  return Rational(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(static_cast<__int128>(a.num_) * b.num_, 1);
    std::int64_t g1 = gcd64(a.num_, b.den_);
    std::int64_t g2 = gcd64(b.num_, a.den_);
    __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return Rational::from_i128(n, d);
  }
  return Rational(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: big values never equal small ones
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_)
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace fdalg
