// Exact rational numbers with an inline small representation.
//
// Values whose numerator and denominator fit in 62 bits are stored inline as
// a pair of int64; anything larger spills into a heap-allocated mpq_class.
// The representation is canonical: lowest terms, positive denominator, and a
// value is big only if it does not fit the small range.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace fdalg {

class Rational {
 public:
  Rational() noexcept = default;
  Rational(long long n);  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  bool is_small() const noexcept { return !big_; }
  int sign() const;

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;
  std::string str() const;

  // Accepts "a", "-a", "a/b" with decimal integers of any length.
  static Rational parse(std::string_view text);

  Rational inv() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  // Small-path accessors; only valid when is_small().
  std::int64_t small_num() const noexcept { return num_; }
  std::int64_t small_den() const noexcept { return den_; }

 private:
  static Rational from_i128(__int128 n, __int128 d);
  void demote();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fdalg
