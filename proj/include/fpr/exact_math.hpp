#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpr {

using BigInt = boost::multiprecision::cpp_int;

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Exact fraction, always in lowest terms with a positive denominator.
class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  BigRational(long long v) : num_(v), den_(1) {}  // NOLINT(implicit)
  BigRational(const BigInt& v) : num_(v), den_(1) {}  // NOLINT(implicit)
  BigRational(BigInt num, BigInt den);

  // Parses "a/b" or "a".
  static BigRational parse(const std::string& s);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  std::string str() const;

  BigRational operator-() const;
  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

 private:
  void normalize();
  void check() const;

  BigInt num_;
  BigInt den_;
};

// Integer power; negative exponents invert (base must be nonzero then).
BigRational pow(const BigRational& base, long long e);
int cmp(const BigRational& a, const BigRational& b);

BigInt ipow(const BigInt& base, unsigned e);
BigInt binomial(long long n, long long k);  // 0 when k < 0 or k > n

// Number of m-dimensional subspaces of an n-dimensional space over GF(q).
BigInt gaussian_binomial(unsigned n, unsigned m, const BigInt& q);

bool is_prime(std::uint64_t n);

}  // namespace fpr
