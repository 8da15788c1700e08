#include "fpr/exact_math.hpp"

#include <cassert>

namespace fpr {

BigRational::BigRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw DivisionByZero();
  normalize();
}

void BigRational::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
  check();
}

void BigRational::check() const {
#ifndef NDEBUG
  assert(den_ > 0);
  assert(boost::multiprecision::gcd(num_, den_) == 1);
#endif
}

BigRational BigRational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(s));
    return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const DivisionByZero&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

std::string BigRational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

BigRational BigRational::operator-() const {
  BigRational r = *this;
  r.num_ = -r.num_;
  return r;
}

BigRational& BigRational::operator+=(const BigRational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator*=(const BigRational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.num_ == 0) throw DivisionByZero();
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
  BigInt l = a.num_ * b.den_;
  BigInt r = b.num_ * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int cmp(const BigRational& a, const BigRational& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

BigRational pow(const BigRational& base, long long e) {
  if (e < 0) {
    if (base.num() == 0) throw DivisionByZero();
    return pow(BigRational(1) / base, -e);
  }
  BigInt n = boost::multiprecision::pow(base.num(), static_cast<unsigned>(e));
  BigInt d = boost::multiprecision::pow(base.den(), static_cast<unsigned>(e));
  return BigRational(n, d);
}

BigInt ipow(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (long long j = 1; j <= k; ++j) {
    acc *= (n - k + j);
    acc /= j;
  }
  return acc;
}

BigInt gaussian_binomial(unsigned n, unsigned m, const BigInt& q) {
  if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be at least 2");
  if (m > n) return 0;
  // acc runs through [n-m+j choose j]_q, each an integer.
  BigInt acc = 1;
  for (unsigned j = 1; j <= m; ++j) {
    acc *= ipow(q, n - m + j) - 1;
    BigInt d = ipow(q, j) - 1;
    assert(acc % d == 0);
    acc /= d;
  }
  return acc;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace fpr
