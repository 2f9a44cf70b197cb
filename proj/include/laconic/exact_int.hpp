#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace laconic {

// Arbitrary-precision nonnegative integer. Every numeric value in the library
// (binomials, lacunary sums, weights, objectives) lives here; no floating
// point anywhere. Subtraction that would go negative signals an arithmetic
// bug upstream and throws.
class ExactInt {
 public:
  ExactInt() : v_(0) {}
  ExactInt(unsigned int x) : v_(static_cast<unsigned long>(x)) {}
  ExactInt(unsigned long x) : v_(x) {}
  ExactInt(unsigned long long x) {
    v_ = static_cast<unsigned long>(x >> 32);
    v_ <<= 32;
    v_ += static_cast<unsigned long>(x & 0xffffffffull);
  }
  ExactInt(int x) : v_(x) {
    if (x < 0) throw std::domain_error("ExactInt: negative literal");
  }
  ExactInt(long x) : v_(x) {
    if (x < 0) throw std::domain_error("ExactInt: negative literal");
  }

  static ExactInt from_decimal(const std::string& s) {
    if (s.empty() || s[0] == '-')
      throw std::domain_error("ExactInt: bad decimal '" + s + "'");
    ExactInt r;
    if (r.v_.set_str(s, 10) != 0)
      throw std::domain_error("ExactInt: bad decimal '" + s + "'");
    return r;
  }

  static ExactInt pow2(unsigned int e) {
    ExactInt r;
    mpz_ui_pow_ui(r.v_.get_mpz_t(), 2, e);
    return r;
  }

  ExactInt& operator+=(const ExactInt& o) {
    v_ += o.v_;
    return *this;
  }
  ExactInt& operator-=(const ExactInt& o) {
    if (v_ < o.v_)
      throw std::domain_error("ExactInt: subtraction would go negative");
    v_ -= o.v_;
    return *this;
  }
  ExactInt& operator*=(const ExactInt& o) {
    v_ *= o.v_;
    return *this;
  }

  friend ExactInt operator+(ExactInt a, const ExactInt& b) { return a += b; }
  friend ExactInt operator-(ExactInt a, const ExactInt& b) { return a -= b; }
  friend ExactInt operator*(ExactInt a, const ExactInt& b) { return a *= b; }

  friend bool operator==(const ExactInt& a, const ExactInt& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const ExactInt& a,
                                          const ExactInt& b) {
    int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  bool is_zero() const { return v_ == 0; }
  std::string str() const { return v_.get_str(); }

  // Narrowing accessor for values known to be small (level counts, caps).
  unsigned long long to_u64() const {
    if (!v_.fits_ulong_p()) {
      // 32-bit ulong platforms would land here for large values; we only
      // target LP64 where ulong == u64.
      throw std::overflow_error("ExactInt: value exceeds 64 bits");
    }
    return v_.get_ui();
  }

 private:
  mpz_class v_;
};

}  // namespace laconic
