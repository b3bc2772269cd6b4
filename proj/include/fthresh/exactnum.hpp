#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fthresh {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : value_(value) {}  // NOLINT: implicit by design of arithmetic
  BigRational(int value) : value_(value) {}   // NOLINT
  BigRational(long numerator, long denominator);
  static BigRational from_mpz(const mpz_class& numerator,
                              const mpz_class& denominator);

  /// Accepts "n", "-n", "n/d".
  static BigRational parse(std::string_view text);

  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }
  const mpz_class& num() const { return value_.get_num(); }
  const mpz_class& den() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  BigRational operator-() const;

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigRational& a,
                                          const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  /// Integer power; negative exponents invert (zero base throws).
  BigRational pow(long exponent) const;
  BigRational abs() const;
  mpz_class floor() const;
  mpz_class ceil() const;

  /// "n" for integers, otherwise "n/d".
  std::string to_string() const;
  /// Always "n/d", used for machine-readable output.
  std::string to_fraction_string() const;
  /// Rounded decimal with a fixed number of places, computed exactly.
  std::string to_decimal(int places) const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const BigRational& value);

BigRational min(const BigRational& a, const BigRational& b);
BigRational max(const BigRational& a, const BigRational& b);

/// A residue modulo the prime carried by its PrimeField; always in [0, p-1].
struct FpElement {
  std::uint32_t residue = 0;
  friend bool operator==(FpElement, FpElement) = default;
};

bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for a prime 2 <= p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }

  FpElement element(std::int64_t value) const noexcept {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return FpElement{static_cast<std::uint32_t>(r)};
  }

  FpElement add(FpElement a, FpElement b) const noexcept {
    std::uint32_t s = a.residue + b.residue;
    return FpElement{s >= p_ ? s - p_ : s};
  }
  FpElement sub(FpElement a, FpElement b) const noexcept {
    return FpElement{a.residue >= b.residue ? a.residue - b.residue
                                            : a.residue + p_ - b.residue};
  }
  FpElement neg(FpElement a) const noexcept {
    return FpElement{a.residue == 0 ? 0 : p_ - a.residue};
  }
  FpElement mul(FpElement a, FpElement b) const noexcept {
    return FpElement{static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a.residue) * b.residue % p_)};
  }
  /// Throws std::domain_error on zero.
  FpElement inv(FpElement a) const;
  FpElement pow(FpElement a, std::uint64_t e) const noexcept;

  // Raw residue helpers used by the polynomial kernels.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    return add(FpElement{a}, FpElement{b}).residue;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return sub(FpElement{a}, FpElement{b}).residue;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return mul(FpElement{a}, FpElement{b}).residue;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept {
    return neg(FpElement{a}).residue;
  }
  std::uint32_t inv(std::uint32_t a) const { return inv(FpElement{a}).residue; }

 private:
  std::uint32_t p_;
};

}  // namespace fthresh
