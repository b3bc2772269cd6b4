#include "fthresh/exactnum.hpp"

#include <cstdlib>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "fthresh/errors.hpp"

namespace fthresh {

namespace {

std::mutex& budget_mutex() {
  static std::mutex m;
  return m;
}

Budget& budget_storage() {
  static Budget budget = [] {
    Budget b;
    if (const char* env = std::getenv("FT_BUDGET")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) b.max_steps = v;
    }
    return b;
  }();
  return budget;
}

}  // namespace

Budget default_budget() {
  std::lock_guard lock(budget_mutex());
  return budget_storage();
}

void set_default_budget(Budget budget) {
  if (budget.max_steps == 0) {
    throw std::invalid_argument("budget must be positive");
  }
  std::lock_guard lock(budget_mutex());
  budget_storage() = budget;
}

BigRational::BigRational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

BigRational BigRational::from_mpz(const mpz_class& numerator,
                                  const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  BigRational r;
  r.value_ = mpq_class(numerator, denominator);
  r.value_.canonicalize();
  return r;
}

BigRational BigRational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return from_mpz(mpz_class(s, 10), 1);
    }
    return from_mpz(mpz_class(s.substr(0, slash), 10),
                    mpz_class(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

BigRational BigRational::operator-() const {
  BigRational r;
  r.value_ = -value_;
  return r;
}

BigRational BigRational::pow(long exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw std::domain_error("division by zero");
    return BigRational(1) / pow(-exponent);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(),
             static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(),
             static_cast<unsigned long>(exponent));
  return from_mpz(n, d);
}

BigRational BigRational::abs() const { return sign() < 0 ? -*this : *this; }

mpz_class BigRational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

mpz_class BigRational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

std::string BigRational::to_string() const {
  if (is_integer()) return numerator();
  return numerator() + "/" + denominator();
}

std::string BigRational::to_fraction_string() const {
  return numerator() + "/" + denominator();
}

std::string BigRational::to_decimal(int places) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  // round half away from zero
  const mpz_class n = abs().num() * scale * 2 + den();
  mpz_class scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), n.get_mpz_t(), mpz_class(den() * 2).get_mpz_t());
  std::string digits = scaled.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (sign() < 0 && scaled != 0) digits.insert(0, "-");
  return digits;
}

std::ostream& operator<<(std::ostream& os, const BigRational& value) {
  return os << value.to_string();
}

BigRational min(const BigRational& a, const BigRational& b) { return b < a ? b : a; }
BigRational max(const BigRational& a, const BigRational& b) { return a < b ? b : a; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("characteristic " + std::to_string(p) +
                                " is not a prime below 2^31");
  }
}

FpElement PrimeField::inv(FpElement a) const {
  if (a.residue == 0) throw std::domain_error("inversion of zero in F_p");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a.residue;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  return element(t);
}

FpElement PrimeField::pow(FpElement a, std::uint64_t e) const noexcept {
  FpElement result{1 % p_};
  while (e > 0) {
    if (e & 1u) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

}  // namespace fthresh
