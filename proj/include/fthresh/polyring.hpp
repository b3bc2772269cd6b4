#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fthresh/exactnum.hpp"

namespace fthresh {

/// User-visible cap on the number of ring variables.
inline constexpr std::size_t kMaxVariables = 8;
/// Storage slots; the extra two hold internal tag variables (elimination,
/// Rabinowitsch) adjoined on top of a full-width user ring.
inline constexpr std::size_t kExponentSlots = kMaxVariables + 2;

/// Exponent vector u of the monomial x^u. Fixed storage; the logical length
/// equals the number of variables of the owning ring.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t length);
  ExponentVector(std::initializer_list<std::uint32_t> exponents);
  explicit ExponentVector(std::span<const std::uint32_t> exponents);

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) noexcept { return e_[i]; }
  const std::uint32_t* begin() const noexcept { return e_.data(); }
  const std::uint32_t* end() const noexcept { return e_.data() + n_; }

  std::uint64_t degree() const noexcept {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < n_; ++i) d += e_[i];
    return d;
  }
  bool is_one() const noexcept { return degree() == 0; }

  /// this | other, i.e. componentwise <=.
  bool divides(const ExponentVector& other) const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
      if (e_[i] > other.e_[i]) return false;
    }
    return true;
  }
  bool coprime(const ExponentVector& other) const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
      if (e_[i] != 0 && other.e_[i] != 0) return false;
    }
    return true;
  }

  friend ExponentVector operator*(ExponentVector a, const ExponentVector& b) noexcept {
    for (std::size_t i = 0; i < a.n_; ++i) a.e_[i] += b.e_[i];
    return a;
  }
  /// Exponent difference; caller guarantees divisor | *this.
  ExponentVector quotient(const ExponentVector& divisor) const noexcept {
    ExponentVector r = *this;
    for (std::size_t i = 0; i < n_; ++i) r.e_[i] -= divisor.e_[i];
    return r;
  }
  ExponentVector lcm(const ExponentVector& other) const noexcept {
    ExponentVector r = *this;
    for (std::size_t i = 0; i < n_; ++i) r.e_[i] = std::max(e_[i], other.e_[i]);
    return r;
  }
  ExponentVector scaled(std::uint64_t factor) const;

  /// Insert `count` zero exponents at the front (tag variables).
  ExponentVector shifted(std::size_t count) const;
  /// Drop the first `count` exponents.
  ExponentVector dropped(std::size_t count) const;

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) noexcept {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  /// Plain lexicographic comparison on the raw exponents, for containers.
  friend std::strong_ordering operator<=>(const ExponentVector& a,
                                          const ExponentVector& b) noexcept {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.e_ <=> b.e_;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n_; ++i) {
      h ^= e_[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

  std::string to_string() const;

 private:
  std::array<std::uint32_t, kExponentSlots> e_{};
  std::uint8_t n_ = 0;
};

struct ExponentHash {
  std::size_t operator()(const ExponentVector& v) const noexcept { return v.hash(); }
};

enum class OrderKind { grevlex, lex, elimination };

/// Monomial order with variable precedence equal to declaration order.
/// `elimination` is a block order: the first `block` variables compared by
/// grevlex first, ties broken by grevlex on the rest.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t block = 0;

  std::strong_ordering compare(const ExponentVector& u,
                               const ExponentVector& v) const noexcept;
  bool less(const ExponentVector& u, const ExponentVector& v) const noexcept {
    return compare(u, v) == std::strong_ordering::less;
  }
  std::string name() const;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

/// Compares exponent vectors; throws std::invalid_argument on length mismatch.
std::strong_ordering order_compare(const ExponentVector& u, const ExponentVector& v,
                                   const MonomialOrder& order);

struct Term {
  ExponentVector exponents;
  std::uint32_t coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Raw sparse representation: nonzero coefficients, strictly descending
/// exponents under the owning ring's order.
using Terms = std::vector<Term>;

class RingContext;
using Ring = std::shared_ptr<const RingContext>;
class Polynomial;

/// F_p[x_1..x_d] / (relations) with a fixed monomial order. Immutable.
class RingContext : public std::enable_shared_from_this<RingContext> {
 public:
  static Ring make(std::uint32_t characteristic, std::vector<std::string> variables,
                   MonomialOrder order = {});

  /// Same variables and order with the given relations (raw terms in this
  /// ring's layout). Zero relations are rejected.
  Ring with_relations(std::vector<Terms> relations) const;
  /// Same presentation under a different order.
  Ring with_order(MonomialOrder order) const;
  /// Relation-free ring with `names` prepended as new leading variables;
  /// used for elimination and Rabinowitsch constructions.
  Ring with_tag_variables(const std::vector<std::string>& names,
                          MonomialOrder order) const;
  /// Relation-free copy of this ring (the ambient polynomial ring).
  Ring ambient() const;

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
  std::size_t num_variables() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<Terms>& relation_terms() const noexcept { return relations_; }
  bool has_relations() const noexcept { return !relations_.empty(); }
  std::vector<Polynomial> relations() const;

  /// Index of a variable name, or -1.
  int variable_index(std::string_view name) const;

  /// Structural identity of the presentation (p, variables, order, relations).
  const std::string& fingerprint() const noexcept { return fingerprint_; }

  bool same_as(const RingContext& other) const noexcept {
    return this == &other || fingerprint_ == other.fingerprint_;
  }

  /// Canonicalize raw terms: sort descending, merge, drop zeros.
  Terms canonicalize(Terms terms) const;
  std::string format_terms(const Terms& terms) const;

 private:
  RingContext(PrimeField field, std::vector<std::string> variables, MonomialOrder order,
              std::vector<Terms> relations);

  PrimeField field_;
  std::vector<std::string> variables_;
  MonomialOrder order_;
  std::vector<Terms> relations_;
  std::string fingerprint_;
};

void require_same_ring(const RingContext& a, const RingContext& b);

/// Sparse polynomial over F_p bound to a ring presentation.
class Polynomial {
 public:
  explicit Polynomial(Ring ring);
  Polynomial(Ring ring, Terms terms);  // canonicalizes

  static Polynomial constant(Ring ring, std::int64_t value);
  static Polynomial variable(Ring ring, std::size_t index);
  static Polynomial monomial(Ring ring, const ExponentVector& exponents,
                             std::int64_t coeff = 1);
  /// Trusts that `terms` is already canonical.
  static Polynomial from_canonical(Ring ring, Terms terms);

  const Ring& ring() const noexcept { return ring_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Single term (coefficient arbitrary nonzero).
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_homogeneous() const noexcept;
  const Term& leading_term() const;
  std::uint64_t total_degree() const noexcept;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(std::uint32_t coeff) const;
  Polynomial monic() const;

  /// Same terms, viewed in another ring with identical variable layout.
  Polynomial rebind(Ring ring) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_->same_as(*b.ring_) && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  Ring ring_;
  Terms terms_;
};

/// Exact power by repeated squaring.
Polynomial pow(const Polynomial& f, std::uint64_t n);
/// Term-wise Frobenius: sum c_u^q x^{qu} = f^q when q is a power of p.
/// Throws std::invalid_argument when q is not a power of the characteristic.
Polynomial frobenius_pow(const Polynomial& f, std::uint64_t q);

bool is_power_of(std::uint64_t q, std::uint64_t p) noexcept;

/// Finitely generated ideal; generators keep input order, zeros dropped.
class Ideal {
 public:
  explicit Ideal(Ring ring);
  Ideal(Ring ring, std::vector<Polynomial> generators);

  static Ideal unit(Ring ring);
  static Ideal maximal_at_origin(Ring ring);

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  std::size_t num_generators() const noexcept { return gens_.size(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_monomial() const noexcept;
  bool is_homogeneous() const noexcept;

  /// Canonical text of the generator list, independent of input order.
  std::string fingerprint() const;
  std::string to_string() const;

 private:
  Ring ring_;
  std::vector<Polynomial> gens_;
};

Ideal operator+(const Ideal& a, const Ideal& b);

}  // namespace fthresh
