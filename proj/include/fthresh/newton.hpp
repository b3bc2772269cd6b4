#pragma once

#include <cstdint>
#include <vector>

#include "fthresh/errors.hpp"
#include "fthresh/exactnum.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

/// Polyhedral routines are limited to this many variables.
inline constexpr std::size_t kMaxPolyhedralDimension = 4;

/// Monomial ideal in d variables, stored by its minimal generators
/// (an antichain, sorted lexicographically). No generators = zero ideal.
class MonomialIdeal {
 public:
  MonomialIdeal(std::size_t d, std::vector<ExponentVector> generators);

  /// Requires a relation-free ring and monomial generators.
  static MonomialIdeal from_ideal(const Ideal& ideal);
  static MonomialIdeal maximal(std::size_t d);
  /// (x_1^{a_1}, ..., x_d^{a_d})
  static MonomialIdeal diagonal(const std::vector<std::uint32_t>& exponents);

  Ideal to_ideal(const Ring& ring) const;

  std::size_t dimension() const noexcept { return d_; }
  const std::vector<ExponentVector>& generators() const noexcept { return gens_; }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit() const noexcept;
  bool contains(const ExponentVector& u) const noexcept;
  /// Every axis carries a pure-power generator.
  bool is_zero_dimensional() const noexcept;
  /// Exponent of the pure power of x_i in the ideal; requires zero-dimensional.
  std::vector<std::uint32_t> pure_powers() const;

  MonomialIdeal power(std::uint32_t r) const;
  MonomialIdeal bracket(std::uint64_t q) const;
  MonomialIdeal operator+(const MonomialIdeal& other) const;

  /// Exponents outside the ideal (zero-dimensional only), lexicographic.
  std::vector<ExponentVector> staircase() const;
  std::uint64_t colength() const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  std::size_t d_;
  std::vector<ExponentVector> gens_;
};

/// P(a) = {u >= 0 : <w, u> >= 1 for every facet w}. Facets are sorted
/// lexicographically; coordinate hyperplanes are implicit.
struct NewtonPolyhedron {
  std::size_t d = 0;
  std::vector<std::vector<BigRational>> facets;
};

/// Double description on the cone of valid inequalities.
NewtonPolyhedron newton_polyhedron(const MonomialIdeal& a);

/// min over facets of <w, u + (1,...,1)>.
BigRational lambda_shifted(const NewtonPolyhedron& P, const ExponentVector& u);

bool newton_member(const ExponentVector& u, const NewtonPolyhedron& P);
bool newton_member(const std::vector<BigRational>& u, const NewtonPolyhedron& P);

struct ThresholdWitness {
  BigRational value;
  ExponentVector argmax;
};

/// c^J(a) = max lambda(u) over exponents u with x^u not in J. J must be
/// zero-dimensional.
ThresholdWitness monomial_fthreshold(const MonomialIdeal& a, const MonomialIdeal& J);

/// fpt(a) = lambda(0).
BigRational monomial_fpt(const MonomialIdeal& a);

struct MonomialTestIdealReport {
  BigRational c;
  MonomialIdeal ideal;
};

/// tau(a^c) = (x^u : lambda(u) > c).
MonomialTestIdealReport test_ideal_monomial(const MonomialIdeal& a, const BigRational& c);

/// Sorted distinct values lambda(u) strictly below `bound`; a must be
/// zero-dimensional.
std::vector<BigRational> jumping_exponents(const MonomialIdeal& a, const BigRational& bound);

struct CovolumeReport {
  BigRational covolume;
  BigRational multiplicity;
  std::uint64_t colength = 0;
};

/// Volume of the orthant minus P(a), e(a) = d! * covolume, and the colength.
CovolumeReport covolume_mult(const MonomialIdeal& a);

/// max{r : a^r not in J^[q]} by dynamic programming over the staircase box
/// of J^[q]; independent of Gröbner bases.
std::uint64_t nu_monomial_oracle(const MonomialIdeal& a, const MonomialIdeal& J, std::uint64_t q,
                                 std::uint64_t max_cells = 20'000'000);

}  // namespace fthresh
