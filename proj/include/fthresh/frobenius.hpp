#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/errors.hpp"
#include "fthresh/exactnum.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

/// I^[q]: generated by the q-th powers of the generators of I.
Ideal bracket_power(const Ideal& ideal, std::uint64_t q);

/// I^r: all r-fold products of generators, deduplicated. I^0 = (1).
Ideal ideal_power(const Ideal& ideal, std::uint64_t r);

/// min{n : a^n ⊆ J}. Requires a ⊆ √J (checked).
std::uint64_t containment_exponent(const Ideal& a, const Ideal& J,
                                   Budget budget = default_budget());

/// max{r : a^r ⊄ J^[q]}, by the frontier algorithm. Throws PreconditionError
/// when a ⊄ √J or J is the unit ideal.
std::uint64_t nu(const Ideal& a, const Ideal& J, std::uint64_t q,
                 Budget budget = default_budget());

struct NuEntry {
  unsigned e;
  std::uint64_t q;
  std::uint64_t nu;
  friend bool operator==(const NuEntry&, const NuEntry&) = default;
};

struct NuSequence {
  std::string ring_fingerprint;
  Ideal numerator;
  Ideal denominator;
  std::vector<NuEntry> entries;
  bool f_pure_assumed = false;
  /// N with a^N ⊆ J; the entries respect nu <= N(l(q-1)+1) - 1.
  std::uint64_t containment_exponent = 0;
};

/// Entries for e = 1..e_max. F-purity is assumed automatically for
/// polynomial rings and otherwise only when asserted by the caller.
NuSequence nu_sequence(const Ideal& a, const Ideal& J, unsigned e_max,
                       bool assert_f_pure = false, Budget budget = default_budget());

enum class ThresholdProvenance { polyhedral, formula, none };

std::string to_string(ThresholdProvenance p);

struct ThresholdEstimate {
  BigRational sup_lower;
  /// sup_lower <= c^J(a) holds as a theorem (F-pure ring).
  bool sup_lower_certified = false;
  /// Slope through the last two entries; heuristic.
  std::optional<BigRational> affine_fit;
  /// min (nu+1)/q; reported for principal a only, where it bounds c from above.
  std::optional<BigRational> upper_hint;
  std::optional<BigRational> exact;
  ThresholdProvenance provenance = ThresholdProvenance::none;
};

ThresholdEstimate threshold_estimate(const NuSequence& sequence);

/// Fedder's criterion at the origin for R = F_p[x]/(f): f^(p-1) not in
/// (x_1^p, ..., x_n^p). Polynomial rings are F-pure. Presentations with more
/// than one relation throw PreconditionError.
bool fedder_f_pure(const Ring& ring);

}  // namespace fthresh
