#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/errors.hpp"
#include "fthresh/exactnum.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

enum class MultiplicityMethod { colength_cm, covolume_monomial, hs_limit_estimate };

std::string to_string(MultiplicityMethod m);

/// d! * l(R/a^n) / n^d for n = 1..n_max, with the last d-th difference of
/// l(R/a^n) (taking l(R/a^0) = 0) as extrapolation.
struct HilbertSamuelEstimate {
  std::size_t d = 0;
  std::vector<std::uint64_t> lengths;
  std::vector<BigRational> values;
  std::optional<BigRational> extrapolation;
  /// The last two d-th differences agree.
  bool stabilized = false;
};

struct MultiplicityReport {
  std::string fingerprint;
  std::uint64_t colength = 0;
  BigRational multiplicity;
  MultiplicityMethod method = MultiplicityMethod::hs_limit_estimate;
  /// The multiplicity is exact (possibly under the flagged assumptions).
  bool exact = false;
  std::vector<std::string> assumptions;
  std::optional<HilbertSamuelEstimate> estimate;
};

/// Krull dimension of the presented ring.
std::size_t ring_dimension(const Ring& ring);

/// Every variable lies in the radical of I (I is primary to the origin).
bool is_primary_to_origin(const Ideal& ideal);

/// l(R/I) = number of standard monomials. Requires dimension(I) = 0.
std::uint64_t colength(const Ideal& ideal);

/// e(J) = l(R/J) for a parameter ideal: #gens(J) = dim R and J primary to
/// the origin. Cohen–Macaulayness is verified for at most one relation and
/// flagged as assumed otherwise.
MultiplicityReport mult_parameter(const Ideal& J);

HilbertSamuelEstimate hs_estimate(const Ideal& a, unsigned n_max, Budget budget = default_budget());

/// Best available multiplicity: covolume for monomial ideals of polynomial
/// rings, colength for parameter ideals, otherwise the estimate.
MultiplicityReport multiplicity(const Ideal& a, unsigned n_max = 4);

}  // namespace fthresh
