#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/exactnum.hpp"
#include "fthresh/frobenius.hpp"
#include "fthresh/newton.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

enum class BoundVerdict { holds_exact, holds_given_lower_bound, violated_exact, inconclusive };

std::string to_string(BoundVerdict v);

/// lhs = e(a) against rhs = (d / c)^d * (factor), where factor is e(J) for the
/// multiplicity bound.
struct BoundReport {
  BigRational lhs;
  BigRational rhs;
  ThresholdEstimate threshold;
  std::size_t d = 0;
  BoundVerdict verdict = BoundVerdict::inconclusive;
  std::vector<std::string> assumptions;
  /// The factor multiplying (d/c)^d.
  BigRational factor;
  /// rhs evaluated at the heuristic affine fit, for information only.
  std::optional<BigRational> rhs_at_fit;
  std::string note;
};

/// e(a) >= (d / c_-^J(a))^d e(J). Exact when a, J are monomial in a
/// polynomial ring; otherwise uses the certified lower bound sup nu/q, which
/// needs F-purity (automatic for polynomial rings, else asserted).
BoundReport conjecture_check(const Ideal& a, const Ideal& J, unsigned e_max,
                             bool assert_f_pure = false);

/// Exact check with J = (x_1^{a_1}, ..., x_d^{a_d}); throws InvariantBreach
/// on violation.
BoundReport diagonal_check(const MonomialIdeal& a, const std::vector<std::uint32_t>& exponents);

/// e(a) >= (d / c^J(a))^d (c^J(m) - d + 1), exact; throws InvariantBreach on
/// violation.
BoundReport another_check(const MonomialIdeal& a, const MonomialIdeal& J);

struct HomogeneousReport {
  std::vector<std::uint64_t> a_degrees;
  std::vector<std::uint64_t> j_degrees;
  std::uint64_t N = 0;
  std::vector<std::uint64_t> t;
  /// (lhs, rhs) of t_1 a_1 + ... + t_i a_i >= d_1 + ... + d_i for i < n.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix;
  /// (lhs, rhs) of the final inequality with coefficient N - sum t + n - 1.
  std::pair<std::uint64_t, std::uint64_t> final_inequality;
  BoundReport bound;
};

/// Theorem for homogeneous systems of parameters a, J in a standard graded
/// presentation. Intermediate failures throw InvariantBreach.
HomogeneousReport homogeneous_check(const Ideal& a, const Ideal& J);

struct OnedimReport {
  BigRational e_a;
  BigRational e_J;
  BigRational predicted;
  ThresholdEstimate threshold;
  NuSequence sequence;
  /// |affine fit - predicted|, or |sup_lower - predicted| for one entry.
  BigRational gap;
  std::vector<std::string> assumptions;
};

/// In dimension one the threshold equals e(J)/e(a); compares the estimate.
OnedimReport onedim_check(const Ideal& a, const Ideal& J, unsigned e_max,
                          bool assert_f_pure = false);

/// If gamma is nondecreasing with gamma_1 = 1 and all prefix sums of
/// gamma_i lambda_i are >= 0, then sum lambda_i >= 0. Returns that
/// conclusion; throws PreconditionError when the hypotheses fail.
bool prefix_sum_claim(const std::vector<BigRational>& gamma, const std::vector<BigRational>& lambda);

struct BatteryEntry {
  MonomialIdeal a;
  std::vector<std::uint32_t> j_exponents;
  BoundReport diagonal;
  BoundReport another;
};

struct BatteryReport {
  std::uint64_t seed = 0;
  std::vector<BatteryEntry> entries;
};

/// Deterministic monomial instances (d <= 3, exponents <= 5, diagonal J).
std::vector<std::pair<MonomialIdeal, std::vector<std::uint32_t>>> battery_instances(
    std::uint64_t seed, std::size_t count);

BatteryReport run_battery(std::uint64_t seed, std::size_t count);

}  // namespace fthresh
