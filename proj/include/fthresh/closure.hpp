#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/frobenius.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

enum class VerdictKind {
  not_in_tight_closure,
  inconclusive_tight,
  in_integral_closure,
  not_in_integral_closure,
  inconclusive_integral,
};

std::string to_string(VerdictKind kind);

/// x^(q0-1) in I^[q0], x the product of the parameters generating J.
struct TightCertificate {
  std::uint64_t q0 = 0;
  std::string statement;
  bool verified = false;
  /// The same membership re-checked at p*q0 (only when p*q0 <= p^e_max).
  bool persistence_checked = false;
  bool persists = false;
};

struct NewtonEvidence {
  ExponentVector exponent;
  bool member = false;
};

struct ClosureVerdict {
  VerdictKind kind = VerdictKind::inconclusive_tight;
  unsigned e_max = 0;
  std::size_t d = 0;
  std::optional<TightCertificate> certificate;
  std::optional<NuSequence> nu_evidence;
  std::vector<NewtonEvidence> newton_evidence;
  /// q at which the nu sequence refutes integral dependence.
  std::optional<std::uint64_t> witness_q;
  /// Hypotheses echoed with their status.
  std::vector<std::string> hypotheses;
  std::string summary;
};

/// Searches q0 = p, ..., p^e_max for a certificate that I is not in the
/// tight closure of the parameter ideal J. Requires J ⊆ I, I proper.
ClosureVerdict tight_certificate(const Ideal& J, const Ideal& I, unsigned e_max);

struct ProbeEntry {
  ClosureVerdict verdict;
  /// nu_J^I(q) for q = p..p^e_max.
  NuSequence sequence;
  /// Some tested nu_J^I(q) < d(q-1); equivalent to a certificate at q.
  bool drops_below_d = false;
};

/// Runs tight_certificate for each candidate I ⊋ J and cross-checks it
/// against the nu_J^I sequence.
std::vector<ProbeEntry> frational_probe(const Ideal& J, const std::vector<Ideal>& candidates,
                                        unsigned e_max);

/// Decides I ⊆ integral closure of J where possible, after replacing I by I + J.
/// Monomial inputs in a polynomial ring are decided exactly via P(J); the
/// nu sequence of I + J relative to J is always reported.
ClosureVerdict integral_test(const Ideal& I, const Ideal& J, unsigned e_max,
                             bool assert_f_pure = false);

/// Throws PreconditionError unless J is generated by a full system of
/// parameters primary to the origin.
void require_parameter_ideal(const Ideal& J);

}  // namespace fthresh
