#include "fthresh/closure.hpp"

#include <algorithm>

#include "fthresh/groebner.hpp"
#include "fthresh/multiplicity.hpp"
#include "fthresh/newton.hpp"

namespace fthresh {

namespace {

std::vector<std::string> tight_hypotheses(const Ring& ring) {
  if (!ring->has_relations()) {
    return {"excellent analytically irreducible local domain: verified (regular ring)"};
  }
  return {"excellent analytically irreducible local domain: unverified",
          "local ring modeled by its graded polynomial presentation"};
}

std::vector<std::string> integral_hypotheses(const Ring& ring) {
  if (!ring->has_relations()) {
    return {"formally equidimensional: verified (regular ring)"};
  }
  if (ring->relation_terms().size() == 1) {
    return {"formally equidimensional: hypersurface, assumed for the completion",
            "local ring modeled by its graded polynomial presentation"};
  }
  return {"formally equidimensional: unverified",
          "local ring modeled by its graded polynomial presentation"};
}

Polynomial parameter_product(const Ideal& J) {
  Polynomial x = Polynomial::constant(J.ring(), 1);
  for (const auto& g : J.generators()) x = x * g;
  return x;
}

bool certificate_holds(const Polynomial& x, const Ideal& I, std::uint64_t q0) {
  return ideal_member(pow(x, q0 - 1), bracket_power(I, q0));
}

std::string power_name(std::uint64_t q0) { return std::to_string(q0); }

}  // namespace

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::not_in_tight_closure: return "not_in_tight_closure";
    case VerdictKind::inconclusive_tight: return "inconclusive_tight";
    case VerdictKind::in_integral_closure: return "in_integral_closure";
    case VerdictKind::not_in_integral_closure: return "not_in_integral_closure";
    case VerdictKind::inconclusive_integral: return "inconclusive_integral";
  }
  return "inconclusive_tight";
}

void require_parameter_ideal(const Ideal& J) {
  const std::size_t dim = ring_dimension(J.ring());
  if (J.num_generators() != dim) {
    throw PreconditionError("J is not generated by a full system of parameters: " +
                            std::to_string(J.num_generators()) + " generators, ring dimension " +
                            std::to_string(dim));
  }
  const auto basis = buchberger(J);
  if (basis->is_unit()) throw PreconditionError("J is the unit ideal");
  if (dimension(J) != 0 || !is_primary_to_origin(J)) {
    throw PreconditionError("J is not generated by a full system of parameters: R/J has dimension " +
                            std::to_string(dimension(J)) + " or is not supported at the origin");
  }
}

ClosureVerdict tight_certificate(const Ideal& J, const Ideal& I, unsigned e_max) {
  require_same_ring(*J.ring(), *I.ring());
  if (e_max < 1) throw std::invalid_argument("e_max must be at least 1");
  require_parameter_ideal(J);
  if (buchberger(I)->is_unit()) throw PreconditionError("I is the unit ideal");
  if (!ideal_subset(J, I)) throw PreconditionError("J is not contained in I");

  const std::uint64_t p = J.ring()->characteristic();
  const Polynomial x = parameter_product(J);
  ClosureVerdict verdict;
  verdict.e_max = e_max;
  verdict.d = J.num_generators();
  verdict.hypotheses = tight_hypotheses(J.ring());

  std::uint64_t q0 = 1;
  for (unsigned e = 1; e <= e_max; ++e) {
    q0 *= p;
    if (!certificate_holds(x, I, q0)) continue;
    TightCertificate cert;
    cert.q0 = q0;
    cert.statement = "(" + x.to_string() + ")^" + std::to_string(q0 - 1) + " in I^[" +
                     power_name(q0) + "]";
    cert.verified = certificate_holds(x, I, q0);
    if (!cert.verified) throw InvariantBreach("tight certificate failed its re-check");
    if (e < e_max) {
      cert.persistence_checked = true;
      cert.persists = certificate_holds(x, I, q0 * p);
      if (!cert.persists) {
        throw InvariantBreach("tight certificate at q0 = " + std::to_string(q0) +
                              " does not persist at " + std::to_string(q0 * p));
      }
    }
    verdict.kind = VerdictKind::not_in_tight_closure;
    verdict.summary = "NOT in tight closure; certificate q0=" + std::to_string(q0);
    verdict.certificate = std::move(cert);
    return verdict;
  }
  verdict.kind = VerdictKind::inconclusive_tight;
  verdict.summary = "inconclusive: no certificate up to q0=" + std::to_string(q0) +
                    " (consistent with I contained in the tight closure of J)";
  return verdict;
}

std::vector<ProbeEntry> frational_probe(const Ideal& J, const std::vector<Ideal>& candidates,
                                        unsigned e_max) {
  require_parameter_ideal(J);
  std::vector<ProbeEntry> out;
  for (const auto& I : candidates) {
    require_same_ring(*J.ring(), *I.ring());
    if (buchberger(I)->is_unit()) throw PreconditionError("candidate " + I.to_string() + " is the unit ideal");
    if (!ideal_subset(J, I)) throw PreconditionError("candidate " + I.to_string() + " does not contain J");
    if (ideal_subset(I, J)) throw PreconditionError("candidate " + I.to_string() + " equals J");
    ProbeEntry entry{tight_certificate(J, I, e_max), nu_sequence(J, I, e_max), false};
    const std::uint64_t d = J.num_generators();
    for (const auto& row : entry.sequence.entries) {
      if (row.nu < d * (row.q - 1)) entry.drops_below_d = true;
      const bool has_cert = certificate_holds(parameter_product(J), I, row.q);
      if (has_cert != (row.nu < d * (row.q - 1))) {
        throw InvariantBreach("certificate search and nu_J^I disagree at q = " +
                              std::to_string(row.q));
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

ClosureVerdict integral_test(const Ideal& I, const Ideal& J, unsigned e_max, bool assert_f_pure) {
  require_same_ring(*J.ring(), *I.ring());
  if (e_max < 1) throw std::invalid_argument("e_max must be at least 1");
  require_parameter_ideal(J);
  for (const auto& g : I.generators()) {
    if (!radical_member(g, J)) {
      throw PreconditionError("hypothesis I ⊆ √J fails for generator " + g.to_string());
    }
  }
  const Ideal normalized = I + J;
  const Ring& ring = J.ring();
  const bool regular = !ring->has_relations();

  ClosureVerdict verdict;
  verdict.e_max = e_max;
  verdict.d = J.num_generators();
  verdict.hypotheses = integral_hypotheses(ring);
  verdict.hypotheses.emplace_back("I replaced by I + J");
  verdict.nu_evidence = nu_sequence(normalized, J, e_max, assert_f_pure);

  const std::uint64_t d = verdict.d;
  for (const auto& row : verdict.nu_evidence->entries) {
    // regular rings: nu(q) < q * c, so nu >= d q forces c > d; F-pure: nu/q <= c
    const bool refutes = regular ? row.nu >= d * row.q
                                 : (verdict.nu_evidence->f_pure_assumed && row.nu > d * row.q);
    if (refutes) {
      verdict.witness_q = row.q;
      break;
    }
  }

  const bool monomial = regular && normalized.is_monomial() && J.is_monomial() &&
                        ring->num_variables() <= kMaxPolyhedralDimension;
  if (monomial) {
    const auto P = newton_polyhedron(MonomialIdeal::from_ideal(J));
    bool all = true;
    const auto mono = MonomialIdeal::from_ideal(normalized);
    for (const auto& g : mono.generators()) {
      const bool member = newton_member(g, P);
      verdict.newton_evidence.push_back({g, member});
      all = all && member;
    }
    if (all && verdict.witness_q) {
      throw InvariantBreach("Newton membership contradicts the nu witness at q = " +
                            std::to_string(*verdict.witness_q));
    }
    verdict.kind = all ? VerdictKind::in_integral_closure : VerdictKind::not_in_integral_closure;
    verdict.summary = all ? "in integral closure (every exponent lies in P(J))"
                          : "NOT in integral closure (an exponent lies outside P(J))";
    return verdict;
  }
  if (verdict.witness_q) {
    const auto& row = *std::find_if(verdict.nu_evidence->entries.begin(),
                                    verdict.nu_evidence->entries.end(),
                                    [&](const NuEntry& r) { return r.q == *verdict.witness_q; });
    verdict.kind = VerdictKind::not_in_integral_closure;
    verdict.summary = "NOT in integral closure; nu(" + std::to_string(row.q) +
                      ") = " + std::to_string(row.nu) + " exceeds d*q = " +
                      std::to_string(d * row.q);
    return verdict;
  }
  verdict.kind = VerdictKind::inconclusive_integral;
  verdict.summary = "inconclusive: nu(q) stays within d*q for the tested range";
  if (!regular && !verdict.nu_evidence->f_pure_assumed) {
    verdict.summary += " (F-purity not asserted, so nu values certify nothing)";
  }
  return verdict;
}

}  // namespace fthresh
