#include "fthresh/multiplicity.hpp"

#include "fthresh/frobenius.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/newton.hpp"

namespace fthresh {

namespace {

constexpr const char* kGradedAvatar =
    "local ring modeled by its graded polynomial presentation";

BigRational from_u64(std::uint64_t v) {
  return BigRational::from_mpz(mpz_class(std::to_string(v)), 1);
}

void add_cm_flags(const Ring& ring, std::vector<std::string>& flags) {
  const auto rels = ring->relation_terms().size();
  if (rels == 0) {
    flags.emplace_back("Cohen-Macaulay verified: polynomial ring");
  } else if (rels == 1) {
    flags.emplace_back("Cohen-Macaulay verified: hypersurface");
  } else {
    flags.emplace_back("CM assumed");
  }
  if (rels > 0) flags.emplace_back(kGradedAvatar);
}

}  // namespace

std::string to_string(MultiplicityMethod m) {
  switch (m) {
    case MultiplicityMethod::colength_cm: return "colength_CM";
    case MultiplicityMethod::covolume_monomial: return "covolume_monomial";
    case MultiplicityMethod::hs_limit_estimate: return "hs_limit_estimate";
  }
  return "hs_limit_estimate";
}

std::size_t ring_dimension(const Ring& ring) { return dimension(Ideal(ring)); }

bool is_primary_to_origin(const Ideal& ideal) {
  const Ring& ring = ideal.ring();
  for (std::size_t i = 0; i < ring->num_variables(); ++i) {
    if (!radical_member(Polynomial::variable(ring, i), ideal)) return false;
  }
  return true;
}

std::uint64_t colength(const Ideal& ideal) { return standard_monomials(ideal).size(); }

MultiplicityReport mult_parameter(const Ideal& J) {
  const std::size_t dim = ring_dimension(J.ring());
  if (J.num_generators() != dim) {
    throw PreconditionError("not a full system of parameters: " +
                            std::to_string(J.num_generators()) + " generators in a ring of dimension " +
                            std::to_string(dim));
  }
  if (dimension(J) != 0 || !is_primary_to_origin(J)) {
    throw PreconditionError("not a full system of parameters: R/J is not supported at the origin only");
  }
  MultiplicityReport report;
  report.fingerprint = J.fingerprint();
  report.colength = colength(J);
  report.multiplicity = from_u64(report.colength);
  report.method = MultiplicityMethod::colength_cm;
  report.exact = true;
  report.assumptions.emplace_back("parameter ideal verified by dimension check");
  add_cm_flags(J.ring(), report.assumptions);
  return report;
}

HilbertSamuelEstimate hs_estimate(const Ideal& a, unsigned n_max, Budget budget) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  if (dimension(a) != 0) throw PreconditionError("a is not zero-dimensional");
  HilbertSamuelEstimate est;
  est.d = ring_dimension(a.ring());
  BigRational dfact(1);
  for (std::size_t k = 2; k <= est.d; ++k) dfact *= BigRational(static_cast<long>(k));
  for (unsigned n = 1; n <= n_max; ++n) {
    const std::uint64_t len = standard_monomials(ideal_power(a, n), budget).size();
    est.lengths.push_back(len);
    est.values.push_back(dfact * from_u64(len) / from_u64(n).pow(static_cast<long>(est.d)));
  }
  std::vector<BigRational> diffs{BigRational(0)};
  for (const auto l : est.lengths) diffs.push_back(from_u64(l));
  for (std::size_t k = 0; k < est.d; ++k) {
    std::vector<BigRational> next;
    for (std::size_t i = 1; i < diffs.size(); ++i) next.push_back(diffs[i] - diffs[i - 1]);
    diffs = std::move(next);
  }
  if (!diffs.empty()) est.extrapolation = diffs.back();
  est.stabilized = diffs.size() >= 2 && diffs.back() == diffs[diffs.size() - 2];
  return est;
}

MultiplicityReport multiplicity(const Ideal& a, unsigned n_max) {
  const Ring& ring = a.ring();
  if (!ring->has_relations() && a.is_monomial() &&
      ring->num_variables() <= kMaxPolyhedralDimension) {
    const auto mono = MonomialIdeal::from_ideal(a);
    if (mono.is_zero_dimensional()) {
      const auto cov = covolume_mult(mono);
      MultiplicityReport report;
      report.fingerprint = a.fingerprint();
      report.colength = cov.colength;
      report.multiplicity = cov.multiplicity;
      report.method = MultiplicityMethod::covolume_monomial;
      report.exact = true;
      return report;
    }
  }
  if (a.num_generators() == ring_dimension(ring) && dimension(a) == 0 && is_primary_to_origin(a)) {
    return mult_parameter(a);
  }
  if (!is_primary_to_origin(a) || dimension(a) != 0) {
    throw PreconditionError("a is not primary to the origin");
  }
  MultiplicityReport report;
  report.fingerprint = a.fingerprint();
  report.colength = colength(a);
  report.estimate = hs_estimate(a, n_max);
  report.multiplicity = report.estimate->extrapolation.value_or(report.estimate->values.back());
  report.method = MultiplicityMethod::hs_limit_estimate;
  report.exact = false;
  report.assumptions.emplace_back("estimate");
  if (ring->has_relations()) report.assumptions.emplace_back(kGradedAvatar);
  return report;
}

}  // namespace fthresh
