#include "fthresh/frobenius.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <set>

#include "fthresh/groebner.hpp"
#include "reduction.hpp"

namespace fthresh {

namespace {

std::vector<Terms> prune_monomial_multiples(std::vector<Terms> rows) {
  std::vector<ExponentVector> monos;
  for (const auto& r : rows) {
    if (r.size() == 1) monos.push_back(r.front().exponents);
  }
  if (monos.size() < 2) return rows;
  std::erase_if(rows, [&](const Terms& r) {
    if (r.size() != 1) return false;
    const auto& m = r.front().exponents;
    return std::any_of(monos.begin(), monos.end(), [&](const ExponentVector& d) {
      return d != m && d.divides(m);
    });
  });
  return rows;
}

// Last r with a^r not inside the ideal of `basis`, or nullopt when the
// basis is the unit ideal. Throws once r would exceed `limit`.
std::optional<std::uint64_t> frontier(const Ideal& a, const GroebnerBasis& basis,
                                      std::uint64_t limit, BudgetMeter& meter) {
  const RingContext& ring = *basis.ring();
  const Terms one{{ExponentVector(ring.num_variables()), 1}};
  std::vector<Terms> current;
  if (Terms v = basis.reduce(one, meter); !v.empty()) current.push_back(std::move(v));
  if (current.empty()) return std::nullopt;
  std::uint64_t r = 0;
  for (;;) {
    detail::LinearEchelon next(ring);
    for (const auto& b : current) {
      for (const auto& g : a.generators()) {
        next.insert(basis.reduce_product(g.terms(), b, meter), meter);
      }
    }
    if (next.empty()) return r;
    ++r;
    if (r > limit) {
      throw PreconditionError("hypothesis a ⊆ √J fails: a^r ⊄ J for r beyond the finiteness bound");
    }
    current = prune_monomial_multiples(next.take());
  }
}

void check_radical(const Ideal& a, const Ideal& J, Budget budget) {
  for (const auto& g : a.generators()) {
    if (!radical_member(g, J, budget)) {
      throw PreconditionError("hypothesis a ⊆ √J fails: generator " + g.to_string() +
                              " is not in the radical of " + J.to_string());
    }
  }
}

std::uint64_t finiteness_bound(std::uint64_t N, std::size_t l, std::uint64_t q) {
  return N * (static_cast<std::uint64_t>(l) * (q - 1) + 1) - 1;
}

std::uint64_t nu_with_bound(const Ideal& a, const Ideal& J, std::uint64_t q, std::uint64_t N,
                            Budget budget) {
  const auto basis = buchberger(bracket_power(J, q), budget);
  BudgetMeter meter(budget, "nu frontier");
  const auto limit = N == 0 ? 0 : finiteness_bound(N, a.num_generators(), q);
  const auto result = frontier(a, *basis, limit, meter);
  if (!result) throw PreconditionError("J is the unit ideal; nu is undefined");
  return *result;
}

}  // namespace

Ideal bracket_power(const Ideal& ideal, std::uint64_t q) {
  std::vector<Polynomial> gens;
  gens.reserve(ideal.num_generators());
  for (const auto& g : ideal.generators()) gens.push_back(frobenius_pow(g, q));
  return Ideal(ideal.ring(), std::move(gens));
}

Ideal ideal_power(const Ideal& ideal, std::uint64_t r) {
  const Ring& ring = ideal.ring();
  std::vector<Polynomial> current{Polynomial::constant(ring, 1)};
  for (std::uint64_t k = 0; k < r; ++k) {
    std::set<std::string> seen;
    std::vector<Polynomial> next;
    for (const auto& p : current) {
      for (const auto& g : ideal.generators()) {
        Polynomial prod = p * g;
        if (prod.is_zero()) continue;
        if (seen.insert(prod.monic().to_string()).second) next.push_back(std::move(prod));
      }
    }
    current = std::move(next);
  }
  return Ideal(ring, std::move(current));
}

std::uint64_t containment_exponent(const Ideal& a, const Ideal& J, Budget budget) {
  require_same_ring(*a.ring(), *J.ring());
  check_radical(a, J, budget);
  const auto basis = buchberger(J, budget);
  BudgetMeter meter(budget, "containment exponent");
  const auto last = frontier(a, *basis, std::numeric_limits<std::uint64_t>::max(), meter);
  return last ? *last + 1 : 0;
}

std::uint64_t nu(const Ideal& a, const Ideal& J, std::uint64_t q, Budget budget) {
  require_same_ring(*a.ring(), *J.ring());
  if (!is_power_of(q, a.ring()->characteristic())) {
    throw std::invalid_argument("q = " + std::to_string(q) +
                                " is not a power of the characteristic");
  }
  const std::uint64_t N = containment_exponent(a, J, budget);
  if (N == 0) throw PreconditionError("J is the unit ideal; nu is undefined");
  return nu_with_bound(a, J, q, N, budget);
}

NuSequence nu_sequence(const Ideal& a, const Ideal& J, unsigned e_max, bool assert_f_pure,
                       Budget budget) {
  require_same_ring(*a.ring(), *J.ring());
  if (e_max < 1) throw std::invalid_argument("e_max must be at least 1");
  const std::uint64_t N = containment_exponent(a, J, budget);
  if (N == 0) throw PreconditionError("J is the unit ideal; nu is undefined");
  const std::uint64_t p = a.ring()->characteristic();

  NuSequence seq{a.ring()->fingerprint(), a, J, {}, false, N};
  seq.f_pure_assumed = !a.ring()->has_relations() || assert_f_pure;

  std::vector<std::uint64_t> qs;
  std::uint64_t q = 1;
  for (unsigned e = 1; e <= e_max; ++e) {
    if (q > std::numeric_limits<std::uint32_t>::max() / p) {
      throw PreconditionError("q = p^e overflows the exponent range");
    }
    q *= p;
    qs.push_back(q);
  }
  std::vector<std::future<std::uint64_t>> jobs;
  jobs.reserve(qs.size());
  for (const auto qq : qs) {
    jobs.push_back(std::async(std::launch::async, [&, qq] {
      return nu_with_bound(a, J, qq, N, budget);
    }));
  }
  // collect every job before rethrowing so no task outlives the captures
  std::exception_ptr error;
  for (unsigned e = 1; e <= e_max; ++e) {
    try {
      seq.entries.push_back({e, qs[e - 1], jobs[e - 1].get()});
    } catch (...) {
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return seq;
}

std::string to_string(ThresholdProvenance p) {
  switch (p) {
    case ThresholdProvenance::polyhedral: return "polyhedral";
    case ThresholdProvenance::formula: return "formula";
    case ThresholdProvenance::none: return "none";
  }
  return "none";
}

ThresholdEstimate threshold_estimate(const NuSequence& sequence) {
  if (sequence.entries.empty()) throw std::invalid_argument("empty nu sequence");
  ThresholdEstimate est;
  const auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return BigRational::from_mpz(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  };
  est.sup_lower = ratio(sequence.entries.front().nu, sequence.entries.front().q);
  for (const auto& e : sequence.entries) est.sup_lower = max(est.sup_lower, ratio(e.nu, e.q));
  est.sup_lower_certified = sequence.f_pure_assumed;
  if (sequence.entries.size() >= 2) {
    const auto& last = sequence.entries.back();
    const auto& prev = sequence.entries[sequence.entries.size() - 2];
    est.affine_fit = (ratio(last.nu, 1) - ratio(prev.nu, 1)) / ratio(last.q - prev.q, 1);
  }
  if (sequence.numerator.num_generators() == 1) {
    BigRational hint = ratio(sequence.entries.front().nu + 1, sequence.entries.front().q);
    for (const auto& e : sequence.entries) hint = min(hint, ratio(e.nu + 1, e.q));
    est.upper_hint = hint;
  }
  return est;
}

bool fedder_f_pure(const Ring& ring) {
  const auto& rels = ring->relation_terms();
  if (rels.empty()) return true;
  if (rels.size() > 1) {
    throw PreconditionError("Fedder check is implemented for hypersurfaces only");
  }
  const std::uint32_t p = ring->characteristic();
  const Ring ambient = ring->ambient();
  const Polynomial f = Polynomial::from_canonical(ambient, rels.front());
  const Polynomial power = pow(f, p - 1);
  return std::any_of(power.terms().begin(), power.terms().end(), [&](const Term& t) {
    return std::all_of(t.exponents.begin(), t.exponents.end(),
                       [&](std::uint32_t u) { return u < p; });
  });
}

}  // namespace fthresh
