#include "fthresh/bounds.hpp"

#include <algorithm>
#include <random>

#include "fthresh/closure.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/multiplicity.hpp"

namespace fthresh {

namespace {

BigRational from_u64(std::uint64_t v) {
  return BigRational::from_mpz(mpz_class(std::to_string(v)), 1);
}

BigRational scaled_power(std::size_t d, const BigRational& c, const BigRational& factor) {
  return (BigRational(static_cast<long>(d)) / c).pow(static_cast<long>(d)) * factor;
}

void append(std::vector<std::string>& out, const std::vector<std::string>& more) {
  for (const auto& s : more) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
}

std::uint64_t standard_degree(const Polynomial& f) { return f.total_degree(); }

}  // namespace

std::string to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::holds_exact: return "holds_exact";
    case BoundVerdict::holds_given_lower_bound: return "holds_given_lower_bound";
    case BoundVerdict::violated_exact: return "violated_exact";
    case BoundVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

BoundReport conjecture_check(const Ideal& a, const Ideal& J, unsigned e_max, bool assert_f_pure) {
  require_same_ring(*a.ring(), *J.ring());
  require_parameter_ideal(J);
  if (dimension(a) != 0 || !is_primary_to_origin(a)) {
    throw PreconditionError("a is not primary to the origin");
  }
  const Ring& ring = a.ring();
  BoundReport report;
  report.d = ring_dimension(ring);
  const auto ea = multiplicity(a);
  const auto eJ = mult_parameter(J);
  report.lhs = ea.multiplicity;
  report.factor = eJ.multiplicity;
  append(report.assumptions, ea.assumptions);
  append(report.assumptions, eJ.assumptions);

  const bool monomial = !ring->has_relations() && a.is_monomial() && J.is_monomial() &&
                        ring->num_variables() <= kMaxPolyhedralDimension;
  if (monomial) {
    const auto witness =
        monomial_fthreshold(MonomialIdeal::from_ideal(a), MonomialIdeal::from_ideal(J));
    report.threshold.exact = witness.value;
    report.threshold.provenance = ThresholdProvenance::polyhedral;
    report.threshold.sup_lower = witness.value;
    report.threshold.sup_lower_certified = true;
    report.rhs = scaled_power(report.d, witness.value, report.factor);
    report.verdict = report.lhs >= report.rhs ? BoundVerdict::holds_exact : BoundVerdict::violated_exact;
    report.note = "exact threshold " + witness.value.to_string() + " at u=" + witness.argmax.to_string();
    return report;
  }

  const auto seq = nu_sequence(a, J, e_max, assert_f_pure);
  report.threshold = threshold_estimate(seq);
  if (report.threshold.affine_fit && report.threshold.affine_fit->sign() > 0) {
    report.rhs_at_fit = scaled_power(report.d, *report.threshold.affine_fit, report.factor);
  }
  if (!ea.exact) {
    report.verdict = BoundVerdict::inconclusive;
    report.note = "e(a) is only estimated";
    return report;
  }
  if (!report.threshold.sup_lower_certified) {
    report.verdict = BoundVerdict::inconclusive;
    report.note = "no certified threshold available (F-purity not asserted)";
    return report;
  }
  if (report.threshold.sup_lower.sign() <= 0) {
    report.verdict = BoundVerdict::inconclusive;
    report.note = "certified lower bound is zero";
    return report;
  }
  report.assumptions.emplace_back(ring->has_relations() ? "F-pure asserted"
                                                        : "F-pure: polynomial ring");
  report.rhs = scaled_power(report.d, report.threshold.sup_lower, report.factor);
  if (report.lhs >= report.rhs) {
    report.verdict = BoundVerdict::holds_given_lower_bound;
    report.note = "rhs computed with the certified lower bound " +
                  report.threshold.sup_lower.to_string();
  } else {
    report.verdict = BoundVerdict::inconclusive;
    report.note = "lower bound " + report.threshold.sup_lower.to_string() + " too weak";
  }
  return report;
}

BoundReport diagonal_check(const MonomialIdeal& a, const std::vector<std::uint32_t>& exponents) {
  const std::size_t d = a.dimension();
  if (exponents.size() != d) throw PreconditionError("need one exponent per variable");
  if (std::any_of(exponents.begin(), exponents.end(), [](std::uint32_t e) { return e == 0; })) {
    throw PreconditionError("diagonal exponents must be positive");
  }
  if (!a.is_zero_dimensional() || a.is_unit()) throw PreconditionError("a must be zero-dimensional and proper");
  const auto J = MonomialIdeal::diagonal(exponents);
  const auto witness = monomial_fthreshold(a, J);
  BoundReport report;
  report.d = d;
  report.lhs = covolume_mult(a).multiplicity;
  report.factor = 1;
  for (const auto e : exponents) report.factor *= BigRational(static_cast<long>(e));
  report.threshold.exact = witness.value;
  report.threshold.sup_lower = witness.value;
  report.threshold.sup_lower_certified = true;
  report.threshold.provenance = ThresholdProvenance::polyhedral;
  report.rhs = scaled_power(d, witness.value, report.factor);
  if (report.lhs < report.rhs) {
    throw InvariantBreach("diagonal bound violated: e(a) = " + report.lhs.to_string() + " < " +
                          report.rhs.to_string());
  }
  report.verdict = BoundVerdict::holds_exact;
  return report;
}

BoundReport another_check(const MonomialIdeal& a, const MonomialIdeal& J) {
  const std::size_t d = a.dimension();
  if (J.dimension() != d) throw std::invalid_argument("dimension mismatch");
  if (!a.is_zero_dimensional() || a.is_unit()) throw PreconditionError("a must be zero-dimensional and proper");
  if (!J.is_zero_dimensional() || J.is_unit()) throw PreconditionError("J must be zero-dimensional and proper");
  const auto ca = monomial_fthreshold(a, J).value;
  const auto cm = monomial_fthreshold(MonomialIdeal::maximal(d), J).value;
  std::uint64_t top = 0;
  for (const auto& u : J.staircase()) top = std::max(top, u.degree());
  if (cm != from_u64(top + d)) {
    throw InvariantBreach("c^J(m) = " + cm.to_string() + " disagrees with max{r} + d = " +
                          std::to_string(top + d));
  }
  BoundReport report;
  report.d = d;
  report.lhs = covolume_mult(a).multiplicity;
  report.factor = cm - BigRational(static_cast<long>(d)) + BigRational(1);
  report.threshold.exact = ca;
  report.threshold.sup_lower = ca;
  report.threshold.sup_lower_certified = true;
  report.threshold.provenance = ThresholdProvenance::polyhedral;
  report.rhs = scaled_power(d, ca, report.factor);
  report.note = "c^J(m) = " + cm.to_string();
  if (report.lhs < report.rhs) {
    throw InvariantBreach("bound with c^J(m) violated: e(a) = " + report.lhs.to_string() + " < " +
                          report.rhs.to_string());
  }
  report.verdict = BoundVerdict::holds_exact;
  return report;
}

HomogeneousReport homogeneous_check(const Ideal& a, const Ideal& J) {
  require_same_ring(*a.ring(), *J.ring());
  const Ring& ring = a.ring();
  for (const auto& r : ring->relations()) {
    if (!r.is_homogeneous()) throw PreconditionError("relations are not homogeneous");
  }
  if (!a.is_homogeneous()) throw PreconditionError("a is not generated by homogeneous elements");
  if (!J.is_homogeneous()) throw PreconditionError("J is not generated by homogeneous elements");
  require_parameter_ideal(a);
  require_parameter_ideal(J);

  auto xs = a.generators();
  auto fs = J.generators();
  const auto by_degree = [](const Polynomial& u, const Polynomial& v) {
    return standard_degree(u) < standard_degree(v);
  };
  std::stable_sort(xs.begin(), xs.end(), by_degree);
  std::stable_sort(fs.begin(), fs.end(), by_degree);
  const std::size_t n = xs.size();

  HomogeneousReport rep;
  for (const auto& x : xs) rep.a_degrees.push_back(standard_degree(x));
  for (const auto& f : fs) rep.j_degrees.push_back(standard_degree(f));
  rep.N = containment_exponent(a, J);

  const auto basis = buchberger(J);
  BudgetMeter meter(default_budget(), "homogeneous check");
  const auto in_J = [&](const Polynomial& f) { return basis->reduce(f.terms(), meter).empty(); };
  Polynomial prefix = Polynomial::constant(ring, 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::uint64_t t = 0;
    Polynomial candidate = prefix;
    while (!in_J(candidate)) {
      if (t > rep.N) throw InvariantBreach("t_" + std::to_string(i + 1) + " exceeds N");
      candidate = candidate * xs[i];
      ++t;
    }
    rep.t.push_back(t);
    if (t > 0) prefix = prefix * pow(xs[i], t - 1);
  }

  std::vector<std::string> violations;
  std::uint64_t sum_t = 0;
  for (const auto t : rep.t) sum_t += t;
  if (n >= 1 && rep.N + n < sum_t + 1) {
    violations.push_back("N >= t_1 + ... + t_{n-1} - n + 1 fails");
  }
  std::uint64_t lhs = 0, rhs = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lhs += rep.t[i] * rep.a_degrees[i];
    rhs += rep.j_degrees[i];
    rep.prefix.emplace_back(lhs, rhs);
    if (lhs < rhs) violations.push_back("prefix inequality fails at i = " + std::to_string(i + 1));
  }
  if (n >= 1) {
    const std::uint64_t coeff = rep.N + n - 1 >= sum_t ? rep.N + n - 1 - sum_t : 0;
    rep.final_inequality = {lhs + coeff * rep.a_degrees[n - 1], rhs + rep.j_degrees[n - 1]};
    if (rep.final_inequality.first < rep.final_inequality.second) {
      violations.push_back("final degree inequality fails");
    }
  }

  // the claim applied with alpha = (t_1..t_{n-1}, N - sum t + n - 1),
  // beta_i = d_i / a_i, gamma_i = a_i / a_1
  if (n >= 1) {
    std::vector<BigRational> gamma, lambda;
    for (std::size_t i = 0; i < n; ++i) {
      const BigRational alpha =
          i + 1 < n ? from_u64(rep.t[i]) : from_u64(rep.N + n - 1) - from_u64(sum_t);
      gamma.push_back(from_u64(rep.a_degrees[i]) / from_u64(rep.a_degrees[0]));
      lambda.push_back(alpha - from_u64(rep.j_degrees[i]) / from_u64(rep.a_degrees[i]));
    }
    try {
      if (!prefix_sum_claim(gamma, lambda)) violations.push_back("prefix-sum claim conclusion fails");
    } catch (const PreconditionError& e) {
      violations.push_back(std::string("prefix-sum claim hypotheses fail: ") + e.what());
    }
  }

  const auto ea = mult_parameter(a);
  const auto eJ = mult_parameter(J);
  rep.bound.d = n;
  rep.bound.lhs = ea.multiplicity;
  rep.bound.factor = eJ.multiplicity;
  rep.bound.rhs = (from_u64(n) / from_u64(n + rep.N - 1)).pow(static_cast<long>(n)) * eJ.multiplicity;
  append(rep.bound.assumptions, ea.assumptions);
  append(rep.bound.assumptions, eJ.assumptions);
  // N + n - 1 plays the role of the threshold upper bound
  rep.bound.threshold.upper_hint = from_u64(rep.N + n - 1);
  rep.bound.note = "e(a) >= (n/(n+N-1))^n e(J)";
  if (rep.bound.lhs < rep.bound.rhs) violations.push_back("headline inequality fails");
  if (!violations.empty()) {
    std::string msg = "homogeneous bound check failed:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw InvariantBreach(msg);
  }
  rep.bound.verdict = BoundVerdict::holds_exact;
  return rep;
}

OnedimReport onedim_check(const Ideal& a, const Ideal& J, unsigned e_max, bool assert_f_pure) {
  require_same_ring(*a.ring(), *J.ring());
  const Ring& ring = a.ring();
  if (ring_dimension(ring) != 1) {
    throw PreconditionError("ring dimension is " + std::to_string(ring_dimension(ring)) + ", not 1");
  }
  for (const auto* I : {&a, &J}) {
    if (dimension(*I) != 0 || !is_primary_to_origin(*I)) {
      throw PreconditionError("ideal " + I->to_string() + " is not primary to the origin");
    }
  }
  const auto ea = multiplicity(a, 6);
  const auto eJ = multiplicity(J, 6);
  OnedimReport rep{ea.multiplicity, eJ.multiplicity, eJ.multiplicity / ea.multiplicity, {},
                   nu_sequence(a, J, e_max, assert_f_pure), {}, {}};
  for (const auto* m : {&ea, &eJ}) {
    if (!m->exact && !(m->estimate && m->estimate->stabilized)) {
      throw PreconditionError("multiplicity estimate did not stabilize");
    }
    append(rep.assumptions, m->assumptions);
    if (!m->exact) append(rep.assumptions, {"multiplicity from a stabilized Hilbert-Samuel difference"});
  }
  rep.threshold = threshold_estimate(rep.sequence);
  const BigRational& estimate = rep.threshold.affine_fit ? *rep.threshold.affine_fit
                                                         : rep.threshold.sup_lower;
  rep.gap = (estimate - rep.predicted).abs();
  return rep;
}

bool prefix_sum_claim(const std::vector<BigRational>& gamma, const std::vector<BigRational>& lambda) {
  if (gamma.size() != lambda.size() || gamma.empty()) {
    throw PreconditionError("gamma and lambda must be nonempty and of equal length");
  }
  if (gamma.front() != BigRational(1)) throw PreconditionError("gamma_1 must equal 1");
  BigRational prefix;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (i > 0 && gamma[i] < gamma[i - 1]) throw PreconditionError("gamma is not nondecreasing");
    prefix += gamma[i] * lambda[i];
    if (prefix.sign() < 0) {
      throw PreconditionError("prefix sum " + std::to_string(i + 1) + " is negative");
    }
  }
  BigRational total;
  for (const auto& l : lambda) total += l;
  return total.sign() >= 0;
}

std::vector<std::pair<MonomialIdeal, std::vector<std::uint32_t>>> battery_instances(
    std::uint64_t seed, std::size_t count) {
  std::vector<std::pair<MonomialIdeal, std::vector<std::uint32_t>>> out;
  out.emplace_back(MonomialIdeal(2, {ExponentVector{2, 0}, ExponentVector{0, 3}}),
                   std::vector<std::uint32_t>{4, 4});
  std::mt19937_64 rng(seed);
  const auto uniform = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  while (out.size() < count) {
    const std::size_t d = uniform(1, 3);
    std::vector<ExponentVector> gens;
    for (std::size_t i = 0; i < d; ++i) {
      ExponentVector e(d);
      e[i] = uniform(1, 5);
      gens.push_back(e);
    }
    const std::uint32_t extra = uniform(0, 3);
    for (std::uint32_t k = 0; k < extra; ++k) {
      ExponentVector e(d);
      for (std::size_t i = 0; i < d; ++i) e[i] = uniform(0, 5);
      if (!e.is_one()) gens.push_back(e);
    }
    std::vector<std::uint32_t> exps;
    for (std::size_t i = 0; i < d; ++i) exps.push_back(uniform(1, 5));
    out.emplace_back(MonomialIdeal(d, std::move(gens)), std::move(exps));
  }
  return out;
}

BatteryReport run_battery(std::uint64_t seed, std::size_t count) {
  BatteryReport report;
  report.seed = seed;
  for (auto& [a, exps] : battery_instances(seed, count)) {
    auto diag = diagonal_check(a, exps);
    auto other = another_check(a, MonomialIdeal::diagonal(exps));
    report.entries.push_back({a, exps, std::move(diag), std::move(other)});
  }
  return report;
}

}  // namespace fthresh
